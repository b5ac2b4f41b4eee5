// Copyright 2026 The glottkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glottkit/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <vector>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

AudioBuffer load_wav(const std::filesystem::path& path, WavInfo* info) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InvalidArgument(name + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t len = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = bytes.size() - body;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (len < 16 || len > avail) throw InvalidArgument(name + ": truncated fmt chunk");
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible && len >= 26) format = read_u16(f + 24);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      // Tolerate writers that leave the data size too large.
      data_len = std::min<std::size_t>(len, avail);
    }
    pos = body + len + (len & 1u);
  }

  if (!have_fmt) throw InvalidArgument(name + ": missing fmt chunk");
  if (data == nullptr) throw InvalidArgument(name + ": missing data chunk");
  if (channels == 0 || rate == 0) throw InvalidArgument(name + ": invalid fmt chunk");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw InvalidArgument(name + ": unsupported encoding (format " + std::to_string(format) +
                          ", " + std::to_string(bits) + " bits); need 16-bit PCM or 32-bit float");
  }

  const std::size_t frame_bytes = static_cast<std::size_t>(channels) * (bits / 8);
  const std::size_t n = data_len / frame_bytes;
  if (n == 0) throw InvalidArgument(name + ": zero-length audio");

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(rate);
  buf.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char* s = data + i * frame_bytes;
    if (pcm16) {
      buf.samples[i] = static_cast<std::int16_t>(read_u16(s)) / 32768.0;
    } else {
      float v;
      std::uint32_t raw = read_u32(s);
      std::memcpy(&v, &raw, sizeof v);
      if (!std::isfinite(v)) throw InvalidArgument(name + ": non-finite sample");
      buf.samples[i] = static_cast<double>(v);
    }
  }
  if (channels > 1) {
    std::cerr << "warning: " << name << " has " << channels
              << " channels; using channel 0 only\n";
  }
  if (info != nullptr) {
    info->channels = channels;
    info->bits_per_sample = bits;
    info->is_float = float32;
    info->downmixed = channels > 1;
  }
  return buf;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buf,
               const std::string& comment) {
  if (buf.sample_rate <= 0) throw InvalidArgument("write_wav: sample rate must be positive");
  std::string info;
  if (!comment.empty()) {
    std::string text = comment;
    text.push_back('\0');
    if (text.size() & 1u) text.push_back('\0');
    info += "INFO";
    info += "ICMT";
    put_u32(info, static_cast<std::uint32_t>(text.size()));
    info += text;
  }

  const std::uint32_t data_bytes = static_cast<std::uint32_t>(buf.samples.size() * 2);
  std::string out;
  out.reserve(64 + info.size() + data_bytes);
  out += "RIFF";
  const std::uint32_t riff_len =
      4 + (8 + 16) + (info.empty() ? 0 : 8 + static_cast<std::uint32_t>(info.size())) +
      (8 + data_bytes);
  put_u32(out, riff_len);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  if (!info.empty()) {
    out += "LIST";
    put_u32(out, static_cast<std::uint32_t>(info.size()));
    out += info;
  }
  out += "data";
  put_u32(out, data_bytes);
  for (double v : buf.samples) {
    const double scaled = std::round(std::clamp(v, -1.0, 32767.0 / 32768.0) * 32768.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace glottkit
