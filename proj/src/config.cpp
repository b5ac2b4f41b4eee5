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

#include "glottkit/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw InvalidArgument("config: bad value for " + key + ": '" + value + "'");
  }
  return out;
}

}  // namespace

AnalysisConfig parse_config(std::string_view text, AnalysisConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(std::string_view(t).substr(0, eq));
    const auto value = trim(std::string_view(t).substr(eq + 1));
    if (key == "lip_d") {
      cfg.lip_d = parse_number<double>(key, value);
    } else if (key == "vt_order") {
      if (value == "auto") {
        cfg.vt_order.reset();
      } else {
        cfg.vt_order = parse_number<int>(key, value);
      }
    } else if (key == "glottis_fine_order") {
      cfg.glottis_fine_order = parse_number<int>(key, value);
    } else if (key == "frame_len_ms") {
      cfg.frame_len_ms = parse_number<double>(key, value);
    } else if (key == "hop_fraction") {
      cfg.hop_fraction = parse_number<double>(key, value);
    } else if (key == "iop_gain_threshold") {
      cfg.iop_gain_threshold = parse_number<double>(key, value);
    } else if (key == "max_iop_order") {
      cfg.max_iop_order = parse_number<int>(key, value);
    } else if (key == "voicing_rms_floor_db") {
      cfg.voicing_rms_floor_db = parse_number<double>(key, value);
    } else if (key == "voicing_threshold") {
      cfg.voicing_threshold = parse_number<double>(key, value);
    } else if (key == "f0_min_hz") {
      cfg.f0_min_hz = parse_number<double>(key, value);
    } else if (key == "f0_max_hz") {
      cfg.f0_max_hz = parse_number<double>(key, value);
    } else {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": unknown key '" + key +
                            "'");
    }
  }
  cfg.validate();
  return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_config(const AnalysisConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "lip_d = " << cfg.lip_d << '\n';
  os << "vt_order = ";
  if (cfg.vt_order) {
    os << *cfg.vt_order;
  } else {
    os << "auto";
  }
  os << '\n';
  os << "glottis_fine_order = " << cfg.glottis_fine_order << '\n';
  os << "frame_len_ms = " << cfg.frame_len_ms << '\n';
  os << "hop_fraction = " << cfg.hop_fraction << '\n';
  os << "iop_gain_threshold = " << cfg.iop_gain_threshold << '\n';
  os << "max_iop_order = " << cfg.max_iop_order << '\n';
  os << "voicing_rms_floor_db = " << cfg.voicing_rms_floor_db << '\n';
  os << "voicing_threshold = " << cfg.voicing_threshold << '\n';
  os << "f0_min_hz = " << cfg.f0_min_hz << '\n';
  os << "f0_max_hz = " << cfg.f0_max_hz << '\n';
  return os.str();
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const AnalysisConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(format_config(cfg))));
  return buf;
}

std::string metadata_line(const AnalysisConfig& cfg, std::uint64_t seed) {
  return "glottkit " + std::string(kVersion) + " config_hash=" + config_hash(cfg) +
         " seed=" + std::to_string(seed);
}

}  // namespace glottkit
