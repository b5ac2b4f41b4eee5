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

#pragma once

#include <filesystem>
#include <string>

#include "glottkit/signal.hpp"

namespace glottkit {

struct WavInfo {
  int channels = 0;
  int bits_per_sample = 0;
  bool is_float = false;
  bool downmixed = false;  // true when channels > 1 and only channel 0 was kept
};

// Reads 16-bit PCM or 32-bit float RIFF/WAVE. Only the first channel of a
// multichannel file is kept; a warning goes to stderr in that case.
AudioBuffer load_wav(const std::filesystem::path& path, WavInfo* info = nullptr);

// Writes 16-bit PCM mono. Samples are clipped to [-1, 32767/32768]. A
// non-empty comment is stored in a LIST/INFO ICMT chunk.
void write_wav(const std::filesystem::path& path, const AudioBuffer& buf,
               const std::string& comment = {});

}  // namespace glottkit
