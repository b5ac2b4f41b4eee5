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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "glottkit/gif.hpp"

namespace glottkit {

inline constexpr std::string_view kVersion = "0.1.0";

// Flat "key = value" text; '#' starts a comment. Keys are the AnalysisConfig
// field names. Values not present keep the defaults passed in.
AnalysisConfig parse_config(std::string_view text, AnalysisConfig base = {});
AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base = {});

// Every field, one per line, in a fixed order. vt_order is "auto" when unset.
std::string format_config(const AnalysisConfig& cfg);

// FNV-1a 64 of format_config, as 16 hex digits.
std::string config_hash(const AnalysisConfig& cfg);

std::uint64_t fnv1a64(std::string_view data);

// "glottkit <version> config_hash=<hash> seed=<seed>"
std::string metadata_line(const AnalysisConfig& cfg, std::uint64_t seed);

}  // namespace glottkit
