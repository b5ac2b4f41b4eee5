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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glottkit/features.hpp"

namespace glottkit {

enum class Effort { kSoft, kMedium, kLoud };
std::string_view to_string(Effort e);
Effort effort_from_string(std::string_view s);
inline constexpr Effort kAllEfforts[] = {Effort::kSoft, Effort::kMedium, Effort::kLoud};

struct StimulusRecord {
  std::filesystem::path path;
  std::string vowel;
  Effort effort = Effort::kSoft;
  std::string speaker;
  std::optional<GlottalParams> ground_truth;
};

struct CorpusManifest {
  std::vector<StimulusRecord> rows;
};

// CSV with header path,vowel,effort,speaker[,fg_true,bg_true,fst_true].
// Lines starting with '#' are metadata and skipped. Relative paths resolve
// against the manifest's directory.
CorpusManifest read_manifest(const std::filesystem::path& path);

// Paths are written relative to the manifest directory when possible.
void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest,
                    const std::string& metadata = {});

// Checks unique paths and at least min_per_class rows for every populated
// class; throws InvalidArgument.
void validate_manifest(const CorpusManifest& manifest, std::size_t min_per_class = 2);

}  // namespace glottkit
