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

#include "glottkit/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("manifest line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Effort e) {
  switch (e) {
    case Effort::kSoft:
      return "soft";
    case Effort::kMedium:
      return "medium";
    case Effort::kLoud:
      return "loud";
  }
  return "unknown";
}

Effort effort_from_string(std::string_view s) {
  if (s == "soft") return Effort::kSoft;
  if (s == "medium") return Effort::kMedium;
  if (s == "loud") return Effort::kLoud;
  throw InvalidArgument("unknown effort label: " + std::string(s));
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const auto base = path.parent_path();
  CorpusManifest m;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool with_truth = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split_csv_line(t);
    if (!header_seen) {
      const std::vector<std::string> required{"path", "vowel", "effort", "speaker"};
      if (fields.size() < 4 || !std::equal(required.begin(), required.end(), fields.begin())) {
        throw InvalidArgument("manifest header must start with path,vowel,effort,speaker");
      }
      if (fields.size() == 7) {
        if (fields[4] != "fg_true" || fields[5] != "bg_true" || fields[6] != "fst_true") {
          throw InvalidArgument("manifest ground-truth columns must be fg_true,bg_true,fst_true");
        }
        with_truth = true;
      } else if (fields.size() != 4) {
        throw InvalidArgument("manifest header has unexpected columns");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != (with_truth ? 7u : 4u)) {
      throw InvalidArgument("manifest line " + std::to_string(line_no) +
                            ": wrong number of fields");
    }
    StimulusRecord rec;
    rec.path = fields[0];
    if (rec.path.empty()) throw InvalidArgument("manifest line " + std::to_string(line_no) + ": empty path");
    if (rec.path.is_relative()) rec.path = base / rec.path;
    rec.vowel = fields[1];
    rec.effort = effort_from_string(fields[2]);
    rec.speaker = fields[3];
    if (with_truth && !(fields[4].empty() && fields[5].empty() && fields[6].empty())) {
      GlottalParams gt;
      gt.fg = parse_double(fields[4], line_no);
      gt.bg = parse_double(fields[5], line_no);
      gt.fst = parse_double(fields[6], line_no);
      rec.ground_truth = gt;
    }
    m.rows.push_back(std::move(rec));
  }
  if (!header_seen) throw InvalidArgument("manifest is empty: " + path.string());
  return m;
}

void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest,
                    const std::string& metadata) {
  bool with_truth = false;
  for (const auto& r : manifest.rows) with_truth = with_truth || r.ground_truth.has_value();
  std::ostringstream os;
  os.precision(17);
  if (!metadata.empty()) os << "# " << metadata << '\n';
  os << "path,vowel,effort,speaker";
  if (with_truth) os << ",fg_true,bg_true,fst_true";
  os << '\n';
  const auto base = std::filesystem::absolute(path).parent_path();
  for (const auto& r : manifest.rows) {
    auto p = r.path;
    if (p.is_absolute()) {
      const auto rel = p.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    os << quote_if_needed(p.generic_string()) << ',' << quote_if_needed(r.vowel) << ','
       << to_string(r.effort) << ',' << quote_if_needed(r.speaker);
    if (with_truth) {
      if (r.ground_truth) {
        os << ',' << r.ground_truth->fg << ',' << r.ground_truth->bg << ',' << r.ground_truth->fst;
      } else {
        os << ",,,";
      }
    }
    os << '\n';
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << os.str();
}

void validate_manifest(const CorpusManifest& manifest, std::size_t min_per_class) {
  if (manifest.rows.empty()) throw InvalidArgument("manifest has no rows");
  std::set<std::string> seen;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : manifest.rows) {
    const auto key = r.path.lexically_normal().string();
    if (!seen.insert(key).second) throw InvalidArgument("duplicate manifest path: " + key);
    ++counts[static_cast<int>(r.effort)];
  }
  for (int c = 0; c < 3; ++c) {
    if (counts[c] > 0 && counts[c] < min_per_class) {
      throw InvalidArgument(std::string("effort class '") +
                            std::string(to_string(static_cast<Effort>(c))) + "' has fewer than " +
                            std::to_string(min_per_class) + " stimuli");
    }
  }
}

}  // namespace glottkit
