// Copyright 2026 The civic-digest Authors.
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

#include "civic_digest/ner.hpp"

#include <algorithm>
#include <fstream>

#include "civic_digest/error.hpp"

namespace civic_digest::ner {

std::string_view to_string(SpanSource source) {
  return source == SpanSource::gazetteer ? "gazetteer" : "heuristic";
}

const std::set<std::string>& Gazetteer::default_suffix_triggers() {
  static const std::set<std::string> triggers = {
      "council", "authority", "foundation", "house", "college",
      "committee", "department", "association", "initiative",
  };
  return triggers;
}

Gazetteer::Gazetteer() : triggers_(default_suffix_triggers()) {}

Gazetteer::Gazetteer(std::set<std::string> entries, std::set<std::string> suffix_triggers)
    : triggers_(std::move(suffix_triggers)) {
  for (const auto& e : entries) add_entry(e);
}

std::string Gazetteer::normalize_name(std::string_view name) {
  std::string out;
  for (const auto& t : text::tokenize(name)) {
    if (!out.empty()) out.push_back(' ');
    out += text::to_lower(t.surface);
  }
  return out;
}

void Gazetteer::add_entry(std::string_view name) {
  auto normalized = normalize_name(name);
  if (normalized.empty()) return;
  max_tokens_ = std::max(max_tokens_, text::count_words(normalized));
  entries_.insert(std::move(normalized));
}

Gazetteer Gazetteer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open gazetteer " + path.string());
  Gazetteer g;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    g.add_entry(line);
  }
  return g;
}

namespace {

bool capitalized(const text::Token& t) { return !t.surface.empty() && t.surface[0] >= 'A' && t.surface[0] <= 'Z'; }

std::string joined_surface(const std::vector<text::Token>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace

std::vector<EntitySpan> detect_organizations(const text::Sentence& sentence, const Gazetteer& gazetteer) {
  const auto& tokens = sentence.tokens;
  const std::size_t n = tokens.size();
  std::vector<EntitySpan> candidates;
  auto add = [&](std::size_t b, std::size_t e, SpanSource src) {
    candidates.push_back({sentence.index, b, e, joined_surface(tokens, b, e), src});
  };

  if (!gazetteer.entries().empty()) {
    for (std::size_t b = 0; b < n; ++b) {
      std::string key;
      for (std::size_t e = b + 1; e <= n && e - b <= gazetteer.max_entry_tokens(); ++e) {
        if (e > b + 1) key.push_back(' ');
        key += text::to_lower(tokens[e - 1].surface);
        if (gazetteer.contains(key)) add(b, e, SpanSource::gazetteer);
      }
    }
  }

  // Capitalized runs; a leading stopword ("The", "Our") is not part of a name
  // and stripped punctuation ends the run.
  std::size_t i = 0;
  while (i < n) {
    if (!capitalized(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < n && capitalized(tokens[end]) && !tokens[end - 1].boundary_after) ++end;
    std::size_t start = i;
    while (start < end && !tokens[start].is_content) ++start;
    for (std::size_t last = start + 1; last < end; ++last) {
      if (gazetteer.is_trigger(tokens[last].lemma)) add(start, last + 1, SpanSource::heuristic);
    }
    i = end;
  }

  std::stable_sort(candidates.begin(), candidates.end(), [](const EntitySpan& a, const EntitySpan& b) {
    if (a.length() != b.length()) return a.length() > b.length();
    if (a.token_start != b.token_start) return a.token_start < b.token_start;
    return a.source < b.source;
  });

  std::vector<EntitySpan> accepted;
  for (auto& c : candidates) {
    bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const EntitySpan& a) {
      return c.token_start < a.token_end && a.token_start < c.token_end;
    });
    if (!overlaps) accepted.push_back(std::move(c));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.token_start < b.token_start; });
  return accepted;
}

}  // namespace civic_digest::ner
