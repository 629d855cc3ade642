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

#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "civic_digest/text_model.hpp"

namespace civic_digest::ner {

enum class SpanSource { gazetteer, heuristic };

std::string_view to_string(SpanSource source);

struct EntitySpan {
  std::size_t sentence_index = 0;
  std::size_t token_start = 0;
  std::size_t token_end = 0;  // exclusive
  std::string surface;        // covered token surfaces joined by single spaces
  SpanSource source = SpanSource::gazetteer;

  std::size_t length() const { return token_end - token_start; }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Known organization names plus the head words that end an organization
// name in the capitalization heuristic ("Baldwin Reynolds House").
class Gazetteer {
 public:
  static const std::set<std::string>& default_suffix_triggers();

  Gazetteer();
  Gazetteer(std::set<std::string> entries, std::set<std::string> suffix_triggers);

  // One name per line; blank lines and '#' comments skipped.
  static Gazetteer from_file(const std::filesystem::path& path);

  // Lowercase, punctuation-trimmed tokens joined by single spaces.
  static std::string normalize_name(std::string_view name);

  void add_entry(std::string_view name);
  bool contains(const std::string& normalized) const { return entries_.count(normalized) > 0; }
  bool is_trigger(const std::string& lemma) const { return triggers_.count(lemma) > 0; }
  const std::set<std::string>& entries() const { return entries_; }
  const std::set<std::string>& suffix_triggers() const { return triggers_; }
  // Token length of the longest entry.
  std::size_t max_entry_tokens() const { return max_tokens_; }

 private:
  std::set<std::string> entries_;
  std::set<std::string> triggers_;
  std::size_t max_tokens_ = 0;
};

// Candidates are (a) token spans whose normalized text is a gazetteer entry
// and (b) runs of two or more capitalized tokens ending in a trigger word.
// Overlaps resolve to the longer span, then the earlier one, then the
// gazetteer source. The result is sorted by token_start.
std::vector<EntitySpan> detect_organizations(const text::Sentence& sentence, const Gazetteer& gazetteer);

}  // namespace civic_digest::ner
