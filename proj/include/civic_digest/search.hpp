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
#include <string>
#include <string_view>
#include <vector>

#include "civic_digest/summarize.hpp"

namespace civic_digest::search {

struct SearchHit {
  std::string keyword;          // query text as found in the sentence
  std::string document;         // source_name of the record
  std::string context;          // occurrence plus surrounding text
  std::string matched_keyword;  // keyword-list entry that matched the query
  std::size_t sentence_index = 0;
  std::size_t offset = 0;          // byte offset of the occurrence in the sentence
  std::size_t context_offset = 0;  // byte offset of the occurrence in `context`

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

struct SearchReport {
  std::string query;
  std::string generated_at;    // ISO-8601 UTC, injected by the caller
  std::vector<SearchHit> hits;  // sorted by (document, sentence_index, offset)

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

// Trimmed, lowercased, inner whitespace collapsed.
std::string normalize_query(std::string_view query);

// True when the normalized query equals `keyword` or appears in it as whole words.
bool keyword_matches(std::string_view normalized_query, std::string_view keyword);

// Whole-word, case-insensitive occurrences of `needle` (already lowercase) in `haystack`.
std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle);

// Occurrence at [offset, offset + length) with up to `context_chars` on each
// side; a cut that lands inside a word drops the partial word.
std::string extract_context(std::string_view sentence, std::size_t offset, std::size_t length,
                            std::size_t context_chars, std::size_t* occurrence_offset = nullptr);

inline constexpr std::size_t kDefaultContextChars = 120;

// Throws std::invalid_argument when the query is blank.
SearchReport search_corpus(const std::vector<summarize::SummaryRecord>& records, std::string_view query,
                           std::string generated_at, std::size_t context_chars = kDefaultContextChars);

// "# Search results for "<query>"", one "## <document>" per document and one
// bullet per hit with the occurrence in bold.
std::string render_markdown(const SearchReport& report);

// "park bench!" -> "park-bench".
std::string query_slug(std::string_view query);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp_now();

class PublishTarget {
 public:
  virtual ~PublishTarget() = default;
  // Stores the report under `file_name` and returns where it went.
  virtual std::filesystem::path store(const std::string& file_name, std::string_view markdown, bool overwrite) = 0;
};

// Writes into an existing local directory. A GitHub-backed target would
// implement the same interface.
class LocalDirectoryTarget final : public PublishTarget {
 public:
  explicit LocalDirectoryTarget(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::filesystem::path store(const std::string& file_name, std::string_view markdown, bool overwrite) override;

 private:
  std::filesystem::path dir_;
};

// "search-<slug>-<YYYY-MM-DD>.md", the date taken from generated_at.
std::string report_file_name(const SearchReport& report);

// Throws Error{FileExists} or Error{DestinationUnwritable}.
std::filesystem::path publish(const SearchReport& report, std::string_view markdown, PublishTarget& target,
                              bool overwrite = false);

}  // namespace civic_digest::search
