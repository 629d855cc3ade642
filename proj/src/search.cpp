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

#include "civic_digest/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "civic_digest/error.hpp"
#include "civic_digest/text_model.hpp"

namespace civic_digest::search {

namespace fs = std::filesystem;

std::string normalize_query(std::string_view query) {
  std::string out;
  bool pending_space = false;
  for (char c : query) {
    if (text::is_ascii_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return text::to_lower(out);
}

std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > haystack.size()) return out;
  const std::string lowered = text::to_lower(haystack);
  std::size_t pos = lowered.find(needle);
  while (pos != std::string::npos) {
    const std::size_t end = pos + needle.size();
    const bool left_ok = pos == 0 || !text::is_ascii_alnum(lowered[pos - 1]);
    const bool right_ok = end == lowered.size() || !text::is_ascii_alnum(lowered[end]);
    if (left_ok && right_ok) out.push_back(pos);
    pos = lowered.find(needle, pos + 1);
  }
  return out;
}

bool keyword_matches(std::string_view normalized_query, std::string_view keyword) {
  const std::string k = normalize_query(keyword);
  return k == normalized_query || !find_occurrences(k, normalized_query).empty();
}

std::string extract_context(std::string_view sentence, std::size_t offset, std::size_t length,
                            std::size_t context_chars, std::size_t* occurrence_offset) {
  auto space = [&](std::size_t i) { return text::is_ascii_space(sentence[i]); };
  std::size_t left = offset > context_chars ? offset - context_chars : 0;
  if (left > 0 && !space(left - 1) && !space(left)) {
    while (left < offset && !space(left)) ++left;
  }
  while (left < offset && space(left)) ++left;

  const std::size_t occ_end = offset + length;
  std::size_t right = std::min(sentence.size(), occ_end + context_chars);
  if (right < sentence.size() && !space(right - 1) && !space(right)) {
    while (right > occ_end && !space(right - 1)) --right;
  }
  while (right > occ_end && space(right - 1)) --right;

  if (occurrence_offset) *occurrence_offset = offset - left;
  return std::string(sentence.substr(left, right - left));
}

SearchReport search_corpus(const std::vector<summarize::SummaryRecord>& records, std::string_view query,
                           std::string generated_at, std::size_t context_chars) {
  SearchReport report;
  report.query = normalize_query(query);
  report.generated_at = std::move(generated_at);
  if (report.query.empty()) throw std::invalid_argument("search query is blank");

  for (const auto& record : records) {
    auto matched = std::find_if(record.keywords.begin(), record.keywords.end(),
                                [&](const std::string& k) { return keyword_matches(report.query, k); });
    if (matched == record.keywords.end()) continue;
    for (const auto& s : record.summary_sentences) {
      for (std::size_t pos : find_occurrences(s.text, report.query)) {
        SearchHit hit;
        hit.keyword = s.text.substr(pos, report.query.size());
        hit.document = record.source_name;
        hit.matched_keyword = *matched;
        hit.sentence_index = s.sentence_index;
        hit.offset = pos;
        hit.context = extract_context(s.text, pos, report.query.size(), context_chars, &hit.context_offset);
        report.hits.push_back(std::move(hit));
      }
    }
  }
  std::sort(report.hits.begin(), report.hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.document != b.document) return a.document < b.document;
    if (a.sentence_index != b.sentence_index) return a.sentence_index < b.sentence_index;
    return a.offset < b.offset;
  });
  return report;
}

std::string render_markdown(const SearchReport& report) {
  std::ostringstream out;
  out << "# Search results for \"" << report.query << "\"\n\n";
  out << "Generated " << report.generated_at << ".\n\n";
  if (report.hits.empty()) {
    out << "No matches.\n";
    return out.str();
  }
  std::size_t documents = 0;
  for (std::size_t i = 0; i < report.hits.size(); ++i) {
    if (i == 0 || report.hits[i].document != report.hits[i - 1].document) ++documents;
  }
  out << report.hits.size() << (report.hits.size() == 1 ? " match" : " matches") << " in " << documents
      << (documents == 1 ? " document" : " documents") << ".\n";

  const std::string* current = nullptr;
  for (const auto& hit : report.hits) {
    if (!current || *current != hit.document) {
      current = &hit.document;
      out << "\n## " << hit.document << "\n\n";
    }
    const std::string_view ctx(hit.context);
    const std::size_t len = hit.keyword.size();
    out << "- " << ctx.substr(0, hit.context_offset) << "**" << ctx.substr(hit.context_offset, len) << "**"
        << ctx.substr(hit.context_offset + len) << " _(keyword: " << hit.matched_keyword << ")_\n";
  }
  return out.str();
}

std::string query_slug(std::string_view query) {
  std::string slug;
  for (char c : text::to_lower(query)) {
    if (text::is_ascii_alnum(c)) {
      slug.push_back(c);
    } else if (!slug.empty() && slug.back() != '-') {
      slug.push_back('-');
    }
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  return slug.empty() ? "query" : slug;
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_file_name(const SearchReport& report) {
  const std::string& ts = report.generated_at;
  bool dated = ts.size() >= 10 && ts[4] == '-' && ts[7] == '-';
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (dated && !(ts[i] >= '0' && ts[i] <= '9')) dated = false;
  }
  return "search-" + query_slug(report.query) + "-" + (dated ? ts.substr(0, 10) : std::string("undated")) + ".md";
}

fs::path LocalDirectoryTarget::store(const std::string& file_name, std::string_view markdown, bool overwrite) {
  static std::mutex write_mutex;
  std::lock_guard lock(write_mutex);

  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) {
    throw Error(ErrorCode::DestinationUnwritable, dir_.string() + " is not a directory");
  }
  const fs::path path = dir_ / file_name;
  // "x" makes creation fail instead of clobbering an existing file.
  std::FILE* f = std::fopen(path.c_str(), overwrite ? "wb" : "wbx");
  if (!f) {
    if (!overwrite && fs::exists(path, ec)) {
      throw Error(ErrorCode::FileExists, path.string() + " exists; pass the overwrite flag to replace it");
    }
    throw Error(ErrorCode::DestinationUnwritable, "cannot create " + path.string());
  }
  const bool ok = std::fwrite(markdown.data(), 1, markdown.size(), f) == markdown.size();
  const bool closed = std::fclose(f) == 0;
  if (!ok || !closed) throw Error(ErrorCode::DestinationUnwritable, "short write to " + path.string());
  return path;
}

fs::path publish(const SearchReport& report, std::string_view markdown, PublishTarget& target, bool overwrite) {
  return target.store(report_file_name(report), markdown, overwrite);
}

}  // namespace civic_digest::search
