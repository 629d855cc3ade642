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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "civic_digest/text_model.hpp"

namespace civic_digest::ingest {

enum class TranscriptFormat { tagged, untagged };

std::string_view to_string(TranscriptFormat format);
std::optional<TranscriptFormat> parse_transcript_format(std::string_view name);

struct RawTranscript {
  std::string source_name;
  std::vector<std::string> lines;
  TranscriptFormat format_hint = TranscriptFormat::tagged;
};

struct Document {
  std::string source_name;
  std::string response_text;
  std::vector<text::Sentence> sentences;
  std::size_t word_count = 0;

  friend bool operator==(const Document&, const Document&) = default;
};

// Builds a Document from already-cleaned response text.
Document make_document(std::string source_name, std::string response_text,
                       const text::Stoplist& stoplist = text::default_stoplist());

// Tagged transcripts mark turns with "Q:" (question, dropped) or "R:"
// (response, kept) at the start of a line. Tags are case-insensitive and may
// have whitespace before the colon. A turn runs until the next tag line; lines
// before the first tag belong to no turn.
//
// Throws Error{MalformedTag} when the last tag line has no content and nothing
// follows it, and Error{EmptyResponse} when no response text survives cleaning.
Document parse_transcript(const RawTranscript& raw,
                          const text::Stoplist& stoplist = text::default_stoplist());

// Keeps ASCII letters, digits, space and . , ; : ' ? ! -; every whitespace
// run becomes one space; the result is trimmed.
std::string clean_text(std::string_view text);

std::string to_canonical_json(const Document& doc);
Document from_canonical_json(std::string_view bytes,
                             const text::Stoplist& stoplist = text::default_stoplist());

struct CorpusStats {
  std::size_t document_count = 0;
  std::uint64_t total_words = 0;
  std::size_t min_words = 0;
  std::size_t max_words = 0;
  // Set when document_count == 0; the extremes are then reported as zero.
  bool empty = true;

  double mean_words() const {
    return document_count == 0 ? 0.0 : static_cast<double>(total_words) / static_cast<double>(document_count);
  }
};

CorpusStats corpus_stats(const std::vector<Document>& docs);

// File helpers for the directory-based CLI flow.
RawTranscript read_transcript(const std::filesystem::path& path, TranscriptFormat format);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);
// Sorted listing of regular files in `dir` whose name ends with `suffix`.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir, std::string_view suffix);

}  // namespace civic_digest::ingest
