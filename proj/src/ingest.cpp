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

#include "civic_digest/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "civic_digest/error.hpp"

namespace civic_digest::ingest {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string_view to_string(TranscriptFormat format) {
  return format == TranscriptFormat::tagged ? "tagged" : "untagged";
}

std::optional<TranscriptFormat> parse_transcript_format(std::string_view name) {
  if (name == "tagged") return TranscriptFormat::tagged;
  if (name == "untagged") return TranscriptFormat::untagged;
  return std::nullopt;
}

namespace {

bool allowed_char(char c) {
  if (text::is_ascii_alnum(c)) return true;
  switch (c) {
    case '.': case ',': case ';': case ':': case '\'': case '?': case '!': case '-':
      return true;
    default:
      return false;
  }
}

enum class TagKind { none, question, response };

struct TagLine {
  TagKind kind = TagKind::none;
  std::string_view rest;
};

TagLine classify(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i == line.size()) return {};
  char c = line[i];
  TagKind kind = TagKind::none;
  if (c == 'q' || c == 'Q') kind = TagKind::question;
  else if (c == 'r' || c == 'R') kind = TagKind::response;
  else return {};
  ++i;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i == line.size() || line[i] != ':') return {};
  return {kind, line.substr(i + 1)};
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return text::is_ascii_space(c); });
}

}  // namespace

std::string clean_text(std::string_view input) {
  std::string out;
  out.reserve(input.size());
  bool pending_space = false;
  for (char c : input) {
    if (text::is_ascii_space(c)) {
      pending_space = true;
      continue;
    }
    if (!allowed_char(c)) continue;
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Document make_document(std::string source_name, std::string response_text,
                       const text::Stoplist& stoplist) {
  Document doc;
  doc.source_name = std::move(source_name);
  doc.response_text = std::move(response_text);
  doc.word_count = text::count_words(doc.response_text);
  doc.sentences = text::segment_sentences(doc.response_text, stoplist);
  return doc;
}

Document parse_transcript(const RawTranscript& raw, const text::Stoplist& stoplist) {
  if (raw.source_name.empty()) throw Error(ErrorCode::SchemaError, "transcript has no source name");
  if (raw.lines.empty()) throw Error(ErrorCode::EmptyResponse, raw.source_name + ": transcript has no lines");

  std::string joined;
  auto append = [&joined](std::string_view piece) {
    if (blank(piece)) return;
    if (!joined.empty()) joined.push_back(' ');
    joined.append(piece);
  };

  if (raw.format_hint == TranscriptFormat::untagged) {
    for (const auto& line : raw.lines) append(line);
  } else {
    TagKind current = TagKind::none;
    bool last_tag_has_content = true;
    for (const auto& line : raw.lines) {
      TagLine tag = classify(line);
      if (tag.kind != TagKind::none) {
        current = tag.kind;
        last_tag_has_content = !blank(tag.rest);
        if (current == TagKind::response) append(tag.rest);
        continue;
      }
      if (!blank(line)) last_tag_has_content = true;
      if (current == TagKind::response) append(line);
    }
    if (!last_tag_has_content) {
      throw Error(ErrorCode::MalformedTag, raw.source_name + ": final tag line has no content");
    }
  }

  std::string cleaned = clean_text(joined);
  if (cleaned.empty()) throw Error(ErrorCode::EmptyResponse, raw.source_name + ": no response text");
  return make_document(raw.source_name, std::move(cleaned), stoplist);
}

std::string to_canonical_json(const Document& doc) {
  json j;
  j["id"] = doc.source_name;
  j["text"] = doc.response_text;
  return j.dump();
}

Document from_canonical_json(std::string_view bytes, const text::Stoplist& stoplist) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "document must be a JSON object");
  for (const char* key : {"id", "text"}) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(ErrorCode::SchemaError, std::string("missing field '") + key + "'");
    if (!it->is_string()) throw Error(ErrorCode::SchemaError, std::string("field '") + key + "' must be a string");
  }
  auto id = j["id"].get<std::string>();
  auto body = j["text"].get<std::string>();
  if (id.empty()) throw Error(ErrorCode::SchemaError, "field 'id' is empty");
  if (body.empty()) throw Error(ErrorCode::SchemaError, "field 'text' is empty");
  return make_document(std::move(id), std::move(body), stoplist);
}

CorpusStats corpus_stats(const std::vector<Document>& docs) {
  CorpusStats stats;
  stats.document_count = docs.size();
  if (docs.empty()) return stats;
  stats.empty = false;
  stats.min_words = std::numeric_limits<std::size_t>::max();
  for (const auto& d : docs) {
    stats.total_words += d.word_count;
    stats.min_words = std::min(stats.min_words, d.word_count);
    stats.max_words = std::max(stats.max_words, d.word_count);
  }
  return stats;
}

RawTranscript read_transcript(const fs::path& path, TranscriptFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  RawTranscript raw;
  raw.source_name = path.stem().string();
  raw.format_hint = format;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    raw.lines.push_back(std::move(line));
  }
  return raw;
}

void write_text_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> list_files(const fs::path& dir, std::string_view suffix) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace civic_digest::ingest
