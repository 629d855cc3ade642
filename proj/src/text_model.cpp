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

#include "civic_digest/text_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "civic_digest/error.hpp"

namespace civic_digest::text {

namespace detail {
extern const char* const kDefaultStoplistText;
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || (c >= '0' && c <= '9'); }
bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_ascii_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

Stoplist Stoplist::from_stream(std::istream& in) {
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    words.insert(to_lower(std::string_view(line).substr(first, last - first + 1)));
  }
  return Stoplist(std::move(words));
}

Stoplist Stoplist::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open stoplist " + path);
  return from_stream(in);
}

const Stoplist& default_stoplist() {
  static const Stoplist list = [] {
    std::istringstream in(detail::kDefaultStoplistText);
    return Stoplist::from_stream(in);
  }();
  return list;
}

std::vector<Sentence> segment_sentences(std::string_view text, const Stoplist& stoplist) {
  std::vector<Sentence> sentences;
  auto emit = [&](std::string_view fragment) {
    auto first = fragment.find_first_not_of(" \t\n\r\f\v");
    if (first == std::string_view::npos) return;
    auto last = fragment.find_last_not_of(" \t\n\r\f\v");
    Sentence s;
    s.index = sentences.size();
    s.text = std::string(fragment.substr(first, last - first + 1));
    s.tokens = analyze(s.text, stoplist);
    sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == text.size() || is_ascii_space(text[i + 1])) {
      emit(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  if (start < text.size()) emit(text.substr(start));
  return sentences;
}

std::vector<Token> tokenize(std::string_view sentence_text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence_text.size();
  while (i < n) {
    while (i < n && is_ascii_space(sentence_text[i])) ++i;
    if (i == n) break;
    std::size_t end = i;
    while (end < n && !is_ascii_space(sentence_text[end])) ++end;

    std::size_t lo = i;
    std::size_t hi = end;
    while (lo < hi && !is_ascii_alnum(sentence_text[lo])) ++lo;
    while (hi > lo && !is_ascii_alnum(sentence_text[hi - 1])) --hi;

    if (lo < hi) {
      if (lo > i && !tokens.empty()) tokens.back().boundary_after = true;
      Token t;
      t.surface = std::string(sentence_text.substr(lo, hi - lo));
      t.position = tokens.size();
      t.boundary_after = hi < end;
      tokens.push_back(std::move(t));
    } else if (!tokens.empty()) {
      // A bare punctuation chunk such as "-" separates its neighbours.
      tokens.back().boundary_after = true;
    }
    i = end;
  }
  return tokens;
}

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// One ordered pass over the five rules; each rule fires at most once.
std::string strip_pass(std::string w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  }
  if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  }
  if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss")) {
    w.pop_back();
  }
  if (w.size() > 5 && ends_with(w, "ing")) {
    w.resize(w.size() - 3);
  }
  if (w.size() > 4 && ends_with(w, "ed")) {
    w.resize(w.size() - 2);
  }
  return w;
}

}  // namespace

std::string lemmatize(std::string_view word) {
  std::string current = to_lower(word);
  for (;;) {
    std::string next = strip_pass(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

Token normalize(Token token, const Stoplist& stoplist) {
  std::string lower = to_lower(token.surface);
  token.lemma = lemmatize(lower);
  if (token.lemma.empty()) token.lemma = lower;
  bool has_letter = std::any_of(token.lemma.begin(), token.lemma.end(), is_ascii_alpha);
  token.is_content = has_letter && !stoplist.contains(lower) && !stoplist.contains(token.lemma);
  return token;
}

std::vector<Token> analyze(std::string_view sentence_text, const Stoplist& stoplist) {
  auto tokens = tokenize(sentence_text);
  for (auto& t : tokens) t = normalize(std::move(t), stoplist);
  return tokens;
}

}  // namespace civic_digest::text
