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
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace civic_digest::text {

// Lowercase function words excluded from graph nodes, features and phrases.
class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

  // One word per line; blank lines and lines starting with '#' are ignored.
  static Stoplist from_stream(std::istream& in);
  static Stoplist from_file(const std::string& path);

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

// The bundled English list (mirrors data/stoplist.txt).
const Stoplist& default_stoplist();

struct Token {
  std::string surface;
  std::string lemma;
  bool is_content = false;
  std::size_t position = 0;  // index in the sentence token list
  // Punctuation was stripped between this token and the next one.
  bool boundary_after = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::vector<Token> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Splits on '.', '!' or '?' followed by whitespace or end of text. The
// terminator stays with its sentence; empty fragments are dropped. Tokens are
// normalized against `stoplist`.
std::vector<Sentence> segment_sentences(std::string_view text,
                                        const Stoplist& stoplist = default_stoplist());

// Whitespace split with leading/trailing punctuation dropped. Lemmas are left
// empty; run normalize() to fill them in.
std::vector<Token> tokenize(std::string_view sentence_text);

// Lowercase plus the suffix stripper below, repeated to a fixpoint:
//   sses -> ss, ies -> i, s -> "" (len > 3, not "ss"), ing (len > 5), ed (len > 4)
std::string lemmatize(std::string_view word);

Token normalize(Token token, const Stoplist& stoplist = default_stoplist());

// tokenize + normalize.
std::vector<Token> analyze(std::string_view sentence_text,
                           const Stoplist& stoplist = default_stoplist());

bool is_ascii_alpha(char c);
bool is_ascii_alnum(char c);
bool is_ascii_space(char c);
std::string to_lower(std::string_view s);

// Number of whitespace-delimited tokens.
std::size_t count_words(std::string_view text);

}  // namespace civic_digest::text
