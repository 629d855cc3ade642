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

#include <gtest/gtest.h>

#include <iterator>
#include <numeric>
#include <sstream>

#include "civic_digest/error.hpp"
#include "civic_digest/ingest.hpp"
#include "support.hpp"

namespace civic_digest::ingest {
namespace {

RawTranscript tagged(std::vector<std::string> lines) { return {"doc", std::move(lines), TranscriptFormat::tagged}; }

template <typename Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected civic_digest::Error";
  return ErrorCode::IoError;
}

TEST(ParseTranscript, KeepsOnlyResponses) {
  EXPECT_EQ(parse_transcript(tagged({"Q: what do you love?", "R: I love the park."})).response_text,
            "I love the park.");
}

TEST(ParseTranscript, ConcatenatesTurns) {
  EXPECT_EQ(parse_transcript(tagged({"R: first.", "R: second."})).response_text, "first. second.");
}

TEST(ParseTranscript, UntaggedPassthrough) {
  RawTranscript raw{"doc", {"Hello town.", "Bye town."}, TranscriptFormat::untagged};
  EXPECT_EQ(parse_transcript(raw).response_text, "Hello town. Bye town.");
}

TEST(ParseTranscript, TagsAreCaseInsensitiveWithOptionalSpace) {
  auto doc = parse_transcript(tagged({"q : question", "r: one", "continued here", "  R :two", "Q:skip", "Really: no"}));
  EXPECT_EQ(doc.response_text, "one continued here two");
}

TEST(ParseTranscript, PreambleBeforeFirstTagIsDropped) {
  EXPECT_EQ(parse_transcript(tagged({"Interview 12, June", "R: yes."})).response_text, "yes.");
}

TEST(ParseTranscript, Errors) {
  EXPECT_EQ(error_code_of([] { parse_transcript(tagged({"Q: only a question"})); }), ErrorCode::EmptyResponse);
  EXPECT_EQ(error_code_of([] { parse_transcript(tagged({"R: @@@"})); }), ErrorCode::EmptyResponse);
  EXPECT_EQ(error_code_of([] { parse_transcript(tagged({})); }), ErrorCode::EmptyResponse);
  EXPECT_EQ(error_code_of([] { parse_transcript(tagged({"R: fine.", "Q:"})); }), ErrorCode::MalformedTag);
  EXPECT_EQ(error_code_of([] { parse_transcript(tagged({"R: fine.", "R:   ", ""})); }), ErrorCode::MalformedTag);
  // An empty tag followed by content or by another tag is fine.
  EXPECT_EQ(parse_transcript(tagged({"R:", "content."})).response_text, "content.");
  EXPECT_EQ(parse_transcript(tagged({"Q:", "R: ok."})).response_text, "ok.");
}

TEST(ParseTranscript, DocumentInvariants) {
  auto doc = parse_transcript(tagged({"R: I love all the fun things!  We work together.", "Q: and?", "R: Park\tlife"}));
  EXPECT_EQ(doc.word_count, text::count_words(doc.response_text));
  ASSERT_EQ(doc.sentences.size(), 3u);
  EXPECT_EQ(doc.sentences[2].text, "Park life");
}

TEST(ParseTranscript, QuestionTextNeverLeaks) {
  DeterministicRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> lines;
    const std::size_t turns = 1 + rng.uniform_index(6);
    for (std::size_t i = 0; i < turns; ++i) {
      lines.push_back("Q: secretquestion" + std::to_string(i));
      if (rng.uniform_index(2)) lines.push_back("secretcontinuation");
      lines.push_back("R: answer" + std::to_string(i) + ".");
    }
    auto doc = parse_transcript(tagged(lines));
    EXPECT_EQ(doc.response_text.find("secret"), std::string::npos);
  }
}

TEST(CleanText, RemovesDisallowedCharacters) { EXPECT_EQ(clean_text("Hello @#$ world!!"), "Hello world!!"); }

TEST(CleanText, CollapsesWhitespace) { EXPECT_EQ(clean_text("a   b\t\nc"), "a b c"); }

TEST(CleanText, KeepsAllowedPunctuationAndTrims) {
  EXPECT_EQ(clean_text("  it's 1700s - ok; yes: no, fine? go!  "), "it's 1700s - ok; yes: no, fine? go!");
  EXPECT_EQ(clean_text("caf\xc3\xa9 \x01\x7f"), "caf");
  EXPECT_EQ(clean_text(""), "");
}

TEST(CleanText, IdempotentAndNeverLonger) {
  DeterministicRng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s(rng.uniform_index(40), '\0');
    for (char& c : s) c = static_cast<char>(rng.uniform_index(256));
    const auto once = clean_text(s);
    EXPECT_EQ(clean_text(once), once);
    EXPECT_LE(once.size(), s.size());
    for (char c : once) EXPECT_NE(static_cast<unsigned char>(c) < 0x20, true);
  }
}

TEST(CanonicalJson, Schema) {
  auto doc = make_document("a", "hi.");
  EXPECT_EQ(to_canonical_json(doc), R"({"id":"a","text":"hi."})");
}

TEST(CanonicalJson, FromJson) {
  auto doc = from_canonical_json(R"({"id":"a","text":"hi."})");
  EXPECT_EQ(doc.source_name, "a");
  EXPECT_EQ(doc.response_text, "hi.");
  EXPECT_EQ(doc.word_count, 1u);
  ASSERT_EQ(doc.sentences.size(), 1u);
}

TEST(CanonicalJson, SchemaErrors) {
  for (const char* bad : {R"({"id":"a"})", R"({"text":"x"})", R"({"id":1,"text":"x"})", R"([1,2])", "{nope",
                          R"({"id":"a","text":""})"}) {
    EXPECT_EQ(error_code_of([&] { from_canonical_json(bad); }), ErrorCode::SchemaError) << bad;
  }
}

TEST(CanonicalJson, RoundTripProperty) {
  DeterministicRng rng(9);
  for (int i = 0; i < 40; ++i) {
    auto lines = testing::synthetic_transcript(rng, 20 + rng.uniform_index(200));
    RawTranscript raw{"doc-" + std::to_string(i), lines, TranscriptFormat::tagged};
    auto doc = parse_transcript(raw);
    EXPECT_EQ(from_canonical_json(to_canonical_json(doc)), doc);
  }
}

TEST(CorpusStats, TableExtremes) {
  std::vector<Document> docs;
  for (std::size_t n : {334u, 30465u}) {
    Document d;
    d.word_count = n;
    docs.push_back(d);
  }
  auto s = corpus_stats(docs);
  EXPECT_EQ(s.min_words, 334u);
  EXPECT_EQ(s.max_words, 30465u);
}

TEST(CorpusStats, Singleton) {
  auto s = corpus_stats({make_document("x", "one two three four five six seven eight nine ten")});
  EXPECT_EQ(s.document_count, 1u);
  EXPECT_DOUBLE_EQ(s.mean_words(), 10.0);
  EXPECT_EQ(s.min_words, 10u);
  EXPECT_EQ(s.max_words, 10u);
}

TEST(CorpusStats, EmptyCorpusIsFlagged) {
  auto s = corpus_stats({});
  EXPECT_TRUE(s.empty);
  EXPECT_EQ(s.document_count, 0u);
  EXPECT_EQ(s.min_words, 0u);
  EXPECT_EQ(s.max_words, 0u);
}

TEST(CorpusStats, MatchesIndependentRecount) {
  DeterministicRng rng(3);
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) {
    RawTranscript raw{"d" + std::to_string(i), testing::synthetic_transcript(rng, 50 + rng.uniform_index(500)),
                      TranscriptFormat::tagged};
    docs.push_back(parse_transcript(raw));
  }
  // Recount from the text with a stream split, not count_words.
  std::vector<std::size_t> counts;
  for (const auto& d : docs) {
    std::istringstream in(d.response_text);
    counts.push_back(std::distance(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()));
  }
  auto s = corpus_stats(docs);
  EXPECT_EQ(s.document_count, 5u);
  EXPECT_EQ(s.min_words, *std::min_element(counts.begin(), counts.end()));
  EXPECT_EQ(s.max_words, *std::max_element(counts.begin(), counts.end()));
  EXPECT_EQ(s.total_words, std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  EXPECT_LE(static_cast<double>(s.min_words), s.mean_words());
  EXPECT_LE(s.mean_words(), static_cast<double>(s.max_words));
}

TEST(Files, ReadTranscriptUsesStemAndStripsCarriageReturns) {
  testing::TempDir dir;
  ingest::write_text_file(dir / "iv-7.txt", "Q: hi\r\nR: hello there.\r\n");
  auto raw = read_transcript(dir / "iv-7.txt", TranscriptFormat::tagged);
  EXPECT_EQ(raw.source_name, "iv-7");
  EXPECT_EQ(parse_transcript(raw).response_text, "hello there.");
  EXPECT_EQ(list_files(dir.path(), ".txt").size(), 1u);
  EXPECT_TRUE(list_files(dir.path(), ".json").empty());
}

}  // namespace
}  // namespace civic_digest::ingest
