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

#include <algorithm>

#include "civic_digest/ner.hpp"
#include "support.hpp"

namespace civic_digest::ner {
namespace {

using text::segment_sentences;

text::Sentence first_sentence(std::string_view s) { return segment_sentences(s).at(0); }

const std::vector<std::string>& fixture_sentences() {
  static const std::vector<std::string> s = {
      "We toured the Baldwin Reynolds House last spring.",
      "The City Council and the Redevelopment Authority met at Market House.",
      "Our Lake County Fair Committee needs volunteers.",
      "the big house is empty.",
      "RIVERSIDE COLLEGE students help the Fairview Public Library.",
      "The Hale Family Foundation, City Council members and The Downtown Business Association spoke.",
      "Visit Diamond Park, Council House or the Market.",
      "I love the Water Street Initiative and Riverside College Initiative too.",
  };
  return s;
}

TEST(DetectOrganizations, HeuristicSuffixTrigger) {
  auto spans = detect_organizations(first_sentence("the Baldwin Reynolds House"), Gazetteer{});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].surface, "Baldwin Reynolds House");
  EXPECT_EQ(spans[0].source, SpanSource::heuristic);
  EXPECT_EQ(spans[0].token_start, 1u);
  EXPECT_EQ(spans[0].token_end, 4u);
}

TEST(DetectOrganizations, NoCapitalsNoSpan) {
  EXPECT_TRUE(detect_organizations(first_sentence("the big house"), Gazetteer{}).empty());
  EXPECT_TRUE(detect_organizations(first_sentence("House"), Gazetteer{}).empty());
  EXPECT_TRUE(detect_organizations(text::Sentence{}, Gazetteer{}).empty());
}

TEST(DetectOrganizations, LeadingStopwordTrimmed) {
  auto spans = detect_organizations(first_sentence("The Downtown Business Association met."), Gazetteer{});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].surface, "Downtown Business Association");
}

TEST(DetectOrganizations, GazetteerIsCaseInsensitive) {
  Gazetteer g;
  g.add_entry("Riverside College");
  EXPECT_TRUE(g.contains("riverside college"));
  for (const char* s : {"riverside college rocks", "RIVERSIDE COLLEGE rocks", "Riverside College rocks"}) {
    auto spans = detect_organizations(first_sentence(s), g);
    ASSERT_EQ(spans.size(), 1u) << s;
    EXPECT_EQ(spans[0].source, SpanSource::gazetteer);
    EXPECT_EQ(spans[0].length(), 2u);
  }
}

TEST(DetectOrganizations, LongerSpanWins) {
  Gazetteer g;
  g.add_entry("Lake County Fair");
  g.add_entry("County Fair Committee");
  auto spans = detect_organizations(first_sentence("Our Lake County Fair Committee meets."), g);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].surface, "Lake County Fair Committee");
}

TEST(DetectOrganizations, EqualLengthGoesToEarlier) {
  Gazetteer g({"red barn", "barn dance"}, {});
  auto spans = detect_organizations(first_sentence("the red barn dance"), g);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].surface, "red barn");
}

// Every interval is tested against the span definitions directly.
std::vector<EntitySpan> quadratic_scan(const text::Sentence& s, const Gazetteer& g) {
  const auto& t = s.tokens;
  auto cap = [&](std::size_t i) { return t[i].surface[0] >= 'A' && t[i].surface[0] <= 'Z'; };
  std::vector<EntitySpan> cands;
  for (std::size_t b = 0; b < t.size(); ++b) {
    for (std::size_t e = b + 1; e <= t.size(); ++e) {
      std::string surface, key;
      for (std::size_t i = b; i < e; ++i) {
        surface += (i > b ? " " : "") + t[i].surface;
        key += (i > b ? " " : "") + text::to_lower(t[i].surface);
      }
      if (g.contains(key)) cands.push_back({s.index, b, e, surface, SpanSource::gazetteer});
      bool run = e - b >= 2 && t[b].is_content && g.is_trigger(t[e - 1].lemma);
      for (std::size_t i = b; i < e && run; ++i) run = cap(i) && (i + 1 == e || !t[i].boundary_after);
      // Anything capitalized and attached on the left must be a stopword.
      for (std::size_t i = b; run && i > 0 && cap(i - 1) && !t[i - 1].boundary_after; --i) run = !t[i - 1].is_content;
      if (run) cands.push_back({s.index, b, e, surface, SpanSource::heuristic});
    }
  }
  std::vector<EntitySpan> out;
  for (std::size_t len = t.size(); len >= 1; --len) {
    for (std::size_t b = 0; b + len <= t.size(); ++b) {
      for (auto src : {SpanSource::gazetteer, SpanSource::heuristic}) {
        for (const auto& c : cands) {
          if (c.token_start != b || c.length() != len || c.source != src) continue;
          bool clash = false;
          for (const auto& o : out) clash = clash || (c.token_start < o.token_end && o.token_start < c.token_end);
          if (!clash) out.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.token_start < b.token_start; });
  return out;
}

TEST(DetectOrganizations, MatchesQuadraticScanOnFixtures) {
  const auto g = Gazetteer::from_file(testing::data_dir() / "gazetteer.txt");
  for (const auto& text : fixture_sentences()) {
    for (const auto& s : segment_sentences(text)) {
      EXPECT_EQ(detect_organizations(s, g), quadratic_scan(s, g)) << text;
      EXPECT_EQ(detect_organizations(s, Gazetteer{}), quadratic_scan(s, Gazetteer{})) << text;
    }
  }
}

TEST(DetectOrganizations, SpansAreDisjointAndInBounds) {
  const auto g = Gazetteer::from_file(testing::data_dir() / "gazetteer.txt");
  for (const auto& text : fixture_sentences()) {
    for (const auto& s : segment_sentences(text)) {
      auto spans = detect_organizations(s, g);
      for (std::size_t i = 0; i < spans.size(); ++i) {
        EXPECT_LT(spans[i].token_start, spans[i].token_end);
        EXPECT_LE(spans[i].token_end, s.tokens.size());
        if (i > 0) EXPECT_LE(spans[i - 1].token_end, spans[i].token_start);
      }
    }
  }
}

TEST(DetectOrganizations, AddingAnEntryKeepsEarlierCoverage) {
  Gazetteer g = Gazetteer::from_file(testing::data_dir() / "gazetteer.txt");
  const std::vector<std::string> extra = {"Baldwin Reynolds", "the big house", "County Fair Committee",
                                          "Water Street", "Diamond Park", "Market"};
  for (const auto& name : extra) {
    Gazetteer bigger = g;
    bigger.add_entry(name);
    for (const auto& text : fixture_sentences()) {
      for (const auto& s : segment_sentences(text)) {
        const auto after = detect_organizations(s, bigger);
        for (const auto& old : detect_organizations(s, g)) {
          // Either kept as is or displaced by a longer overlapping span.
          const bool covered = std::any_of(after.begin(), after.end(), [&](const EntitySpan& a) {
            return a.token_start < old.token_end && old.token_start < a.token_end && a.length() >= old.length();
          });
          const bool kept = std::find(after.begin(), after.end(), old) != after.end();
          EXPECT_TRUE(kept || covered) << name << " | " << old.surface;
        }
      }
    }
  }
}

TEST(Gazetteer, NormalizeAndFile) {
  EXPECT_EQ(Gazetteer::normalize_name("  Market   House, "), "market house");
  EXPECT_EQ(Gazetteer::normalize_name("..."), "");
  Gazetteer g;
  g.add_entry("");
  EXPECT_TRUE(g.entries().empty());
  EXPECT_EQ(g.suffix_triggers(), Gazetteer::default_suffix_triggers());
  const auto file = Gazetteer::from_file(testing::data_dir() / "gazetteer.txt");
  EXPECT_EQ(file.entries().size(), 7u);
  EXPECT_EQ(file.max_entry_tokens(), 3u);
  for (const auto& e : file.entries()) EXPECT_EQ(e, text::to_lower(e));
  EXPECT_THROW(Gazetteer::from_file("/nonexistent/gaz.txt"), Error);
}

}  // namespace
}  // namespace civic_digest::ner
