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

#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace civic_digest::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return fs::path(CIVIC_DIGEST_DATA_DIR); }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("civic-digest-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

const std::vector<std::string> kQuestions = {
    "What do you love about Fairview?",
    "What matters most to you here?",
    "What is your favorite memory of living in town?",
    "What would make living here easier?",
    "If you had one wish for the city, what would it be?",
    "Tell me about a place you would show a visitor.",
};

const std::vector<std::string> kOpeners = {
    "I love", "We really enjoy", "My family cares about", "I worry about", "Everybody talks about",
    "I remember", "We need", "I would change", "Kids always ask about", "Honestly I miss",
};

const std::vector<std::string> kTopics = {
    "the strong community",    "Diamond Park",           "the farmers market",   "more jobs downtown",
    "the summer parks program", "the Baldwin Reynolds House", "the public library",  "the county fair",
    "the river trail",         "the high school games",  "lower taxes",          "the historic buildings",
    "the Market House",        "the ice rink",           "the Redevelopment Authority", "safe playgrounds",
    "the bus routes",          "the coffee shops",       "the college students", "the fire department",
};

const std::vector<std::string> kClosers = {
    "because it brings people together",
    "and it makes this a great place to raise a family",
    "but it has been neglected for years",
    "since I was a little kid",
    "and the strong community keeps us here",
    "even though the winters are long",
    "which is terrible when the roads are closed",
    "and it is wonderful in the summer",
    "so we come back every weekend",
    "and I hope the city keeps investing in it",
};

const std::string& pick(DeterministicRng& rng, const std::vector<std::string>& v) {
  return v[static_cast<std::size_t>(rng.uniform_index(v.size()))];
}

std::string sentence(DeterministicRng& rng) {
  std::string s = pick(rng, kOpeners) + " " + pick(rng, kTopics);
  if (rng.uniform_index(2) == 0) s += " and " + pick(rng, kTopics);
  s += " " + pick(rng, kClosers);
  s += rng.uniform_index(5) == 0 ? "!" : ".";
  return s;
}

}  // namespace

std::vector<std::string> synthetic_transcript(DeterministicRng& rng, std::size_t response_words) {
  std::vector<std::string> lines;
  std::size_t words = 0;
  while (words < response_words) {
    lines.push_back("Q: " + pick(rng, kQuestions));
    std::string answer = "R: ";
    const std::size_t sentences = 1 + static_cast<std::size_t>(rng.uniform_index(4));
    for (std::size_t i = 0; i < sentences && words < response_words; ++i) {
      auto s = sentence(rng);
      words += text::count_words(s);
      if (i) answer += ' ';
      answer += s;
    }
    lines.push_back(answer);
  }
  return lines;
}

void write_synthetic_corpus(const fs::path& dir, std::size_t count, std::size_t mean_words, std::uint64_t seed) {
  fs::create_directories(dir);
  DeterministicRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    // Lengths spread over [mean/2, 3*mean/2).
    const std::size_t words = mean_words / 2 + static_cast<std::size_t>(rng.uniform_index(mean_words));
    std::ostringstream name;
    name << "interview-" << std::string(3 - std::min<std::size_t>(3, std::to_string(i).size()), '0') << i << ".txt";
    std::ofstream out(dir / name.str());
    for (const auto& line : synthetic_transcript(rng, words)) out << line << "\n";
  }
}

std::vector<sentiment::LabeledSentence> fixture_corpus() {
  auto corpus = sentiment::read_labeled_file(data_dir() / "sentiment" / "positive.txt", sentiment::Label::positive);
  auto neg = sentiment::read_labeled_file(data_dir() / "sentiment" / "negative.txt", sentiment::Label::negative);
  corpus.insert(corpus.end(), neg.begin(), neg.end());
  return corpus;
}

const sentiment::SentimentModel& fixture_model() {
  static const sentiment::SentimentModel model = [] {
    const auto records = sentiment::prepare(fixture_corpus());
    const auto vocab = sentiment::build_vocabulary(records, 5000);
    auto m = sentiment::train_classifier(sentiment::ClassifierKind::naive_bayes, records, vocab);
    m.held_out_accuracy = sentiment::evaluate(m, records);
    return m;
  }();
  return model;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::pair<std::string, std::string>> snapshot_tree(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) out.emplace_back(fs::relative(entry.path(), root).string(), slurp(entry.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace civic_digest::testing
