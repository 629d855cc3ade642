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
#include <string>
#include <vector>

#include "civic_digest/ingest.hpp"
#include "civic_digest/random.hpp"
#include "civic_digest/sentiment.hpp"

namespace civic_digest::testing {

std::filesystem::path data_dir();

// Removes itself on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Tagged interview transcript lines ("Q: ...", "R: ...") with roughly
// `response_words` words of responses about town life.
std::vector<std::string> synthetic_transcript(DeterministicRng& rng, std::size_t response_words);

// Writes `count` transcripts named interview-NNN.txt into `dir`.
void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t count, std::size_t mean_words,
                            std::uint64_t seed);

std::vector<sentiment::LabeledSentence> fixture_corpus();

// Naive Bayes trained on the whole bundled fixture corpus.
const sentiment::SentimentModel& fixture_model();

std::string slurp(const std::filesystem::path& path);

// Relative path -> bytes for every regular file under `root`.
std::vector<std::pair<std::string, std::string>> snapshot_tree(const std::filesystem::path& root);

}  // namespace civic_digest::testing
