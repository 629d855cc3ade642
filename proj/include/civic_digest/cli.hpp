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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "civic_digest/ingest.hpp"
#include "civic_digest/sentiment.hpp"
#include "civic_digest/summarize.hpp"
#include "civic_digest/textrank.hpp"

namespace civic_digest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitFatal = 2;

inline constexpr const char* kConfigEnvVar = "CIVIC_DIGEST_CONFIG";

struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  ingest::TranscriptFormat transcript_format = ingest::TranscriptFormat::tagged;
  textrank::RankParams rank_params;
  summarize::SummaryConfig summary_config;
  std::filesystem::path model_path;
  std::uint64_t seed = 0;

  std::size_t jobs = 1;
  std::filesystem::path stoplist_path;   // empty: bundled list
  std::filesystem::path gazetteer_path;  // empty: triggers only
  std::size_t vocabulary_size = 5000;
  sentiment::TrainingParams training;
  std::size_t train_n = 0;  // 0: everything not held out
  std::size_t test_n = 0;   // 0: a fifth of the corpus
  std::size_t context_chars = 120;

  // Throws Error{ConfigParseError} describing the first invalid value.
  void validate() const;
};

// Sets one dotted key ("rank.damping") from its textual value. The rank keys
// also accept their bare names ("damping"). Throws Error{ConfigParseError}.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Flat "key = value" lines; '#' starts a comment. Values override `base`.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

// The effective configuration in the same "key = value" format, one key per
// line in a fixed order. parse_config(echo_config(c)) reproduces c.
std::string echo_config(const RunConfig& config);

// Entry point behind the civic-digest binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace civic_digest::cli
