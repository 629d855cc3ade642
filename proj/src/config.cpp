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

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "civic_digest/cli.hpp"
#include "civic_digest/error.hpp"

namespace civic_digest::cli {

namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::ConfigParseError,
              "'" + std::string(key) + "' = '" + std::string(value) + "': " + std::string(why));
}

double parse_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value, "expected a number");
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value, "expected a non-negative integer");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Setting {
  const char* key;
  Setter set;
  Getter get;
};

template <typename Member>
Setting double_setting(const char* key, Member member) {
  return {key, [member](RunConfig& c, std::string_view k, std::string_view v) { member(c) = parse_double(k, v); },
          [member](const RunConfig& c) { return format_double(member(c)); }};
}

template <typename Member>
Setting size_setting(const char* key, Member member) {
  return {key,
          [member](RunConfig& c, std::string_view k, std::string_view v) {
            member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(parse_uint(k, v));
          },
          [member](const RunConfig& c) { return std::to_string(member(c)); }};
}

template <typename Member>
Setting path_setting(const char* key, Member member) {
  return {key, [member](RunConfig& c, std::string_view, std::string_view v) { member(c) = std::string(v); },
          [member](const RunConfig& c) { return member(c).string(); }};
}

// Echo order is the order of this table.
const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      path_setting("input_dir", [](auto& c) -> auto& { return c.input_dir; }),
      path_setting("output_dir", [](auto& c) -> auto& { return c.output_dir; }),
      {"transcript_format",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         auto f = ingest::parse_transcript_format(v);
         if (!f) bad(k, v, "expected 'tagged' or 'untagged'");
         c.transcript_format = *f;
       },
       [](const RunConfig& c) { return std::string(ingest::to_string(c.transcript_format)); }},
      path_setting("model_path", [](auto& c) -> auto& { return c.model_path; }),
      size_setting("seed", [](auto& c) -> auto& { return c.seed; }),
      size_setting("jobs", [](auto& c) -> auto& { return c.jobs; }),
      path_setting("stoplist", [](auto& c) -> auto& { return c.stoplist_path; }),
      path_setting("gazetteer", [](auto& c) -> auto& { return c.gazetteer_path; }),
      double_setting("rank.damping", [](auto& c) -> auto& { return c.rank_params.damping; }),
      double_setting("rank.tolerance", [](auto& c) -> auto& { return c.rank_params.tolerance; }),
      size_setting("rank.max_iterations", [](auto& c) -> auto& { return c.rank_params.max_iterations; }),
      size_setting("rank.window", [](auto& c) -> auto& { return c.rank_params.window; }),
      double_setting("rank.top_phrase_fraction",
                     [](auto& c) -> auto& { return c.rank_params.top_phrase_fraction; }),
      size_setting("summary.max_sentences", [](auto& c) -> auto& { return c.summary_config.max_sentences; }),
      size_setting("summary.max_keywords", [](auto& c) -> auto& { return c.summary_config.max_keywords; }),
      double_setting("summary.rank_threshold", [](auto& c) -> auto& { return c.summary_config.rank_threshold; }),
      double_setting("summary.strength_threshold",
                     [](auto& c) -> auto& { return c.summary_config.strength_threshold; }),
      double_setting("summary.entity_bonus", [](auto& c) -> auto& { return c.summary_config.entity_bonus; }),
      double_setting("summary.w_rank", [](auto& c) -> auto& { return c.summary_config.w_rank; }),
      double_setting("summary.w_strength", [](auto& c) -> auto& { return c.summary_config.w_strength; }),
      size_setting("sentiment.k", [](auto& c) -> auto& { return c.vocabulary_size; }),
      double_setting("sentiment.alpha", [](auto& c) -> auto& { return c.training.alpha; }),
      double_setting("sentiment.l2", [](auto& c) -> auto& { return c.training.l2; }),
      double_setting("sentiment.learning_rate", [](auto& c) -> auto& { return c.training.learning_rate; }),
      size_setting("sentiment.epochs", [](auto& c) -> auto& { return c.training.epochs; }),
      size_setting("sentiment.train_n", [](auto& c) -> auto& { return c.train_n; }),
      size_setting("sentiment.test_n", [](auto& c) -> auto& { return c.test_n; }),
      size_setting("search.context_chars", [](auto& c) -> auto& { return c.context_chars; }),
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void RunConfig::validate() const {
  try {
    rank_params.validate();
    summary_config.validate();
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParseError, e.what());
  }
  if (jobs == 0) throw Error(ErrorCode::ConfigParseError, "jobs must be at least 1");
  if (vocabulary_size == 0) throw Error(ErrorCode::ConfigParseError, "sentiment.k must be at least 1");
  if (training.epochs == 0) throw Error(ErrorCode::ConfigParseError, "sentiment.epochs must be at least 1");
  if (!(training.alpha > 0.0)) throw Error(ErrorCode::ConfigParseError, "sentiment.alpha must be positive");
  if (!input_dir.empty() && input_dir == output_dir) {
    throw Error(ErrorCode::ConfigParseError, "input and output directories must differ");
  }
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  static const std::map<std::string_view, std::string_view> aliases = {
      {"damping", "rank.damping"},
      {"tolerance", "rank.tolerance"},
      {"max_iterations", "rank.max_iterations"},
      {"window", "rank.window"},
      {"top_phrase_fraction", "rank.top_phrase_fraction"},
  };
  if (auto it = aliases.find(key); it != aliases.end()) key = it->second;
  for (const auto& s : settings()) {
    if (key == s.key) {
      s.set(config, key, value);
      return;
    }
  }
  throw Error(ErrorCode::ConfigParseError, "unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigParseError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ConfigParseError, "line " + std::to_string(line_no) + ": empty key");
    apply_setting(base, key, value);
  }
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParseError, "cannot open config file " + path.string());
  return parse_config(in, std::move(base));
}

std::string echo_config(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& s : settings()) out << s.key << " = " << s.get(config) << "\n";
  return out.str();
}

}  // namespace civic_digest::cli
