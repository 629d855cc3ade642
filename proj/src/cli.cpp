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

#include "civic_digest/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "civic_digest/error.hpp"
#include "civic_digest/ner.hpp"
#include "civic_digest/parallel.hpp"
#include "civic_digest/search.hpp"

namespace civic_digest::cli {

namespace fs = std::filesystem;

namespace {

// logfmt lines on the error stream: level=info msg="..." key=value
class Logger {
 public:
  Logger(std::ostream& sink, bool verbose) : sink_(sink), verbose_(verbose) {}

  void info(std::string_view msg, std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    write("info", msg, fields);
  }
  void warn(std::string_view msg, std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    write("warn", msg, fields);
  }
  void error(std::string_view msg, std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    write("error", msg, fields);
  }
  void debug(std::string_view msg, std::initializer_list<std::pair<std::string_view, std::string>> fields = {}) {
    if (verbose_) write("debug", msg, fields);
  }

 private:
  void write(std::string_view level, std::string_view msg,
             std::initializer_list<std::pair<std::string_view, std::string>> fields) {
    sink_ << "level=" << level << " msg=" << std::quoted(std::string(msg));
    for (const auto& [k, v] : fields) sink_ << ' ' << k << '=' << std::quoted(v);
    sink_ << '\n';
  }

  std::ostream& sink_;
  bool verbose_;
};

struct Flag {
  const char* name;  // CLI spelling, e.g. "--damping"
  const char* key;   // RunConfig key
  const char* help;
};

const std::vector<Flag> kRankFlags = {
    {"--damping", "rank.damping", "Rank damping factor in (0, 1)"},
    {"--tolerance", "rank.tolerance", "Rank convergence tolerance"},
    {"--max-iterations", "rank.max_iterations", "Rank iteration cap"},
    {"--window", "rank.window", "Co-occurrence window over content words"},
    {"--top-phrase-fraction", "rank.top_phrase_fraction", "Fraction of top-ranked words used for phrases"},
};

const std::vector<Flag> kSummaryFlags = {
    {"--max-sentences", "summary.max_sentences", "Summary sentence limit"},
    {"--max-keywords", "summary.max_keywords", "Keyword limit"},
    {"--rank-threshold", "summary.rank_threshold", "Rank score that makes a sentence eligible"},
    {"--strength-threshold", "summary.strength_threshold", "Sentiment strength that makes a sentence eligible"},
    {"--entity-bonus", "summary.entity_bonus", "Score bonus for organization mentions"},
    {"--w-rank", "summary.w_rank", "Weight of the rank score"},
    {"--w-strength", "summary.w_strength", "Weight of the sentiment strength"},
};

// Collects string values of flags that map onto config keys, so they can be
// applied after the config file (flags > file > defaults).
class Overrides {
 public:
  void add(CLI::App& app, const Flag& flag) {
    auto& slot = values_[flag.key];
    options_.push_back({app.add_option(flag.name, slot, flag.help), flag.key});
  }
  void add_all(CLI::App& app, const std::vector<Flag>& flags) {
    for (const auto& f : flags) add(app, f);
  }
  void apply(RunConfig& config) const {
    for (const auto& [opt, key] : options_) {
      if (opt->count() > 0) apply_setting(config, key, values_.at(key));
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<CLI::Option*, std::string>> options_;
};

text::Stoplist load_stoplist(const RunConfig& cfg) {
  return cfg.stoplist_path.empty() ? text::default_stoplist() : text::Stoplist::from_file(cfg.stoplist_path.string());
}

void require_dir(const fs::path& dir, std::string_view what) {
  if (dir.empty()) throw Error(ErrorCode::ConfigParseError, std::string(what) + " is not set");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::ConfigParseError, std::string(what) + " " + dir.string() + " is not a directory");
}

void ensure_output_dir(const fs::path& dir) {
  if (dir.empty()) throw Error(ErrorCode::ConfigParseError, "output directory is not set");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::ConfigParseError, "cannot create output directory " + dir.string());
}

bool is_summary_file(const fs::path& p) {
  const std::string name = p.filename().string();
  return name.size() > 13 && name.compare(name.size() - 13, 13, ".summary.json") == 0;
}

struct LoadedDocs {
  std::vector<ingest::Document> docs;
  std::vector<summarize::DocumentFailure> failures;
};

LoadedDocs load_documents(const fs::path& dir, const text::Stoplist& stoplist, std::size_t jobs) {
  std::vector<fs::path> paths;
  for (auto& p : ingest::list_files(dir, ".json")) {
    if (!is_summary_file(p)) paths.push_back(std::move(p));
  }
  std::vector<std::optional<ingest::Document>> slots(paths.size());
  std::vector<std::string> errors(paths.size());
  parallel_for(paths.size(), jobs, [&](std::size_t i) {
    try {
      slots[i] = ingest::from_canonical_json(ingest::read_text_file(paths[i]), stoplist);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  LoadedDocs out;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (slots[i]) out.docs.push_back(std::move(*slots[i]));
    else out.failures.push_back({paths[i].filename().string(), errors[i]});
  }
  return out;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out, Logger& log) {
  require_dir(cfg.input_dir, "input directory");
  ensure_output_dir(cfg.output_dir);
  const auto stoplist = load_stoplist(cfg);
  const auto paths = ingest::list_files(cfg.input_dir, ".txt");

  std::vector<std::optional<ingest::Document>> docs(paths.size());
  std::vector<std::string> errors(paths.size());
  parallel_for(paths.size(), cfg.jobs, [&](std::size_t i) {
    try {
      auto doc = ingest::parse_transcript(ingest::read_transcript(paths[i], cfg.transcript_format), stoplist);
      ingest::write_text_file(cfg.output_dir / (doc.source_name + ".json"), ingest::to_canonical_json(doc) + "\n");
      docs[i] = std::move(doc);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<ingest::Document> ok;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (docs[i]) {
      ok.push_back(std::move(*docs[i]));
    } else {
      ++failed;
      log.error("transcript rejected", {{"file", paths[i].filename().string()}, {"error", errors[i]}});
    }
  }
  const auto stats = ingest::corpus_stats(ok);
  out << "ingested=" << ok.size() << " failed=" << failed << " words=" << stats.total_words << "\n";
  log.info("ingest finished", {{"documents", std::to_string(ok.size())}, {"failed", std::to_string(failed)}});
  return failed ? kExitPartialFailure : kExitOk;
}

int cmd_train(const RunConfig& cfg, const fs::path& pos, const fs::path& neg, std::ostream& out, Logger& log) {
  if (pos.empty() || neg.empty()) throw Error(ErrorCode::ConfigParseError, "train needs --pos and --neg");
  if (cfg.model_path.empty()) throw Error(ErrorCode::ConfigParseError, "train needs --out <model>");
  const auto stoplist = load_stoplist(cfg);

  auto corpus = sentiment::read_labeled_file(pos, sentiment::Label::positive);
  auto negatives = sentiment::read_labeled_file(neg, sentiment::Label::negative);
  corpus.insert(corpus.end(), negatives.begin(), negatives.end());
  const auto records = sentiment::prepare(corpus, stoplist);
  const auto vocab = sentiment::build_vocabulary(records, cfg.vocabulary_size);

  std::size_t test_n = cfg.test_n ? cfg.test_n : std::max<std::size_t>(1, records.size() / 5);
  std::size_t train_n = cfg.train_n ? cfg.train_n : (records.size() > test_n ? records.size() - test_n : 0);
  auto [train, test] = sentiment::split_train_test(records, train_n, test_n, cfg.seed);
  log.info("training", {{"records", std::to_string(records.size())},
                        {"train", std::to_string(train.size())},
                        {"test", std::to_string(test.size())},
                        {"vocabulary", std::to_string(vocab.size())}});

  auto params = cfg.training;
  params.seed = cfg.seed;
  std::vector<sentiment::SentimentModel> models(sentiment::kAllKinds.size());
  parallel_for(models.size(), cfg.jobs, [&](std::size_t i) {
    models[i] = sentiment::train_classifier(sentiment::kAllKinds[i], train, vocab, params);
    models[i].held_out_accuracy = sentiment::evaluate(models[i], test);
  });
  for (const auto& m : models) {
    out << std::left << std::setw(22) << sentiment::to_string(m.kind) << std::fixed << std::setprecision(4)
        << m.held_out_accuracy << "\n";
  }
  const auto& best = sentiment::select_best(models);
  sentiment::save_model(best, cfg.model_path);
  out << "selected=" << sentiment::to_string(best.kind) << " model=" << cfg.model_path.string() << "\n";
  return kExitOk;
}

int cmd_summarize(const RunConfig& cfg, std::ostream& out, Logger& log) {
  require_dir(cfg.input_dir, "input directory");
  std::error_code ec;
  if (cfg.model_path.empty() || !fs::is_regular_file(cfg.model_path, ec)) {
    throw Error(ErrorCode::ConfigParseError,
                "no trained model at '" + cfg.model_path.string() +
                    "'; run `civic-digest train --pos <file> --neg <file> --out <model>` and pass --model");
  }
  ensure_output_dir(cfg.output_dir);
  const auto stoplist = load_stoplist(cfg);
  const auto model = sentiment::load_model(cfg.model_path);
  const auto gazetteer = cfg.gazetteer_path.empty() ? ner::Gazetteer() : ner::Gazetteer::from_file(cfg.gazetteer_path);

  auto loaded = load_documents(cfg.input_dir, stoplist, cfg.jobs);
  summarize::PipelineContext ctx{model, gazetteer, stoplist, cfg.rank_params, cfg.summary_config};
  auto batch = summarize::summarize_corpus(loaded.docs, ctx, cfg.jobs);

  parallel_for(batch.records.size(), cfg.jobs, [&](std::size_t i) {
    const auto& r = batch.records[i];
    ingest::write_text_file(cfg.output_dir / (r.source_name + ".summary.json"), summarize::record_to_json(r));
    ingest::write_text_file(cfg.output_dir / (r.source_name + ".summary.md"), summarize::record_to_markdown(r));
  });

  auto failures = std::move(loaded.failures);
  failures.insert(failures.end(), batch.failures.begin(), batch.failures.end());
  for (const auto& f : failures) log.error("document failed", {{"document", f.source_name}, {"error", f.message}});
  out << "summarized=" << batch.records.size() << " failed=" << failures.size() << " model=" << sentiment::to_string(model.kind)
      << "\n";
  return failures.empty() ? kExitOk : kExitPartialFailure;
}

int cmd_search(const RunConfig& cfg, const std::string& keyword, bool overwrite, const std::string& timestamp,
               std::ostream& out, Logger& log) {
  require_dir(cfg.input_dir, "index directory");
  if (search::normalize_query(keyword).empty()) throw Error(ErrorCode::ConfigParseError, "search needs a non-empty --keyword");
  ensure_output_dir(cfg.output_dir);

  std::vector<summarize::SummaryRecord> records;
  std::size_t failed = 0;
  for (const auto& p : ingest::list_files(cfg.input_dir, ".summary.json")) {
    try {
      records.push_back(summarize::record_from_json(ingest::read_text_file(p)));
    } catch (const Error& e) {
      ++failed;
      log.error("unreadable summary", {{"file", p.filename().string()}, {"error", e.what()}});
    }
  }
  const auto report = search::search_corpus(records, keyword, timestamp.empty() ? search::utc_timestamp_now() : timestamp,
                                            cfg.context_chars);
  const auto markdown = search::render_markdown(report);
  search::LocalDirectoryTarget target(cfg.output_dir);
  const auto path = search::publish(report, markdown, target, overwrite);
  out << "hits=" << report.hits.size() << " report=" << path.string() << "\n";
  return failed ? kExitPartialFailure : kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, Logger& log) {
  require_dir(cfg.input_dir, "input directory");
  auto loaded = load_documents(cfg.input_dir, load_stoplist(cfg), cfg.jobs);
  for (const auto& f : loaded.failures) log.error("document failed", {{"document", f.source_name}, {"error", f.message}});
  const auto stats = ingest::corpus_stats(loaded.docs);
  std::ostringstream mean;
  mean << std::fixed << std::setprecision(1) << stats.mean_words();
  out << "count=" << stats.document_count << "\n"
      << "mean=" << mean.str() << "\n"
      << "min=" << stats.min_words << "\n"
      << "max=" << stats.max_words << "\n";
  if (stats.empty) out << "empty=true\n";
  return loaded.failures.empty() ? kExitOk : kExitPartialFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> kSubcommands = {"ingest", "train", "summarize", "search", "stats"};

  Logger bootstrap(err, false);
  if (args.size() >= 2 && !args[1].empty() && args[1][0] != '-' && kSubcommands.count(args[1]) == 0) {
    bootstrap.error("unknown subcommand", {{"name", args[1]}, {"expected", "ingest|train|summarize|search|stats"}});
    return kExitFatal;
  }

  CLI::App app{"civic-digest: transcript summarization, keywords and keyword search", "civic-digest"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool verbose = false;
  Overrides overrides;
  app.add_option("--config", config_path, "Config file of 'key = value' lines (default: $CIVIC_DIGEST_CONFIG)");
  app.add_flag("-v,--verbose", verbose, "Echo the effective configuration and log progress");
  overrides.add(app, {"--jobs", "jobs", "Worker threads for per-document work"});
  overrides.add(app, {"--stoplist", "stoplist", "Stoplist file, one word per line"});

  auto* ingest_cmd = app.add_subcommand("ingest", "Extract responses from .txt transcripts into canonical JSON");
  overrides.add(*ingest_cmd, {"--input", "input_dir", "Directory of .txt transcripts"});
  overrides.add(*ingest_cmd, {"--output", "output_dir", "Directory for <id>.json documents"});
  overrides.add(*ingest_cmd, {"--format", "transcript_format", "tagged or untagged"});

  fs::path pos_file;
  fs::path neg_file;
  auto* train_cmd = app.add_subcommand("train", "Train the six sentiment classifiers and keep the best");
  train_cmd->add_option("--pos", pos_file, "Positive sentences, one per line");
  train_cmd->add_option("--neg", neg_file, "Negative sentences, one per line");
  overrides.add(*train_cmd, {"--out", "model_path", "Where to write the selected model"});
  overrides.add(*train_cmd, {"--k", "sentiment.k", "Vocabulary size"});
  overrides.add(*train_cmd, {"--seed", "seed", "Shuffle and training seed"});
  overrides.add(*train_cmd, {"--train-n", "sentiment.train_n", "Training records"});
  overrides.add(*train_cmd, {"--test-n", "sentiment.test_n", "Held-out records"});
  overrides.add(*train_cmd, {"--epochs", "sentiment.epochs", "Epochs for the iterative classifiers"});

  auto* summarize_cmd = app.add_subcommand("summarize", "Write keywords and summaries for canonical JSON documents");
  overrides.add(*summarize_cmd, {"--input", "input_dir", "Directory of <id>.json documents"});
  overrides.add(*summarize_cmd, {"--output", "output_dir", "Directory for <id>.summary.json/.md"});
  overrides.add(*summarize_cmd, {"--model", "model_path", "Trained sentiment model"});
  overrides.add(*summarize_cmd, {"--gazetteer", "gazetteer", "Organization names, one per line"});
  overrides.add_all(*summarize_cmd, kRankFlags);
  overrides.add_all(*summarize_cmd, kSummaryFlags);

  std::string keyword;
  std::string timestamp;
  bool overwrite = false;
  auto* search_cmd = app.add_subcommand("search", "Search summaries for a keyword and publish a Markdown report");
  overrides.add(*search_cmd, {"--index", "input_dir", "Directory of <id>.summary.json files"});
  overrides.add(*search_cmd, {"--out", "output_dir", "Directory receiving the report"});
  overrides.add(*search_cmd, {"--context", "search.context_chars", "Context characters on each side"});
  search_cmd->add_option("--keyword", keyword, "Keyword to look for");
  search_cmd->add_option("--timestamp", timestamp, "Report timestamp (ISO-8601 UTC); defaults to now");
  search_cmd->add_flag("--overwrite", overwrite, "Replace an existing report");

  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics over canonical JSON documents");
  overrides.add(*stats_cmd, {"--input", "input_dir", "Directory of <id>.json documents"});

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    bootstrap.error("bad command line", {{"error", e.what()}});
    return kExitFatal;
  }

  Logger log(err, verbose);
  RunConfig cfg;
  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv(kConfigEnvVar); env && *env) config_path = env;
    }
    if (!config_path.empty()) cfg = load_config_file(config_path);
    overrides.apply(cfg);
    cfg.validate();
  } catch (const Error& e) {
    log.error("invalid configuration", {{"error", e.what()}});
    return kExitFatal;
  }

  if (verbose) {
    err << "# effective configuration\n" << echo_config(cfg);
  }

  try {
    if (*ingest_cmd) return cmd_ingest(cfg, out, log);
    if (*train_cmd) return cmd_train(cfg, pos_file, neg_file, out, log);
    if (*summarize_cmd) return cmd_summarize(cfg, out, log);
    if (*search_cmd) return cmd_search(cfg, keyword, overwrite, timestamp, out, log);
    if (*stats_cmd) return cmd_stats(cfg, out, log);
  } catch (const Error& e) {
    log.error("fatal", {{"error", e.what()}});
    return kExitFatal;
  } catch (const std::exception& e) {
    log.error("fatal", {{"error", e.what()}});
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace civic_digest::cli
