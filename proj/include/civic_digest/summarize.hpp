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
#include <string>
#include <string_view>
#include <vector>

#include "civic_digest/ingest.hpp"
#include "civic_digest/ner.hpp"
#include "civic_digest/sentiment.hpp"
#include "civic_digest/textrank.hpp"

namespace civic_digest::summarize {

struct SummaryConfig {
  std::size_t max_sentences = 8;
  std::size_t max_keywords = 12;
  double rank_threshold = 0.2;
  // strength >= 0.6 means P(positive) outside [0.2, 0.8].
  double strength_threshold = 0.6;
  double entity_bonus = 0.1;
  double w_rank = 0.7;
  double w_strength = 0.3;

  // Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct SummarySentence {
  std::size_t sentence_index = 0;
  std::string text;
  double combined_score = 0.0;

  friend bool operator==(const SummarySentence&, const SummarySentence&) = default;
};

struct SummaryRecord {
  std::string source_name;
  std::vector<std::string> keywords;
  std::vector<SummarySentence> summary_sentences;  // document order
  std::string model_kind;

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

// w_rank * rank + w_strength * strength (+ entity_bonus), clipped to [0, 1 + entity_bonus].
double combined_score(double rank, double strength, bool has_org, const SummaryConfig& cfg);

struct PipelineContext {
  const sentiment::SentimentModel& model;
  const ner::Gazetteer& gazetteer;
  const text::Stoplist& stoplist = text::default_stoplist();
  textrank::RankParams rank_params{};
  SummaryConfig config{};
};

// Per-sentence signals behind a summary, exposed for inspection and tests.
struct SentenceSignals {
  std::size_t sentence_index = 0;
  double rank_score = 0.0;
  sentiment::SentimentScore sentiment{};
  bool has_org = false;
  bool eligible = false;
  double combined = 0.0;
};

struct DocumentAnalysis {
  textrank::DocumentRanking ranking;
  std::vector<SentenceSignals> signals;
  std::vector<ner::EntitySpan> organizations;
};

DocumentAnalysis analyze_document(const ingest::Document& doc, const PipelineContext& ctx);

// A sentence is eligible when its rank score, its sentiment strength or an
// organization mention clears the configured bar. The best max_sentences
// eligible sentences by combined score (earlier first on ties) are returned
// in document order. Throws Error{EmptyDocument}.
SummaryRecord summarize_document(const ingest::Document& doc, const PipelineContext& ctx);

struct DocumentFailure {
  std::string source_name;
  std::string message;

  friend bool operator==(const DocumentFailure&, const DocumentFailure&) = default;
};

struct BatchResult {
  std::vector<SummaryRecord> records;  // input order, failures omitted
  std::vector<DocumentFailure> failures;
};

// `jobs` > 1 spreads documents over worker threads; output order is the
// input order regardless.
BatchResult summarize_corpus(const std::vector<ingest::Document>& docs, const PipelineContext& ctx,
                             std::size_t jobs = 1);

// `<id>.summary.json`: {"id", "keywords", "summary", "scores",
// "sentence_indices", "model_kind"}.
std::string record_to_json(const SummaryRecord& record);
// Throws Error{SchemaError}.
SummaryRecord record_from_json(std::string_view bytes);
// `<id>.summary.md`.
std::string record_to_markdown(const SummaryRecord& record);

}  // namespace civic_digest::summarize
