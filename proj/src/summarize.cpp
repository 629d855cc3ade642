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

#include "civic_digest/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "civic_digest/error.hpp"
#include "civic_digest/parallel.hpp"

namespace civic_digest::summarize {

using json = nlohmann::json;

void SummaryConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (max_sentences < 1) throw std::invalid_argument("max_sentences must be at least 1");
  if (max_keywords < 1) throw std::invalid_argument("max_keywords must be at least 1");
  if (!unit(rank_threshold)) throw std::invalid_argument("rank_threshold must lie in [0, 1]");
  if (!unit(strength_threshold)) throw std::invalid_argument("strength_threshold must lie in [0, 1]");
  if (!(entity_bonus >= 0.0)) throw std::invalid_argument("entity_bonus must be non-negative");
  if (!unit(w_rank) || !unit(w_strength) || std::abs(w_rank + w_strength - 1.0) > 1e-9) {
    throw std::invalid_argument("weights must be in [0, 1] and sum to 1");
  }
}

double combined_score(double rank, double strength, bool has_org, const SummaryConfig& cfg) {
  double s = cfg.w_rank * rank + cfg.w_strength * strength + (has_org ? cfg.entity_bonus : 0.0);
  return std::clamp(s, 0.0, 1.0 + cfg.entity_bonus);
}

DocumentAnalysis analyze_document(const ingest::Document& doc, const PipelineContext& ctx) {
  if (doc.sentences.empty()) throw Error(ErrorCode::EmptyDocument, doc.source_name + ": no sentences");
  const auto& cfg = ctx.config;

  DocumentAnalysis a;
  a.ranking = textrank::rank_document(doc.sentences, ctx.rank_params);
  a.signals.reserve(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    SentenceSignals sig;
    sig.sentence_index = s.index;
    sig.rank_score = a.ranking.sentence_scores[i].rank_score;
    sig.sentiment = sentiment::score(ctx.model, s.text, ctx.stoplist);
    auto orgs = ner::detect_organizations(s, ctx.gazetteer);
    sig.has_org = !orgs.empty();
    a.organizations.insert(a.organizations.end(), orgs.begin(), orgs.end());
    sig.eligible = sig.rank_score >= cfg.rank_threshold || sig.sentiment.strength >= cfg.strength_threshold ||
                   sig.has_org;
    sig.combined = combined_score(sig.rank_score, sig.sentiment.strength, sig.has_org, cfg);
    a.signals.push_back(sig);
  }
  return a;
}

SummaryRecord summarize_document(const ingest::Document& doc, const PipelineContext& ctx) {
  ctx.config.validate();
  const auto analysis = analyze_document(doc, ctx);
  const auto& cfg = ctx.config;

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < analysis.signals.size(); ++i) {
    if (analysis.signals[i].eligible) eligible.push_back(i);
  }
  std::stable_sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
    return analysis.signals[a].combined > analysis.signals[b].combined;
  });
  if (eligible.size() > cfg.max_sentences) eligible.resize(cfg.max_sentences);
  std::sort(eligible.begin(), eligible.end());

  SummaryRecord record;
  record.source_name = doc.source_name;
  record.model_kind = std::string(sentiment::to_string(ctx.model.kind));
  for (std::size_t i : eligible) {
    record.summary_sentences.push_back(
        {doc.sentences[i].index, doc.sentences[i].text, analysis.signals[i].combined});
  }
  const auto& phrases = analysis.ranking.keyphrases;
  for (std::size_t i = 0; i < phrases.size() && i < cfg.max_keywords; ++i) {
    record.keywords.push_back(phrases[i].surface);
  }
  return record;
}

BatchResult summarize_corpus(const std::vector<ingest::Document>& docs, const PipelineContext& ctx,
                             std::size_t jobs) {
  std::vector<std::optional<SummaryRecord>> slots(docs.size());
  std::vector<std::string> errors(docs.size());
  parallel_for(docs.size(), jobs, [&](std::size_t i) {
    try {
      slots[i] = summarize_document(docs[i], ctx);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  BatchResult out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (slots[i]) out.records.push_back(std::move(*slots[i]));
    else out.failures.push_back({docs[i].source_name, errors[i]});
  }
  return out;
}

std::string record_to_json(const SummaryRecord& record) {
  json summary = json::array();
  json scores = json::array();
  json indices = json::array();
  for (const auto& s : record.summary_sentences) {
    summary.push_back(s.text);
    scores.push_back(s.combined_score);
    indices.push_back(s.sentence_index);
  }
  json j;
  j["id"] = record.source_name;
  j["keywords"] = record.keywords;
  j["summary"] = std::move(summary);
  j["scores"] = std::move(scores);
  j["sentence_indices"] = std::move(indices);
  j["model_kind"] = record.model_kind;
  return j.dump(2) + "\n";
}

SummaryRecord record_from_json(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid summary JSON: ") + e.what());
  }
  try {
    SummaryRecord r;
    r.source_name = j.at("id").get<std::string>();
    r.keywords = j.at("keywords").get<std::vector<std::string>>();
    auto summary = j.at("summary").get<std::vector<std::string>>();
    auto scores = j.at("scores").get<std::vector<double>>();
    if (scores.size() != summary.size()) throw Error(ErrorCode::SchemaError, "'scores' must parallel 'summary'");
    std::vector<std::size_t> indices;
    if (j.contains("sentence_indices")) {
      indices = j["sentence_indices"].get<std::vector<std::size_t>>();
      if (indices.size() != summary.size()) {
        throw Error(ErrorCode::SchemaError, "'sentence_indices' must parallel 'summary'");
      }
    } else {
      for (std::size_t i = 0; i < summary.size(); ++i) indices.push_back(i);
    }
    if (j.contains("model_kind")) r.model_kind = j["model_kind"].get<std::string>();
    for (std::size_t i = 0; i < summary.size(); ++i) {
      r.summary_sentences.push_back({indices[i], std::move(summary[i]), scores[i]});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed summary record: ") + e.what());
  }
}

std::string record_to_markdown(const SummaryRecord& record) {
  std::ostringstream out;
  out << "# " << record.source_name << "\n\n";
  out << "**Keywords**: ";
  for (std::size_t i = 0; i < record.keywords.size(); ++i) {
    if (i) out << ", ";
    out << record.keywords[i];
  }
  out << "\n\n**Summary**:\n\n";
  if (record.summary_sentences.empty()) out << "_No sentence selected._\n";
  for (const auto& s : record.summary_sentences) out << "- " << s.text << "\n";
  return out.str();
}

}  // namespace civic_digest::summarize
