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

#include "civic_digest/textrank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace civic_digest::textrank {

void RankParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
  if (window == 0) throw std::invalid_argument("window must be positive");
  if (!(top_phrase_fraction > 0.0 && top_phrase_fraction <= 1.0)) {
    throw std::invalid_argument("top_phrase_fraction must lie in (0, 1]");
  }
}

WordGraph::WordGraph(std::vector<std::string> sorted_unique_lemmas)
    : nodes_(std::move(sorted_unique_lemmas)), adjacency_(nodes_.size()) {}

WordGraph::NodeId WordGraph::find(const std::string& lemma) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), lemma);
  if (it == nodes_.end() || *it != lemma) return nodes_.size();
  return static_cast<NodeId>(it - nodes_.begin());
}

void WordGraph::add_edge(NodeId a, NodeId b, unsigned count) {
  if (a == b) return;
  adjacency_[a][b] += count;
  adjacency_[b][a] += count;
}

unsigned WordGraph::weight(NodeId a, NodeId b) const {
  auto it = adjacency_[a].find(b);
  return it == adjacency_[a].end() ? 0u : it->second;
}

unsigned long long WordGraph::total_weight(NodeId id) const {
  unsigned long long total = 0;
  for (const auto& [_, w] : adjacency_[id]) total += w;
  return total;
}

std::size_t WordGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

WordGraph build_graph(const std::vector<text::Sentence>& sentences, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  std::set<std::string> lemmas;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      if (t.is_content) lemmas.insert(t.lemma);
    }
  }
  WordGraph graph(std::vector<std::string>(lemmas.begin(), lemmas.end()));

  std::vector<WordGraph::NodeId> ids;
  for (const auto& s : sentences) {
    ids.clear();
    for (const auto& t : s.tokens) {
      if (t.is_content) ids.push_back(graph.find(t.lemma));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size() && j - i < window; ++j) {
        graph.add_edge(ids[i], ids[j]);
      }
    }
  }
  return graph;
}

RankResult rank(const WordGraph& graph, const RankParams& params) {
  params.validate();
  const std::size_t n = graph.node_count();
  RankResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  std::vector<double> inv_total(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    auto w = graph.total_weight(u);
    if (w > 0) inv_total[u] = 1.0 / static_cast<double>(w);
  }

  const double d = params.damping;
  std::vector<double> current(n, 1.0);
  std::vector<double> next(n, 0.0);
  while (result.iterations < params.max_iterations) {
    double max_change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double incoming = 0.0;
      for (const auto& [u, w] : graph.neighbours(v)) {
        incoming += static_cast<double>(w) * inv_total[u] * current[u];
      }
      next[v] = (1.0 - d) + d * incoming;
      max_change = std::max(max_change, std::abs(next[v] - current[v]));
    }
    current.swap(next);
    ++result.iterations;
    if (max_change < params.tolerance) {
      result.converged = true;
      break;
    }
  }

  for (std::size_t v = 0; v < n; ++v) result.scores.emplace(graph.lemma(v), current[v]);
  return result;
}

namespace {

std::set<std::string> top_lemmas(const std::map<std::string, double>& scores, double fraction) {
  std::vector<std::pair<std::string, double>> ordered(scores.begin(), scores.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  // The small offset keeps e.g. 0.3 * 10 from rounding up to 4.
  auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(ordered.size()) - 1e-9));
  keep = std::min(keep, ordered.size());
  std::set<std::string> marked;
  for (std::size_t i = 0; i < keep; ++i) marked.insert(ordered[i].first);
  return marked;
}

}  // namespace

std::vector<KeyPhrase> collect_keyphrases(const std::vector<text::Sentence>& sentences,
                                          const std::map<std::string, double>& scores,
                                          const RankParams& params) {
  const std::set<std::string> marked = top_lemmas(scores, params.top_phrase_fraction);
  if (marked.empty()) return {};

  struct Candidate {
    std::map<std::string, std::size_t> surfaces;
    std::size_t count = 0;
  };
  std::map<std::vector<std::string>, Candidate> candidates;

  auto flush = [&](const std::vector<const text::Token*>& run) {
    if (run.empty()) return;
    std::vector<std::string> lemmas;
    std::string surface;
    for (const auto* t : run) {
      lemmas.push_back(t->lemma);
      if (!surface.empty()) surface.push_back(' ');
      surface += t->surface;
    }
    auto& c = candidates[lemmas];
    ++c.count;
    ++c.surfaces[surface];
  };

  std::vector<const text::Token*> run;
  for (const auto& s : sentences) {
    run.clear();
    for (const auto& t : s.tokens) {
      const bool is_marked = t.is_content && marked.count(t.lemma) > 0;
      if (!is_marked) {
        flush(run);
        run.clear();
        continue;
      }
      run.push_back(&t);
      if (t.boundary_after) {
        flush(run);
        run.clear();
      }
    }
    flush(run);
  }

  std::vector<KeyPhrase> phrases;
  phrases.reserve(candidates.size());
  for (auto& [lemmas, c] : candidates) {
    KeyPhrase p;
    p.lemmas = lemmas;
    p.count = c.count;
    for (const auto& l : lemmas) p.score += scores.at(l);
    std::size_t best = 0;
    // std::map iteration is ascending, so strict > keeps the smallest on ties.
    for (const auto& [surface, n] : c.surfaces) {
      if (n > best) {
        best = n;
        p.surface = surface;
      }
    }
    phrases.push_back(std::move(p));
  }
  std::stable_sort(phrases.begin(), phrases.end(), [](const KeyPhrase& a, const KeyPhrase& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.lemmas < b.lemmas;
  });
  return phrases;
}

std::set<std::string> content_lemmas(const text::Sentence& sentence) {
  std::set<std::string> out;
  for (const auto& t : sentence.tokens) {
    if (t.is_content) out.insert(t.lemma);
  }
  return out;
}

std::vector<SentenceScore> score_sentences(const std::vector<text::Sentence>& sentences,
                                           const std::vector<KeyPhrase>& keyphrases) {
  std::set<std::string> phrase_lemmas;
  for (const auto& p : keyphrases) phrase_lemmas.insert(p.lemmas.begin(), p.lemmas.end());

  std::vector<SentenceScore> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    out.push_back({s.index, 1.0 - jaccard_distance(content_lemmas(s), phrase_lemmas)});
  }
  return out;
}

DocumentRanking rank_document(const std::vector<text::Sentence>& sentences, const RankParams& params) {
  DocumentRanking r;
  r.graph = build_graph(sentences, params.window);
  r.ranks = rank(r.graph, params);
  r.keyphrases = collect_keyphrases(sentences, r.ranks.scores, params);
  r.sentence_scores = score_sentences(sentences, r.keyphrases);
  return r;
}

}  // namespace civic_digest::textrank
