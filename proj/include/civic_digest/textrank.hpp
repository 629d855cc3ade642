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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "civic_digest/text_model.hpp"

namespace civic_digest::textrank {

struct RankParams {
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;
  std::size_t window = 2;
  double top_phrase_fraction = 0.25;

  // Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
};

// Undirected co-occurrence graph over content lemmas. Nodes are kept in
// lexicographic order; node ids index into nodes().
class WordGraph {
 public:
  using NodeId = std::size_t;

  WordGraph() = default;
  explicit WordGraph(std::vector<std::string> sorted_unique_lemmas);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& lemma(NodeId id) const { return nodes_[id]; }
  // node_count() when absent.
  NodeId find(const std::string& lemma) const;

  // Adds `count` to the weight of edge {a, b}. Self loops are ignored.
  void add_edge(NodeId a, NodeId b, unsigned count = 1);
  unsigned weight(NodeId a, NodeId b) const;
  // Neighbour -> weight, ordered by neighbour id.
  const std::map<NodeId, unsigned>& neighbours(NodeId id) const { return adjacency_[id]; }
  // Sum of incident edge weights.
  unsigned long long total_weight(NodeId id) const;
  std::size_t edge_count() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::map<NodeId, unsigned>> adjacency_;
};

// Two content tokens of a sentence co-occur when their content-token
// positions differ by less than `window`. Edge weight counts co-occurrences.
WordGraph build_graph(const std::vector<text::Sentence>& sentences, std::size_t window);

struct RankResult {
  std::map<std::string, double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

// Damped weighted iteration from uniform 1.0:
//   S(v) <- (1 - d) + d * sum_{u in adj(v)} w(u,v) / W(u) * S(u)
// with synchronous updates, until the largest change is below tolerance or
// max_iterations is reached. Running out of iterations is reported through
// `converged`, not thrown.
RankResult rank(const WordGraph& graph, const RankParams& params = {});

struct KeyPhrase {
  std::vector<std::string> lemmas;
  std::string surface;  // most frequent realization in the document
  double score = 0.0;   // sum of member node scores
  std::size_t count = 0;

  friend bool operator==(const KeyPhrase&, const KeyPhrase&) = default;
};

// Marks the top ceil(top_phrase_fraction * |nodes|) lemmas (score desc, then
// lemma asc) and returns every maximal run of adjacent marked content tokens,
// deduplicated by lemma sequence, sorted by (score desc, lemmas asc). Runs
// break at stopwords and at stripped punctuation.
std::vector<KeyPhrase> collect_keyphrases(const std::vector<text::Sentence>& sentences,
                                          const std::map<std::string, double>& scores,
                                          const RankParams& params = {});

// 1 - |a & b| / |a | b|, and 0 when both sets are empty.
template <typename T, typename Compare>
double jaccard_distance(const std::set<T, Compare>& a, const std::set<T, Compare>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  Compare less = a.key_comp();
  while (ia != a.end() && ib != b.end()) {
    if (less(*ia, *ib)) {
      ++ia;
    } else if (less(*ib, *ia)) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

struct SentenceScore {
  std::size_t sentence_index = 0;
  double rank_score = 0.0;  // 1 - jaccard_distance, in [0, 1]
};

std::set<std::string> content_lemmas(const text::Sentence& sentence);

std::vector<SentenceScore> score_sentences(const std::vector<text::Sentence>& sentences,
                                           const std::vector<KeyPhrase>& keyphrases);

// The three layers in one call.
struct DocumentRanking {
  WordGraph graph;
  RankResult ranks;
  std::vector<KeyPhrase> keyphrases;
  std::vector<SentenceScore> sentence_scores;
};

DocumentRanking rank_document(const std::vector<text::Sentence>& sentences, const RankParams& params = {});

}  // namespace civic_digest::textrank
