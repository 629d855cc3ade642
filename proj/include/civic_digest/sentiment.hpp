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

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "civic_digest/error.hpp"
#include "civic_digest/random.hpp"
#include "civic_digest/text_model.hpp"

namespace civic_digest::sentiment {

enum class Label { negative = 0, positive = 1 };

struct LabeledSentence {
  std::string text;
  Label label = Label::positive;
};

// Order doubles as the tie-break order of select_best.
enum class ClassifierKind { naive_bayes, multinomial_nb, bernoulli_nb, logistic_regression, linear_svc, sgd };

inline constexpr std::array<ClassifierKind, 6> kAllKinds = {
    ClassifierKind::naive_bayes,         ClassifierKind::multinomial_nb, ClassifierKind::bernoulli_nb,
    ClassifierKind::logistic_regression, ClassifierKind::linear_svc,     ClassifierKind::sgd,
};

std::string_view to_string(ClassifierKind kind);
std::optional<ClassifierKind> parse_kind(std::string_view name);

// A labeled sentence reduced to its content lemmas, in text order.
struct Record {
  std::vector<std::string> lemmas;
  Label label = Label::positive;
};

std::vector<std::string> content_lemma_sequence(std::string_view text,
                                                const text::Stoplist& stoplist = text::default_stoplist());
std::vector<Record> prepare(const std::vector<LabeledSentence>& corpus,
                            const text::Stoplist& stoplist = text::default_stoplist());

// Top-K lemmas by (corpus frequency desc, lemma asc).
class FeatureVocabulary {
 public:
  FeatureVocabulary() = default;
  FeatureVocabulary(std::vector<std::string> words, std::size_t k);

  const std::vector<std::string>& words() const { return words_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return words_.size(); }
  std::optional<std::uint32_t> index_of(const std::string& word) const;

  friend bool operator==(const FeatureVocabulary& a, const FeatureVocabulary& b) {
    return a.k_ == b.k_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::string> words_;
  std::size_t k_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Throws Error{EmptyCorpus} when the corpus has no records.
FeatureVocabulary build_vocabulary(const std::vector<Record>& corpus, std::size_t k = 5000);

// Sparse vector over a vocabulary; entries sorted by index, no zeros stored.
struct FeatureVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  std::vector<double> dense() const;
};

enum class FeatureMode { presence, counts };

FeatureVector featurize_lemmas(const std::vector<std::string>& lemmas, const FeatureVocabulary& vocab,
                               FeatureMode mode = FeatureMode::presence);
FeatureVector featurize(std::string_view text, const FeatureVocabulary& vocab,
                        FeatureMode mode = FeatureMode::presence,
                        const text::Stoplist& stoplist = text::default_stoplist());

// Word -> present map restricted to vocabulary words found in the text. This
// is the feature source of the `naive_bayes` kind.
std::map<std::string, bool> word_set_features(const std::vector<std::string>& lemmas,
                                              const FeatureVocabulary& vocab);

// Seeded shuffle, then test = the final test_n items and train = the train_n
// items just before them. Throws Error{InsufficientData} when
// train_n + test_n exceeds the input size.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_train_test(std::vector<T> items, std::size_t train_n,
                                                           std::size_t test_n, std::uint64_t shuffle_seed) {
  if (train_n + test_n > items.size()) {
    throw Error(ErrorCode::InsufficientData, "requested " + std::to_string(train_n + test_n) +
                                                 " items but only " + std::to_string(items.size()) + " available");
  }
  DeterministicRng rng(shuffle_seed);
  rng.shuffle(items);
  const std::size_t test_begin = items.size() - test_n;
  const std::size_t train_begin = test_begin - train_n;
  std::vector<T> train(std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(train_begin)),
                       std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(test_begin)));
  std::vector<T> test(std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(test_begin)),
                      std::make_move_iterator(items.end()));
  return {std::move(train), std::move(test)};
}

struct TrainingParams {
  double alpha = 1.0;
  double l2 = 1e-4;
  double learning_rate = 0.1;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
};

// Bernoulli event model. Indexed [label][feature].
struct BernoulliTables {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_present;
  std::array<std::vector<double>, 2> log_absent;
};

struct MultinomialTables {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_theta;
};

struct LinearWeights {
  std::vector<double> weights;
  double bias = 0.0;
};

using Parameters = std::variant<BernoulliTables, MultinomialTables, LinearWeights>;

struct SentimentModel {
  ClassifierKind kind = ClassifierKind::naive_bayes;
  FeatureVocabulary vocabulary;
  Parameters parameters;
  double held_out_accuracy = 0.0;
};

// Throws Error{SingleClassCorpus} unless both labels are present.
SentimentModel train_classifier(ClassifierKind kind, const std::vector<Record>& train,
                                const FeatureVocabulary& vocab, const TrainingParams& params = {});

struct Posterior {
  double negative = 0.5;
  double positive = 0.5;
};

Posterior posterior(const SentimentModel& model, const std::vector<std::string>& lemmas);
Label predict(const SentimentModel& model, const std::vector<std::string>& lemmas);

// Fraction of correct predictions. Throws Error{InsufficientData} on an empty set.
double evaluate(const SentimentModel& model, const std::vector<Record>& test);

// Highest held_out_accuracy; ties go to the earlier kind in kAllKinds.
const SentimentModel& select_best(const std::vector<SentimentModel>& models);

struct SentimentScore {
  double value = 0.5;     // 0 = negative, 1 = positive
  double strength = 0.0;  // |2 * value - 1|
};

SentimentScore score_from_value(double value);
SentimentScore score(const SentimentModel& model, std::string_view text,
                     const text::Stoplist& stoplist = text::default_stoplist());

inline constexpr int kModelFormatVersion = 1;

std::string model_to_json(const SentimentModel& model);
// Throws Error{FormatVersionMismatch} or Error{CorruptModelFile}.
SentimentModel model_from_json(std::string_view bytes);
void save_model(const SentimentModel& model, const std::filesystem::path& path);
SentimentModel load_model(const std::filesystem::path& path);

// One sentence per line; blank lines skipped.
std::vector<LabeledSentence> read_labeled_file(const std::filesystem::path& path, Label label);

}  // namespace civic_digest::sentiment
