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

#include "civic_digest/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace civic_digest::sentiment {

using json = nlohmann::json;

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::naive_bayes: return "naive_bayes";
    case ClassifierKind::multinomial_nb: return "multinomial_nb";
    case ClassifierKind::bernoulli_nb: return "bernoulli_nb";
    case ClassifierKind::logistic_regression: return "logistic_regression";
    case ClassifierKind::linear_svc: return "linear_svc";
    case ClassifierKind::sgd: return "sgd";
  }
  return "unknown";
}

std::optional<ClassifierKind> parse_kind(std::string_view name) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<std::string> content_lemma_sequence(std::string_view text, const text::Stoplist& stoplist) {
  std::vector<std::string> lemmas;
  for (auto& t : text::analyze(text, stoplist)) {
    if (t.is_content) lemmas.push_back(std::move(t.lemma));
  }
  return lemmas;
}

std::vector<Record> prepare(const std::vector<LabeledSentence>& corpus, const text::Stoplist& stoplist) {
  std::vector<Record> records;
  records.reserve(corpus.size());
  for (const auto& s : corpus) records.push_back({content_lemma_sequence(s.text, stoplist), s.label});
  return records;
}

FeatureVocabulary::FeatureVocabulary(std::vector<std::string> words, std::size_t k)
    : words_(std::move(words)), k_(k) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> FeatureVocabulary::index_of(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureVocabulary build_vocabulary(const std::vector<Record>& corpus, std::size_t k) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "no labeled sentences");
  if (k == 0) throw std::invalid_argument("vocabulary size must be positive");
  std::map<std::string, std::size_t> freq;
  for (const auto& r : corpus) {
    for (const auto& l : r.lemmas) ++freq[l];
  }
  if (freq.empty()) throw Error(ErrorCode::EmptyCorpus, "labeled sentences contain no content words");
  std::vector<std::pair<std::string, std::size_t>> ordered(freq.begin(), freq.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ordered.size() > k) ordered.resize(k);
  std::vector<std::string> words;
  words.reserve(ordered.size());
  for (auto& [w, _] : ordered) words.push_back(w);
  return FeatureVocabulary(std::move(words), k);
}

std::vector<double> FeatureVector::dense() const {
  std::vector<double> out(dimension, 0.0);
  for (const auto& [i, v] : entries) out[i] = v;
  return out;
}

FeatureVector featurize_lemmas(const std::vector<std::string>& lemmas, const FeatureVocabulary& vocab,
                               FeatureMode mode) {
  std::map<std::uint32_t, double> acc;
  for (const auto& l : lemmas) {
    if (auto i = vocab.index_of(l)) {
      if (mode == FeatureMode::counts) acc[*i] += 1.0;
      else acc[*i] = 1.0;
    }
  }
  FeatureVector fv;
  fv.dimension = vocab.size();
  fv.entries.assign(acc.begin(), acc.end());
  return fv;
}

FeatureVector featurize(std::string_view text, const FeatureVocabulary& vocab, FeatureMode mode,
                        const text::Stoplist& stoplist) {
  return featurize_lemmas(content_lemma_sequence(text, stoplist), vocab, mode);
}

std::map<std::string, bool> word_set_features(const std::vector<std::string>& lemmas,
                                              const FeatureVocabulary& vocab) {
  std::map<std::string, bool> features;
  for (const auto& l : lemmas) {
    if (vocab.index_of(l)) features[l] = true;
  }
  return features;
}

namespace {

constexpr std::size_t kNeg = 0;
constexpr std::size_t kPos = 1;

std::size_t label_index(Label l) { return l == Label::positive ? kPos : kNeg; }

double sigmoid(double m) {
  if (m >= 0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return e / (1.0 + e);
}

Posterior normalize_log_joint(double log_neg, double log_pos) {
  const double m = std::max(log_neg, log_pos);
  const double en = std::exp(log_neg - m);
  const double ep = std::exp(log_pos - m);
  return {en / (en + ep), ep / (en + ep)};
}

std::array<std::size_t, 2> label_counts(const std::vector<Record>& train) {
  std::array<std::size_t, 2> counts{};
  for (const auto& r : train) ++counts[label_index(r.label)];
  return counts;
}

std::array<double, 2> log_priors(const std::array<std::size_t, 2>& counts) {
  const double n = static_cast<double>(counts[kNeg] + counts[kPos]);
  return {std::log(static_cast<double>(counts[kNeg]) / n), std::log(static_cast<double>(counts[kPos]) / n)};
}

BernoulliTables bernoulli_tables(const std::array<std::size_t, 2>& docs,
                                 const std::array<std::vector<double>, 2>& present, double alpha) {
  BernoulliTables t;
  t.log_prior = log_priors(docs);
  for (std::size_t c : {kNeg, kPos}) {
    const double denom = static_cast<double>(docs[c]) + 2.0 * alpha;
    t.log_present[c].resize(present[c].size());
    t.log_absent[c].resize(present[c].size());
    for (std::size_t i = 0; i < present[c].size(); ++i) {
      const double p = (present[c][i] + alpha) / denom;
      t.log_present[c][i] = std::log(p);
      t.log_absent[c][i] = std::log1p(-p);
    }
  }
  return t;
}

// naive_bayes: counts keyed by word through the word-set dictionaries.
BernoulliTables fit_word_set_nb(const std::vector<Record>& train, const FeatureVocabulary& vocab, double alpha) {
  std::array<std::map<std::string, std::size_t>, 2> present_by_word;
  for (const auto& r : train) {
    for (const auto& [word, on] : word_set_features(r.lemmas, vocab)) {
      if (on) ++present_by_word[label_index(r.label)][word];
    }
  }
  std::array<std::vector<double>, 2> present;
  for (std::size_t c : {kNeg, kPos}) {
    present[c].assign(vocab.size(), 0.0);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      auto it = present_by_word[c].find(vocab.words()[i]);
      if (it != present_by_word[c].end()) present[c][i] = static_cast<double>(it->second);
    }
  }
  return bernoulli_tables(label_counts(train), present, alpha);
}

// bernoulli_nb: column sums of the dense binary design matrix.
BernoulliTables fit_dense_bernoulli(const std::vector<Record>& train, const FeatureVocabulary& vocab,
                                    double alpha) {
  std::array<std::vector<double>, 2> present{std::vector<double>(vocab.size(), 0.0),
                                             std::vector<double>(vocab.size(), 0.0)};
  for (const auto& r : train) {
    const auto row = featurize_lemmas(r.lemmas, vocab, FeatureMode::presence).dense();
    auto& col = present[label_index(r.label)];
    for (std::size_t i = 0; i < row.size(); ++i) col[i] += row[i];
  }
  return bernoulli_tables(label_counts(train), present, alpha);
}

MultinomialTables fit_multinomial(const std::vector<Record>& train, const FeatureVocabulary& vocab,
                                  double alpha) {
  std::array<std::vector<double>, 2> counts{std::vector<double>(vocab.size(), 0.0),
                                            std::vector<double>(vocab.size(), 0.0)};
  for (const auto& r : train) {
    for (const auto& [i, v] : featurize_lemmas(r.lemmas, vocab, FeatureMode::counts).entries) {
      counts[label_index(r.label)][i] += v;
    }
  }
  MultinomialTables t;
  t.log_prior = log_priors(label_counts(train));
  for (std::size_t c : {kNeg, kPos}) {
    double total = 0.0;
    for (double v : counts[c]) total += v;
    const double denom = total + alpha * static_cast<double>(vocab.size());
    t.log_theta[c].resize(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) t.log_theta[c][i] = std::log((counts[c][i] + alpha) / denom);
  }
  return t;
}

// w = scale * v, so the L2 shrink of every step is O(1).
class ScaledWeights {
 public:
  explicit ScaledWeights(std::size_t n) : v_(n, 0.0) {}

  double dot(const FeatureVector& x) const {
    double s = 0.0;
    for (const auto& [i, val] : x.entries) s += v_[i] * val;
    return s * scale_;
  }

  void shrink(double factor) {
    scale_ *= factor;
    if (scale_ < 1e-9) {
      for (double& w : v_) w *= scale_;
      scale_ = 1.0;
    }
  }

  void add(const FeatureVector& x, double step) {
    for (const auto& [i, val] : x.entries) v_[i] += step * val / scale_;
  }

  std::vector<double> materialize() const {
    std::vector<double> w(v_);
    for (double& x : w) x *= scale_;
    return w;
  }

 private:
  std::vector<double> v_;
  double scale_ = 1.0;
};

struct Example {
  FeatureVector x;
  double y01 = 0.0;
};

std::vector<Example> presence_examples(const std::vector<Record>& train, const FeatureVocabulary& vocab) {
  std::vector<Example> out;
  out.reserve(train.size());
  for (const auto& r : train) {
    out.push_back({featurize_lemmas(r.lemmas, vocab, FeatureMode::presence), r.label == Label::positive ? 1.0 : 0.0});
  }
  return out;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  return order;
}

LinearWeights fit_logistic_batch(const std::vector<Example>& data, std::size_t dim, const TrainingParams& p) {
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> grad(dim);
  DeterministicRng rng(p.seed);
  auto order = identity_order(data.size());
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    rng.shuffle(order);
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t idx : order) {
      const auto& ex = data[idx];
      double m = b;
      for (const auto& [i, v] : ex.x.entries) m += w[i] * v;
      const double err = sigmoid(m) - ex.y01;
      for (const auto& [i, v] : ex.x.entries) grad[i] += err * v;
      grad_b += err;
    }
    for (std::size_t i = 0; i < dim; ++i) w[i] -= p.learning_rate * (grad[i] * inv_n + p.l2 * w[i]);
    b -= p.learning_rate * grad_b * inv_n;
  }
  return {std::move(w), b};
}

enum class Loss { hinge, log };

LinearWeights fit_stochastic(const std::vector<Example>& data, std::size_t dim, Loss loss, const TrainingParams& p) {
  ScaledWeights w(dim);
  double b = 0.0;
  DeterministicRng rng(p.seed);
  auto order = identity_order(data.size());
  const double shrink = 1.0 - p.learning_rate * p.l2;
  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const auto& ex = data[idx];
      const double m = w.dot(ex.x) + b;
      w.shrink(shrink);
      if (loss == Loss::hinge) {
        const double y = ex.y01 > 0.5 ? 1.0 : -1.0;
        if (y * m < 1.0) {
          w.add(ex.x, p.learning_rate * y);
          b += p.learning_rate * y;
        }
      } else {
        const double err = sigmoid(m) - ex.y01;
        w.add(ex.x, -p.learning_rate * err);
        b -= p.learning_rate * err;
      }
    }
  }
  return {w.materialize(), b};
}

double log_joint_word_set(const BernoulliTables& t, std::size_t c, const FeatureVocabulary& vocab,
                          const std::map<std::string, bool>& features) {
  double s = t.log_prior[c];
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    auto it = features.find(vocab.words()[i]);
    const bool on = it != features.end() && it->second;
    s += on ? t.log_present[c][i] : t.log_absent[c][i];
  }
  return s;
}

double log_joint_dense(const BernoulliTables& t, std::size_t c, const std::vector<double>& x) {
  double s = t.log_prior[c];
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] != 0.0 ? t.log_present[c][i] : t.log_absent[c][i];
  }
  return s;
}

}  // namespace

SentimentModel train_classifier(ClassifierKind kind, const std::vector<Record>& train,
                                const FeatureVocabulary& vocab, const TrainingParams& params) {
  const auto counts = label_counts(train);
  if (counts[kNeg] == 0 || counts[kPos] == 0) {
    throw Error(ErrorCode::SingleClassCorpus, "training data must contain both labels");
  }
  SentimentModel model;
  model.kind = kind;
  model.vocabulary = vocab;
  switch (kind) {
    case ClassifierKind::naive_bayes:
      model.parameters = fit_word_set_nb(train, vocab, params.alpha);
      break;
    case ClassifierKind::bernoulli_nb:
      model.parameters = fit_dense_bernoulli(train, vocab, params.alpha);
      break;
    case ClassifierKind::multinomial_nb:
      model.parameters = fit_multinomial(train, vocab, params.alpha);
      break;
    case ClassifierKind::logistic_regression:
      model.parameters = fit_logistic_batch(presence_examples(train, vocab), vocab.size(), params);
      break;
    case ClassifierKind::linear_svc:
      model.parameters = fit_stochastic(presence_examples(train, vocab), vocab.size(), Loss::hinge, params);
      break;
    case ClassifierKind::sgd:
      model.parameters = fit_stochastic(presence_examples(train, vocab), vocab.size(), Loss::log, params);
      break;
  }
  return model;
}

Posterior posterior(const SentimentModel& model, const std::vector<std::string>& lemmas) {
  const auto& vocab = model.vocabulary;
  switch (model.kind) {
    case ClassifierKind::naive_bayes: {
      const auto& t = std::get<BernoulliTables>(model.parameters);
      const auto features = word_set_features(lemmas, vocab);
      return normalize_log_joint(log_joint_word_set(t, kNeg, vocab, features),
                                 log_joint_word_set(t, kPos, vocab, features));
    }
    case ClassifierKind::bernoulli_nb: {
      const auto& t = std::get<BernoulliTables>(model.parameters);
      const auto x = featurize_lemmas(lemmas, vocab, FeatureMode::presence).dense();
      return normalize_log_joint(log_joint_dense(t, kNeg, x), log_joint_dense(t, kPos, x));
    }
    case ClassifierKind::multinomial_nb: {
      const auto& t = std::get<MultinomialTables>(model.parameters);
      const auto x = featurize_lemmas(lemmas, vocab, FeatureMode::counts);
      std::array<double, 2> lj = t.log_prior;
      for (std::size_t c : {kNeg, kPos}) {
        for (const auto& [i, v] : x.entries) lj[c] += v * t.log_theta[c][i];
      }
      return normalize_log_joint(lj[kNeg], lj[kPos]);
    }
    case ClassifierKind::logistic_regression:
    case ClassifierKind::linear_svc:
    case ClassifierKind::sgd: {
      // Probabilistic kinds emit sigma(w.x + b); linear_svc squashes its margin the same way.
      const auto& lw = std::get<LinearWeights>(model.parameters);
      double m = lw.bias;
      for (const auto& [i, v] : featurize_lemmas(lemmas, vocab, FeatureMode::presence).entries) {
        m += lw.weights[i] * v;
      }
      const double p = sigmoid(m);
      return {1.0 - p, p};
    }
  }
  return {};
}

Label predict(const SentimentModel& model, const std::vector<std::string>& lemmas) {
  const auto p = posterior(model, lemmas);
  return p.positive >= p.negative ? Label::positive : Label::negative;
}

double evaluate(const SentimentModel& model, const std::vector<Record>& test) {
  if (test.empty()) throw Error(ErrorCode::InsufficientData, "empty evaluation set");
  std::size_t correct = 0;
  for (const auto& r : test) {
    if (predict(model, r.lemmas) == r.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

const SentimentModel& select_best(const std::vector<SentimentModel>& models) {
  if (models.empty()) throw std::invalid_argument("select_best needs at least one model");
  const SentimentModel* best = &models.front();
  for (const auto& m : models) {
    if (m.held_out_accuracy > best->held_out_accuracy ||
        (m.held_out_accuracy == best->held_out_accuracy && m.kind < best->kind)) {
      best = &m;
    }
  }
  return *best;
}

SentimentScore score_from_value(double value) {
  value = std::clamp(value, 0.0, 1.0);
  return {value, std::min(1.0, std::abs(2.0 * value - 1.0))};
}

SentimentScore score(const SentimentModel& model, std::string_view text, const text::Stoplist& stoplist) {
  return score_from_value(posterior(model, content_lemma_sequence(text, stoplist)).positive);
}

// ---- persistence ----

namespace {

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorCode::CorruptModelFile, why); }

json tables_pair(const std::array<std::vector<double>, 2>& t) {
  return json{{"negative", t[kNeg]}, {"positive", t[kPos]}};
}

std::array<std::vector<double>, 2> read_pair(const json& j, const char* key, std::size_t dim) {
  if (!j.contains(key)) corrupt(std::string("missing parameter table '") + key + "'");
  const auto& t = j.at(key);
  std::array<std::vector<double>, 2> out{t.at("negative").get<std::vector<double>>(),
                                         t.at("positive").get<std::vector<double>>()};
  for (const auto& v : out) {
    if (v.size() != dim) corrupt(std::string("table '") + key + "' does not match vocabulary size");
  }
  return out;
}

std::array<double, 2> read_prior(const json& j) {
  const auto& p = j.at("log_prior");
  return {p.at("negative").get<double>(), p.at("positive").get<double>()};
}

}  // namespace

std::string model_to_json(const SentimentModel& model) {
  json params;
  std::visit(
      [&params](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernoulliTables>) {
          params["log_prior"] = {{"negative", p.log_prior[kNeg]}, {"positive", p.log_prior[kPos]}};
          params["log_present"] = tables_pair(p.log_present);
          params["log_absent"] = tables_pair(p.log_absent);
        } else if constexpr (std::is_same_v<P, MultinomialTables>) {
          params["log_prior"] = {{"negative", p.log_prior[kNeg]}, {"positive", p.log_prior[kPos]}};
          params["log_theta"] = tables_pair(p.log_theta);
        } else {
          params["weights"] = p.weights;
          params["bias"] = p.bias;
        }
      },
      model.parameters);

  json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = std::string(to_string(model.kind));
  j["held_out_accuracy"] = model.held_out_accuracy;
  j["vocabulary"] = {{"k", model.vocabulary.k()}, {"words", model.vocabulary.words()}};
  j["parameters"] = std::move(params);
  return j.dump(1);
}

SentimentModel model_from_json(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    corrupt(std::string("unreadable model: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version")) corrupt("missing format_version");
  if (!j["format_version"].is_number_integer()) corrupt("format_version must be an integer");
  if (j["format_version"].get<int>() != kModelFormatVersion) {
    throw Error(ErrorCode::FormatVersionMismatch,
                "model format " + j["format_version"].dump() + ", expected " + std::to_string(kModelFormatVersion));
  }
  try {
    SentimentModel model;
    auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) corrupt("unknown classifier kind " + j["kind"].dump());
    model.kind = *kind;
    model.held_out_accuracy = j.at("held_out_accuracy").get<double>();
    const auto& v = j.at("vocabulary");
    model.vocabulary = FeatureVocabulary(v.at("words").get<std::vector<std::string>>(), v.at("k").get<std::size_t>());
    const std::size_t dim = model.vocabulary.size();
    const auto& p = j.at("parameters");
    switch (model.kind) {
      case ClassifierKind::naive_bayes:
      case ClassifierKind::bernoulli_nb: {
        BernoulliTables t;
        t.log_prior = read_prior(p);
        t.log_present = read_pair(p, "log_present", dim);
        t.log_absent = read_pair(p, "log_absent", dim);
        model.parameters = std::move(t);
        break;
      }
      case ClassifierKind::multinomial_nb: {
        MultinomialTables t;
        t.log_prior = read_prior(p);
        t.log_theta = read_pair(p, "log_theta", dim);
        model.parameters = std::move(t);
        break;
      }
      default: {
        LinearWeights lw;
        lw.weights = p.at("weights").get<std::vector<double>>();
        lw.bias = p.at("bias").get<double>();
        if (lw.weights.size() != dim) corrupt("weight vector does not match vocabulary size");
        model.parameters = std::move(lw);
        break;
      }
    }
    return model;
  } catch (const json::exception& e) {
    corrupt(std::string("malformed model: ") + e.what());
  }
}

void save_model(const SentimentModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write model " + path.string());
  out << model_to_json(model);
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

SentimentModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return model_from_json(bytes);
}

std::vector<LabeledSentence> read_labeled_file(const std::filesystem::path& path, Label label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<LabeledSentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back({line, label});
  }
  return out;
}

}  // namespace civic_digest::sentiment
