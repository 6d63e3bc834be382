// Copyright 2026 The codemix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODEMIX_LID_MODEL_H_
#define CODEMIX_LID_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codemix/conll.h"
#include "codemix/labels.h"
#include "codemix/tokenize.h"

namespace codemix {

struct FeatureConfig {
  int ngram_min = 1;
  int ngram_max = 4;
  std::uint32_t hash_dim = 1u << 20;
  bool use_word_feature = true;
  // Number of neighbouring tokens on each side whose identity becomes a
  // feature. 0 disables context features.
  int context_window = 1;

  // Throws InvalidArgument: 1 <= ngram_min <= ngram_max <= 6,
  // hash_dim a power of two >= 2^10, 0 <= context_window <= 255.
  void validate() const;
  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

struct TrainParams {
  int epochs = 5;
  double learning_rate = 1.0;  // decays linearly to 0 over all updates
  double l2 = 1e-6;
  std::uint64_t seed = 0;

  void validate() const;
};

// Character n-grams of "<" + lowercase(token) + ">" for every n in
// [ngram_min, ngram_max], in order of position then length. Exposed for
// inspection; extract_features hashes exactly these strings.
std::vector<std::string> char_ngrams(std::string_view token,
                                     const FeatureConfig& config);

// Hashed feature multiset of one token. left and right list neighbouring
// token texts nearest first; on each side the first position beyond the
// sentence edge becomes a boundary feature. Indices are in [0, hash_dim).
std::vector<std::uint32_t> extract_features(
    std::string_view token, std::span<const std::string_view> left,
    std::span<const std::string_view> right, const FeatureConfig& config);

// Features of tokens[index] with its neighbours taken from the same sentence.
std::vector<std::uint32_t> sentence_token_features(
    std::span<const std::string_view> tokens, std::size_t index,
    const FeatureConfig& config);

// A training example: feature multiset and gold label.
struct Example {
  std::vector<std::uint32_t> features;
  Label label = Label::kEn;
};

// Double-precision parameter block used while training and for gradient
// checks. weights is row-major hash_dim x kNumLabels.
struct DenseParameters {
  std::uint32_t hash_dim = 0;
  std::vector<double> weights;
  std::array<double, kNumLabels> bias{};

  explicit DenseParameters(std::uint32_t dim = 0)
      : hash_dim(dim), weights(static_cast<std::size_t>(dim) * kNumLabels) {}

  double& weight(std::uint32_t row, std::size_t label) {
    return weights[static_cast<std::size_t>(row) * kNumLabels + label];
  }
  double weight(std::uint32_t row, std::size_t label) const {
    return weights[static_cast<std::size_t>(row) * kNumLabels + label];
  }
};

struct TrainingMetadata {
  std::size_t sentences = 0;
  std::size_t examples = 0;
  int epochs = 0;
  std::uint64_t seed = 0;
};

// Hashed char-n-gram multinomial logistic regression over {EN, HI, OTHER}.
// Immutable once trained; safe for concurrent readers.
class LidModel {
 public:
  // Zero-initialized model.
  explicit LidModel(const FeatureConfig& config);
  LidModel(const FeatureConfig& config, const DenseParameters& params);

  const FeatureConfig& config() const { return config_; }
  std::span<const float> weights() const { return weights_; }
  std::span<float> mutable_weights() { return weights_; }
  const std::array<float, kNumLabels>& bias() const { return bias_; }
  std::array<float, kNumLabels>& mutable_bias() { return bias_; }
  const TrainingMetadata& metadata() const { return metadata_; }
  void set_metadata(const TrainingMetadata& m) { metadata_ = m; }

  float weight(std::uint32_t row, std::size_t label) const {
    return weights_[static_cast<std::size_t>(row) * kNumLabels + label];
  }

  DenseParameters to_dense() const;

  friend bool operator==(const LidModel& a, const LidModel& b) {
    return a.config_ == b.config_ && a.bias_ == b.bias_ &&
           a.weights_ == b.weights_;
  }

 private:
  FeatureConfig config_;
  std::vector<float> weights_;
  std::array<float, kNumLabels> bias_{};
  TrainingMetadata metadata_;
};

struct Prediction {
  Label label = Label::kEn;
  std::array<double, kNumLabels> probabilities{};
  double confidence() const { return probabilities[index_of(label)]; }
};

// Class scores: mean of the weight rows at the feature indices plus bias.
// An empty feature list yields the bias alone.
std::array<double, kNumLabels> class_scores(
    const LidModel& model, std::span<const std::uint32_t> features);
std::array<double, kNumLabels> class_scores(
    const DenseParameters& params, std::span<const std::uint32_t> features);

std::array<double, kNumLabels> softmax(
    const std::array<double, kNumLabels>& scores);

// Index of the largest score; ties go to the lowest index (EN < HI < OTHER).
Label argmax_label(const std::array<double, kNumLabels>& scores);

Prediction predict_features(const LidModel& model,
                            std::span<const std::uint32_t> features);

Prediction predict_token(const LidModel& model, std::string_view token,
                         std::span<const std::string_view> left,
                         std::span<const std::string_view> right);
// Single-neighbour convenience; an empty string_view means no neighbour.
Prediction predict_token(const LidModel& model, std::string_view token,
                         std::string_view left, std::string_view right);

// Word tokens receive the classifier label and its probability; every other
// token kind is OTHER with confidence 1.
TokenizedSentence predict_sentence(const LidModel& model,
                                   TokenizedSentence sentence);

struct LossGradient {
  double loss = 0.0;
  // Sorted by row index, one entry per distinct touched row.
  std::vector<std::pair<std::uint32_t, std::array<double, kNumLabels>>> rows;
  std::array<double, kNumLabels> bias{};
};

// Mean softmax cross-entropy over the batch plus (l2 / 2) * squared norm of
// every distinct touched weight row, with its exact gradient.
LossGradient loss_and_gradient(const DenseParameters& params,
                               std::span<const Example> batch, double l2 = 0.0);
LossGradient loss_and_gradient(const LidModel& model,
                               std::span<const Example> batch, double l2 = 0.0);

// Mean cross-entropy (no penalty) over examples.
double mean_loss(const DenseParameters& params, std::span<const Example> examples);

// One example per Word token of the corpus, in corpus order.
std::vector<Example> make_examples(const LabeledCorpus& corpus,
                                   const FeatureConfig& config);

struct TrainReport {
  double initial_loss = 0.0;
  double final_loss = 0.0;
  // Mean pre-update loss of the examples seen during each epoch.
  std::vector<double> epoch_losses;
};

// Sequential SGD on per-token examples, reshuffled every epoch from the seed.
// Throws EmptyCorpus when the corpus has no Word tokens.
LidModel train(const LabeledCorpus& corpus, const FeatureConfig& config,
               const TrainParams& params, TrainReport* report = nullptr);

// Applies one SGD step for a single example in place; exposed so the update
// can be checked against loss_and_gradient.
void sgd_step(DenseParameters& params, const Example& example,
              double learning_rate, double l2);

// Binary model format ("CMLM" v1, little endian, trailing CRC32).
std::string serialize_model(const LidModel& model);
LidModel deserialize_model(std::string_view bytes);
void save_model(const LidModel& model, const std::string& path);
LidModel load_model(const std::string& path);

}  // namespace codemix

#endif  // CODEMIX_LID_MODEL_H_
