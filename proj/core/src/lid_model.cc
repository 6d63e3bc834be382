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

#include "codemix/lid_model.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <zlib.h>

#include "codemix/corpus_io.h"
#include "codemix/error.h"
#include "codemix/rng.h"
#include "codemix/utf8.h"

namespace codemix {

namespace {

constexpr char kMagic[4] = {'C', 'M', 'L', 'M'};
constexpr std::uint16_t kFormatVersion = 1;
constexpr std::uint8_t kFlagWordFeature = 0x01;

constexpr std::string_view kLeftBoundary = "<s>";
constexpr std::string_view kRightBoundary = "</s>";

bool is_power_of_two(std::uint32_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// FNV-1a over a one-byte namespace tag followed by the feature string,
// folded to hash_dim. Fixed so models are portable across compilers.
std::uint32_t feature_index(char tag, std::string_view text,
                            std::uint32_t hash_dim) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  feed(static_cast<unsigned char>(tag));
  for (char c : text) feed(static_cast<unsigned char>(c));
  h ^= h >> 32;
  return static_cast<std::uint32_t>(h) & (hash_dim - 1);
}

std::vector<std::size_t> scalar_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  utf8::ScalarIterator it(text);
  while (!it.done()) {
    offsets.push_back(it.position());
    it.next();
  }
  offsets.push_back(text.size());
  return offsets;
}

// Per-example gradient of the unpenalized cross-entropy, one entry per
// distinct row: g_k * (occurrences / F). Shared by loss_and_gradient and
// sgd_step so the two agree bit for bit.
struct ExampleGradient {
  double loss = 0.0;
  std::vector<std::pair<std::uint32_t, std::array<double, kNumLabels>>> rows;
  std::array<double, kNumLabels> bias{};
};

ExampleGradient example_gradient(const DenseParameters& params,
                                 const Example& example) {
  ExampleGradient out;
  const auto probs = softmax(class_scores(params, example.features));
  const std::size_t gold = index_of(example.label);
  out.loss = -std::log(probs[gold]);
  std::array<double, kNumLabels> g{};
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    g[k] = probs[k] - (k == gold ? 1.0 : 0.0);
    out.bias[k] = g[k];
  }
  if (example.features.empty()) return out;

  std::vector<std::uint32_t> sorted = example.features;
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double share = static_cast<double>(j - i) / total;
    std::array<double, kNumLabels> row{};
    for (std::size_t k = 0; k < kNumLabels; ++k) row[k] = g[k] * share;
    out.rows.emplace_back(sorted[i], row);
    i = j;
  }
  return out;
}

template <typename Params>
std::array<double, kNumLabels> scores_impl(
    const Params& params, std::span<const std::uint32_t> features,
    const std::array<double, kNumLabels>& bias) {
  std::array<double, kNumLabels> scores{};
  if (!features.empty()) {
    for (std::uint32_t f : features) {
      for (std::size_t k = 0; k < kNumLabels; ++k) {
        scores[k] += static_cast<double>(params.weight(f, k));
      }
    }
    const double total = static_cast<double>(features.size());
    for (double& s : scores) s /= total;
  }
  for (std::size_t k = 0; k < kNumLabels; ++k) scores[k] += bias[k];
  return scores;
}

void check_features(std::span<const std::uint32_t> features,
                    std::uint32_t hash_dim) {
  for (std::uint32_t f : features) {
    if (f >= hash_dim) throw InvalidArgument("feature index out of range");
  }
}

// Little-endian writer/reader for the model blob.
class BlobWriter {
 public:
  void bytes(const void* data, std::size_t n) {
    out_.append(static_cast<const char*>(data), n);
  }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) u8(static_cast<std::uint8_t>(v >> s));
  }
  void f32(float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    u32(bits);
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class BlobReader {
 public:
  explicit BlobReader(std::string_view data) : data_(data) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<unsigned char>(data_[pos_++]);
  }
  std::uint16_t u16() {
    std::uint16_t lo = u8();
    std::uint16_t hi = u8();
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int s = 0; s < 32; s += 8) v |= static_cast<std::uint32_t>(u8()) << s;
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string cstring() {
    std::string s;
    for (;;) {
      char c = static_cast<char>(u8());
      if (c == '\0') return s;
      s.push_back(c);
    }
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw FormatError("model file is truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::string_view data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; model files can exceed 4 GiB in principle.
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t chunk =
        std::min<std::size_t>(data.size() - pos, std::numeric_limits<uInt>::max());
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(data.data() + pos),
                  static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

void FeatureConfig::validate() const {
  if (ngram_min < 1 || ngram_max > 6 || ngram_min > ngram_max) {
    throw InvalidArgument("n-gram range must satisfy 1 <= min <= max <= 6");
  }
  if (!is_power_of_two(hash_dim) || hash_dim < (1u << 10)) {
    throw InvalidArgument("hash_dim must be a power of two >= 1024");
  }
  if (context_window < 0 || context_window > 255) {
    throw InvalidArgument("context_window must be in [0, 255]");
  }
}

void TrainParams::validate() const {
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning_rate must be > 0");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) {
    throw InvalidArgument("l2 must be >= 0");
  }
}

std::vector<std::string> char_ngrams(std::string_view token,
                                     const FeatureConfig& config) {
  const std::string marked = "<" + ascii_lower(token) + ">";
  const std::vector<std::size_t> offsets = scalar_offsets(marked);
  const std::size_t length = offsets.size() - 1;
  std::vector<std::string> grams;
  for (std::size_t i = 0; i < length; ++i) {
    for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
      const std::size_t end = i + static_cast<std::size_t>(n);
      if (end > length) break;
      grams.push_back(marked.substr(offsets[i], offsets[end] - offsets[i]));
    }
  }
  return grams;
}

std::vector<std::uint32_t> extract_features(
    std::string_view token, std::span<const std::string_view> left,
    std::span<const std::string_view> right, const FeatureConfig& config) {
  std::vector<std::uint32_t> features;
  for (const std::string& gram : char_ngrams(token, config)) {
    features.push_back(feature_index('g', gram, config.hash_dim));
  }
  if (config.use_word_feature) {
    features.push_back(feature_index('w', ascii_lower(token), config.hash_dim));
  }
  std::string key;
  for (int d = 1; d <= config.context_window; ++d) {
    const auto at = static_cast<std::size_t>(d - 1);
    const std::string prefix = std::to_string(d) + ":";
    if (at <= left.size()) {
      key = prefix + (at < left.size() ? ascii_lower(left[at])
                                       : std::string(kLeftBoundary));
      features.push_back(feature_index('l', key, config.hash_dim));
    }
    if (at <= right.size()) {
      key = prefix + (at < right.size() ? ascii_lower(right[at])
                                        : std::string(kRightBoundary));
      features.push_back(feature_index('r', key, config.hash_dim));
    }
  }
  return features;
}

std::vector<std::uint32_t> sentence_token_features(
    std::span<const std::string_view> tokens, std::size_t index,
    const FeatureConfig& config) {
  const auto window = static_cast<std::size_t>(config.context_window);
  std::vector<std::string_view> left;
  std::vector<std::string_view> right;
  for (std::size_t d = 1; d <= window && d <= index; ++d) {
    left.push_back(tokens[index - d]);
  }
  for (std::size_t d = 1; d <= window && index + d < tokens.size(); ++d) {
    right.push_back(tokens[index + d]);
  }
  return extract_features(tokens[index], left, right, config);
}

LidModel::LidModel(const FeatureConfig& config) : config_(config) {
  config_.validate();
  weights_.assign(static_cast<std::size_t>(config_.hash_dim) * kNumLabels, 0.0f);
}

LidModel::LidModel(const FeatureConfig& config, const DenseParameters& params)
    : LidModel(config) {
  if (params.hash_dim != config_.hash_dim ||
      params.weights.size() != weights_.size()) {
    throw InvalidArgument("parameter block does not match feature config");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i] = static_cast<float>(params.weights[i]);
  }
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    bias_[k] = static_cast<float>(params.bias[k]);
  }
}

DenseParameters LidModel::to_dense() const {
  DenseParameters params(config_.hash_dim);
  for (std::size_t i = 0; i < weights_.size(); ++i) params.weights[i] = weights_[i];
  for (std::size_t k = 0; k < kNumLabels; ++k) params.bias[k] = bias_[k];
  return params;
}

std::array<double, kNumLabels> class_scores(
    const LidModel& model, std::span<const std::uint32_t> features) {
  check_features(features, model.config().hash_dim);
  std::array<double, kNumLabels> bias{};
  for (std::size_t k = 0; k < kNumLabels; ++k) bias[k] = model.bias()[k];
  return scores_impl(model, features, bias);
}

std::array<double, kNumLabels> class_scores(
    const DenseParameters& params, std::span<const std::uint32_t> features) {
  check_features(features, params.hash_dim);
  return scores_impl(params, features, params.bias);
}

std::array<double, kNumLabels> softmax(
    const std::array<double, kNumLabels>& scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::array<double, kNumLabels> probs{};
  double sum = 0.0;
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    probs[k] = std::exp(scores[k] - top);
    sum += probs[k];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

Label argmax_label(const std::array<double, kNumLabels>& scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumLabels; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return kAllLabels[best];
}

Prediction predict_features(const LidModel& model,
                            std::span<const std::uint32_t> features) {
  const auto scores = class_scores(model, features);
  Prediction prediction;
  prediction.probabilities = softmax(scores);
  prediction.label = argmax_label(scores);
  return prediction;
}

Prediction predict_token(const LidModel& model, std::string_view token,
                         std::span<const std::string_view> left,
                         std::span<const std::string_view> right) {
  return predict_features(model,
                          extract_features(token, left, right, model.config()));
}

Prediction predict_token(const LidModel& model, std::string_view token,
                         std::string_view left, std::string_view right) {
  std::span<const std::string_view> l(&left, left.empty() ? 0 : 1);
  std::span<const std::string_view> r(&right, right.empty() ? 0 : 1);
  return predict_token(model, token, l, r);
}

TokenizedSentence predict_sentence(const LidModel& model,
                                   TokenizedSentence sentence) {
  std::vector<std::string_view> texts;
  texts.reserve(sentence.tokens.size());
  for (const Token& token : sentence.tokens) texts.push_back(token.text);
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    Token& token = sentence.tokens[i];
    if (token.kind != TokenKind::kWord) {
      token.label = Label::kOther;
      token.confidence = 1.0;
      continue;
    }
    const Prediction p = predict_features(
        model, sentence_token_features(texts, i, model.config()));
    token.label = p.label;
    token.confidence = p.confidence();
  }
  return sentence;
}

LossGradient loss_and_gradient(const DenseParameters& params,
                               std::span<const Example> batch, double l2) {
  if (batch.empty()) throw InvalidArgument("loss_and_gradient: empty batch");
  std::map<std::uint32_t, std::array<double, kNumLabels>> rows;
  LossGradient out;
  for (const Example& example : batch) {
    const ExampleGradient eg = example_gradient(params, example);
    out.loss += eg.loss;
    for (std::size_t k = 0; k < kNumLabels; ++k) out.bias[k] += eg.bias[k];
    for (const auto& [row, g] : eg.rows) {
      auto& acc = rows[row];
      for (std::size_t k = 0; k < kNumLabels; ++k) acc[k] += g[k];
    }
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  out.loss *= scale;
  for (double& b : out.bias) b *= scale;
  out.rows.reserve(rows.size());
  for (auto& [row, g] : rows) {
    for (std::size_t k = 0; k < kNumLabels; ++k) {
      const double w = params.weight(row, k);
      g[k] = g[k] * scale + l2 * w;
      out.loss += 0.5 * l2 * w * w;
    }
    out.rows.emplace_back(row, g);
  }
  return out;
}

LossGradient loss_and_gradient(const LidModel& model,
                               std::span<const Example> batch, double l2) {
  return loss_and_gradient(model.to_dense(), batch, l2);
}

double mean_loss(const DenseParameters& params,
                 std::span<const Example> examples) {
  if (examples.empty()) return 0.0;
  double sum = 0.0;
  for (const Example& example : examples) {
    const auto probs = softmax(class_scores(params, example.features));
    sum += -std::log(probs[index_of(example.label)]);
  }
  return sum / static_cast<double>(examples.size());
}

std::vector<Example> make_examples(const LabeledCorpus& corpus,
                                   const FeatureConfig& config) {
  std::vector<Example> examples;
  std::vector<std::string_view> texts;
  for (const LabeledSentence& sentence : corpus) {
    texts.clear();
    for (const LabeledToken& token : sentence.tokens) texts.push_back(token.text);
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      if (token_kind(texts[i]) != TokenKind::kWord) continue;
      examples.push_back(
          {sentence_token_features(texts, i, config), sentence.tokens[i].label});
    }
  }
  return examples;
}

namespace {

// Returns the pre-update loss.
double apply_step(DenseParameters& params, const Example& example,
                  double learning_rate, double l2) {
  const ExampleGradient eg = example_gradient(params, example);
  for (const auto& [row, g] : eg.rows) {
    for (std::size_t k = 0; k < kNumLabels; ++k) {
      double& w = params.weight(row, k);
      w -= learning_rate * (g[k] * 1.0 + l2 * w);
    }
  }
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    params.bias[k] -= learning_rate * (eg.bias[k]);
  }
  return eg.loss;
}

}  // namespace

void sgd_step(DenseParameters& params, const Example& example,
              double learning_rate, double l2) {
  apply_step(params, example, learning_rate, l2);
}

LidModel train(const LabeledCorpus& corpus, const FeatureConfig& config,
               const TrainParams& params, TrainReport* report) {
  config.validate();
  params.validate();
  const std::vector<Example> examples = make_examples(corpus, config);
  if (examples.empty()) throw EmptyCorpus();

  DenseParameters dense(config.hash_dim);
  TrainReport local;
  local.initial_loss = mean_loss(dense, examples);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(params.seed);
  const double total_steps =
      static_cast<double>(params.epochs) * static_cast<double>(examples.size());
  std::size_t step = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t idx : order) {
      const double lr =
          params.learning_rate * (1.0 - static_cast<double>(step) / total_steps);
      epoch_loss += apply_step(dense, examples[idx], lr, params.l2);
      ++step;
    }
    local.epoch_losses.push_back(epoch_loss /
                                 static_cast<double>(examples.size()));
  }
  local.final_loss = mean_loss(dense, examples);

  LidModel model(config, dense);
  model.set_metadata({corpus.size(), examples.size(), params.epochs, params.seed});
  if (report != nullptr) *report = std::move(local);
  return model;
}

std::string serialize_model(const LidModel& model) {
  const FeatureConfig& config = model.config();
  BlobWriter w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u16(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(config.ngram_min));
  w.u8(static_cast<std::uint8_t>(config.ngram_max));
  w.u32(config.hash_dim);
  w.u8(config.use_word_feature ? kFlagWordFeature : 0);
  w.u8(static_cast<std::uint8_t>(config.context_window));
  w.u8(static_cast<std::uint8_t>(kNumLabels));
  for (Label label : kAllLabels) {
    std::string_view name = label_name(label);
    w.bytes(name.data(), name.size());
    w.u8(0);
  }
  for (float b : model.bias()) w.f32(b);
  for (float x : model.weights()) w.f32(x);
  w.u32(crc32_of(w.str()));
  return std::move(w.str());
}

LidModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < sizeof(kMagic) + 2 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatVersionMismatch("not a CMLM model file (bad magic)");
  }
  BlobReader header(bytes.substr(sizeof(kMagic)));
  const std::uint16_t version = header.u16();
  if (version != kFormatVersion) {
    throw FormatVersionMismatch("unsupported model format version " +
                                std::to_string(version));
  }
  if (bytes.size() < sizeof(kMagic) + 2 + 4) {
    throw ChecksumMismatch("model file too short for checksum");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  BlobReader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.u32() != crc32_of(body)) {
    throw ChecksumMismatch("model checksum mismatch (truncated or corrupt)");
  }

  BlobReader r(body.substr(sizeof(kMagic) + 2));
  FeatureConfig config;
  config.ngram_min = r.u8();
  config.ngram_max = r.u8();
  config.hash_dim = r.u32();
  const std::uint8_t flags = r.u8();
  config.use_word_feature = (flags & kFlagWordFeature) != 0;
  config.context_window = r.u8();
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("model header: ") + e.what());
  }
  const std::uint8_t label_count = r.u8();
  if (label_count != kNumLabels) throw FormatError("unexpected label count");
  for (Label label : kAllLabels) {
    if (r.cstring() != label_name(label)) {
      throw FormatError("unexpected label set in model file");
    }
  }
  const std::size_t expected =
      (kNumLabels + static_cast<std::size_t>(config.hash_dim) * kNumLabels) * 4;
  if (r.remaining() != expected) throw FormatError("model payload size mismatch");

  LidModel model(config);
  for (float& b : model.mutable_bias()) b = r.f32();
  for (float& x : model.mutable_weights()) x = r.f32();
  for (float x : model.weights()) {
    if (!std::isfinite(x)) throw FormatError("non-finite weight in model file");
  }
  return model;
}

void save_model(const LidModel& model, const std::string& path) {
  write_file_atomic(path, serialize_model(model));
}

LidModel load_model(const std::string& path) {
  return deserialize_model(read_file(path));
}

}  // namespace codemix
