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

#include "codemix/metrics.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "codemix/error.h"

namespace codemix {

namespace {

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string lower_name(Label label) {
  std::string name(label_name(label));
  for (char& c : name) c = static_cast<char>(c - 'A' + 'a');
  return name;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double cmi_from_counts(std::size_t max_language_count,
                       std::size_t language_tokens) {
  if (language_tokens == 0) return 0.0;
  return 100.0 * (1.0 - static_cast<double>(max_language_count) /
                            static_cast<double>(language_tokens));
}

double cmi_sentence(std::span<const Label> labels) {
  std::array<std::size_t, kNumLabels> counts{};
  for (Label label : labels) ++counts[index_of(label)];
  const std::size_t en = counts[index_of(Label::kEn)];
  const std::size_t hi = counts[index_of(Label::kHi)];
  return cmi_from_counts(std::max(en, hi), en + hi);
}

void CmiAccumulator::add(std::span<const Label> labels) {
  std::size_t en = 0;
  std::size_t hi = 0;
  for (Label label : labels) {
    if (label == Label::kEn) ++en;
    if (label == Label::kHi) ++hi;
  }
  const std::size_t language = en + hi;
  if (mode_ == OtherMode::kExclude && language == 0) {
    ++skipped_;
    return;
  }
  ++buckets_[{std::max(en, hi), language}];
}

void CmiAccumulator::add(const LabeledSentence& sentence) {
  std::vector<Label> labels;
  labels.reserve(sentence.tokens.size());
  for (const LabeledToken& token : sentence.tokens) labels.push_back(token.label);
  add(labels);
}

void CmiAccumulator::merge(const CmiAccumulator& other) {
  if (other.mode_ != mode_) {
    throw InvalidArgument("cannot merge CMI folds with different modes");
  }
  skipped_ += other.skipped_;
  for (const auto& [key, count] : other.buckets_) buckets_[key] += count;
}

CmiReport CmiAccumulator::report() const {
  CmiReport report;
  report.skipped = skipped_;
  double sum = 0.0;
  std::size_t monolingual = 0;
  for (const auto& [key, count] : buckets_) {
    const auto [max_count, language] = key;
    report.sentence_count += count;
    sum += static_cast<double>(count) * cmi_from_counts(max_count, language);
    if (language == 0 || max_count == language) monolingual += count;
    // Bin from exact integers: floor(10 * (language - max) / language).
    std::size_t bin =
        language == 0 ? 0 : (10 * (language - max_count)) / language;
    report.histogram[std::min<std::size_t>(bin, 9)] += count;
  }
  report.empty = report.sentence_count == 0;
  if (!report.empty) {
    report.mean_cmi = sum / static_cast<double>(report.sentence_count);
    report.monolingual_fraction = ratio(monolingual, report.sentence_count);
  }
  return report;
}

CmiReport cmi_corpus(const LabeledCorpus& corpus, OtherMode mode) {
  CmiAccumulator acc(mode);
  for (const LabeledSentence& sentence : corpus) acc.add(sentence);
  return acc.report();
}

void CorpusStats::add(const LabeledSentence& sentence) {
  ++sentences;
  tokens += sentence.tokens.size();
  for (const LabeledToken& token : sentence.tokens) {
    ++label_tokens[index_of(token.label)];
  }
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  sentences += other.sentences;
  tokens += other.tokens;
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    label_tokens[k] += other.label_tokens[k];
  }
  return *this;
}

CorpusStats corpus_stats(const LabeledCorpus& corpus) {
  CorpusStats stats;
  for (const LabeledSentence& sentence : corpus) stats.add(sentence);
  return stats;
}

EvalReport eval_from_confusion(
    const std::array<std::array<std::size_t, kNumLabels>, kNumLabels>& confusion) {
  EvalReport report;
  report.confusion = confusion;
  std::size_t correct = 0;
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    correct += confusion[g][g];
    for (std::size_t p = 0; p < kNumLabels; ++p) {
      report.token_count += confusion[g][p];
    }
  }
  report.accuracy = ratio(correct, report.token_count);
  double macro = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    std::size_t predicted = 0;
    std::size_t gold = 0;
    for (std::size_t j = 0; j < kNumLabels; ++j) {
      predicted += confusion[j][k];
      gold += confusion[k][j];
    }
    LabelScores& s = report.per_label[k];
    s.support = gold;
    s.precision = ratio(confusion[k][k], predicted);
    s.recall = ratio(confusion[k][k], gold);
    const double denom = s.precision + s.recall;
    s.f1 = denom > 0.0 ? 2.0 * s.precision * s.recall / denom : 0.0;
    macro += s.f1;
    weighted += s.f1 * static_cast<double>(gold);
  }
  report.macro_f1 = macro / static_cast<double>(kNumLabels);
  report.weighted_f1 =
      report.token_count == 0 ? 0.0
                              : weighted / static_cast<double>(report.token_count);
  return report;
}

EvalReport evaluate_labels(std::span<const Label> gold,
                           std::span<const Label> predicted) {
  if (gold.size() != predicted.size()) throw AlignmentMismatch("<labels>");
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++confusion[index_of(gold[i])][index_of(predicted[i])];
  }
  return eval_from_confusion(confusion);
}

EvalReport evaluate_lid(const LabeledCorpus& gold,
                        const LabeledCorpus& predicted) {
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};
  const std::size_t n = std::min(gold.size(), predicted.size());
  for (std::size_t s = 0; s < n; ++s) {
    const LabeledSentence& g = gold[s];
    const LabeledSentence& p = predicted[s];
    if (g.tokens.size() != p.tokens.size()) throw AlignmentMismatch(g.id);
    for (std::size_t t = 0; t < g.tokens.size(); ++t) {
      if (g.tokens[t].text != p.tokens[t].text) throw AlignmentMismatch(g.id);
      ++confusion[index_of(g.tokens[t].label)][index_of(p.tokens[t].label)];
    }
  }
  if (gold.size() != predicted.size()) {
    throw AlignmentMismatch(gold.size() > n ? gold[n].id : predicted[n].id);
  }
  return eval_from_confusion(confusion);
}

std::string format_cmi_report(const CmiReport& report) {
  std::string out;
  out += "sentences=" + std::to_string(report.sentence_count) + "\n";
  out += "skipped=" + std::to_string(report.skipped) + "\n";
  out += "empty=" + std::string(report.empty ? "1" : "0") + "\n";
  out += "mean_cmi=" + fixed4(report.mean_cmi) + "\n";
  out += "monolingual_fraction=" + fixed4(report.monolingual_fraction) + "\n";
  for (std::size_t b = 0; b < report.histogram.size(); ++b) {
    char key[32];
    std::snprintf(key, sizeof(key), "hist_%02zu_%02zu", b * 10, b * 10 + 10);
    // Last bin is closed: [90, 100].
    out += std::string(key) + "=" + std::to_string(report.histogram[b]) + "\n";
  }
  return out;
}

std::string format_corpus_stats(const CorpusStats& stats) {
  std::string out;
  out += "sentences=" + std::to_string(stats.sentences) + "\n";
  out += "tokens=" + std::to_string(stats.tokens) + "\n";
  for (Label label : kAllLabels) {
    out += "tokens_" + lower_name(label) + "=" +
           std::to_string(stats.label_tokens[index_of(label)]) + "\n";
  }
  out += "mean_tokens_per_sentence=" + fixed4(stats.mean_tokens_per_sentence()) +
         "\n";
  return out;
}

std::string format_eval_report(const EvalReport& report) {
  std::string out;
  out += "tokens=" + std::to_string(report.token_count) + "\n";
  out += "accuracy=" + fixed4(report.accuracy) + "\n";
  for (Label label : kAllLabels) {
    const LabelScores& s = report.per_label[index_of(label)];
    const std::string name = lower_name(label);
    out += "precision_" + name + "=" + fixed4(s.precision) + "\n";
    out += "recall_" + name + "=" + fixed4(s.recall) + "\n";
    out += "f1_" + name + "=" + fixed4(s.f1) + "\n";
    out += "support_" + name + "=" + std::to_string(s.support) + "\n";
  }
  out += "macro_f1=" + fixed4(report.macro_f1) + "\n";
  out += "weighted_f1=" + fixed4(report.weighted_f1) + "\n";
  for (Label g : kAllLabels) {
    for (Label p : kAllLabels) {
      out += "confusion_" + lower_name(g) + "_" + lower_name(p) + "=" +
             std::to_string(report.confusion[index_of(g)][index_of(p)]) + "\n";
    }
  }
  return out;
}

std::string format_eval_table(const EvalReport& report,
                              const std::string& model_name) {
  std::string out = "Model\tAccuracy\tMacro-F1\tWeighted-F1\n";
  out += model_name + "\t" + fixed2(100.0 * report.accuracy) + "\t" +
         fixed2(100.0 * report.macro_f1) + "\t" +
         fixed2(100.0 * report.weighted_f1) + "\n";
  return out;
}

}  // namespace codemix
