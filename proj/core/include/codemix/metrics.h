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

#ifndef CODEMIX_METRICS_H_
#define CODEMIX_METRICS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "codemix/conll.h"
#include "codemix/labels.h"

namespace codemix {

// Code-mixing index of one sentence: 100 * (1 - max(w_EN, w_HI) / (n - u)),
// with u the OTHER count, and 0 when n == u.
double cmi_sentence(std::span<const Label> labels);
double cmi_from_counts(std::size_t max_language_count,
                       std::size_t language_tokens);

enum class OtherMode {
  // OTHER tokens are language independent (u); sentences with no language
  // token contribute CMI 0 to the corpus mean.
  kIndependent,
  // OTHER tokens are dropped entirely; sentences left without any language
  // token are excluded from the corpus aggregate.
  kExclude,
};

struct CmiReport {
  std::size_t sentence_count = 0;  // sentences in the aggregate
  std::size_t skipped = 0;         // excluded under OtherMode::kExclude
  double mean_cmi = 0.0;
  std::array<std::size_t, 10> histogram{};  // [0,10), ..., [90,100]
  double monolingual_fraction = 0.0;
  bool empty = true;
};

// Mergeable CMI fold. State is integer counts keyed by (max w_i, n - u), so
// merging shards in any grouping gives the serial result exactly.
class CmiAccumulator {
 public:
  explicit CmiAccumulator(OtherMode mode = OtherMode::kIndependent)
      : mode_(mode) {}

  void add(std::span<const Label> labels);
  void add(const LabeledSentence& sentence);
  void merge(const CmiAccumulator& other);
  CmiReport report() const;

 private:
  OtherMode mode_;
  std::size_t skipped_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> buckets_;
};

CmiReport cmi_corpus(const LabeledCorpus& corpus,
                     OtherMode mode = OtherMode::kIndependent);

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::array<std::size_t, kNumLabels> label_tokens{};

  double mean_tokens_per_sentence() const {
    return sentences == 0 ? 0.0 : static_cast<double>(tokens) / sentences;
  }
  void add(const LabeledSentence& sentence);
  CorpusStats& operator+=(const CorpusStats& other);
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const LabeledCorpus& corpus);

struct LabelScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

struct EvalReport {
  std::size_t token_count = 0;
  double accuracy = 0.0;
  std::array<LabelScores, kNumLabels> per_label{};
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  // confusion[gold][predicted]
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};
};

EvalReport eval_from_confusion(
    const std::array<std::array<std::size_t, kNumLabels>, kNumLabels>& confusion);

// Token-level comparison. Both corpora must have the same sentences with the
// same token texts; otherwise AlignmentMismatch names the first offender.
EvalReport evaluate_lid(const LabeledCorpus& gold,
                        const LabeledCorpus& predicted);
EvalReport evaluate_labels(std::span<const Label> gold,
                           std::span<const Label> predicted);

// "key=value" lines; reals use four decimals.
std::string format_cmi_report(const CmiReport& report);
std::string format_corpus_stats(const CorpusStats& stats);
std::string format_eval_report(const EvalReport& report);
// Results-table row: header plus one row of percentages with two decimals.
std::string format_eval_table(const EvalReport& report,
                              const std::string& model_name);

}  // namespace codemix

#endif  // CODEMIX_METRICS_H_
