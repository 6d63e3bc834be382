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

#ifndef CODEMIX_SELECTOR_H_
#define CODEMIX_SELECTOR_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "codemix/corpus_io.h"
#include "codemix/lid_model.h"
#include "codemix/normalize.h"
#include "codemix/tokenize.h"

namespace codemix {

struct FilterConfig {
  int min_hi = 2;
  int min_en = 2;
  void validate() const;
};

struct FilterDecision {
  std::size_t hi_count = 0;
  std::size_t en_count = 0;
  std::size_t other_count = 0;
  bool accepted = false;
};

// Counts HI and EN over Word tokens; every other token adds to other_count.
// Throws UnlabeledToken if a token carries no label.
FilterDecision classify_sentence(std::span<const Token> tokens,
                                 const FilterConfig& config);

struct FilterStats {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t rejected_low_hi = 0;  // takes precedence when both are short
  std::size_t rejected_low_en = 0;
  std::size_t rejected_empty = 0;
  std::size_t invalid_utf8 = 0;     // not part of total
  std::vector<LineError> errors;

  double acceptance_rate() const {
    return total == 0 ? 0.0 : static_cast<double>(accepted) / total;
  }
};

enum class FilterVerdict { kAccepted, kLowHi, kLowEn, kEmpty };

struct LineVerdict {
  FilterVerdict verdict = FilterVerdict::kEmpty;
  std::string normalized;  // valid unless verdict == kEmpty
};

// normalize -> tokenize -> predict_sentence -> classify_sentence for one line.
LineVerdict filter_line(const LidModel& model, std::string_view line,
                        const NormalizePolicy& policy,
                        const FilterConfig& config);

// Streams lines from in, writing accepted normalized lines to out in input
// order. threads > 1 processes batches in parallel with identical output.
FilterStats filter_corpus(const LidModel& model, std::istream& in,
                          std::ostream& out, const NormalizePolicy& policy,
                          const FilterConfig& config, int threads = 1);

// JSON object with keys total, accepted, rejected_low_hi, rejected_low_en,
// rejected_empty, invalid_utf8, acceptance_rate (4 decimals).
std::string format_filter_stats(const FilterStats& stats);

}  // namespace codemix

#endif  // CODEMIX_SELECTOR_H_
