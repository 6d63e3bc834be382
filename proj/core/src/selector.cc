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

#include "codemix/selector.h"

#include <cmath>
#include <thread>

#include "json.hpp"

#include "codemix/error.h"

namespace codemix {

void FilterConfig::validate() const {
  if (min_hi < 1 || min_en < 1) {
    throw InvalidArgument("min_hi and min_en must be >= 1");
  }
}

FilterDecision classify_sentence(std::span<const Token> tokens,
                                 const FilterConfig& config) {
  FilterDecision decision;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& token = tokens[i];
    if (!token.label) throw UnlabeledToken(i);
    if (token.kind != TokenKind::kWord) {
      ++decision.other_count;
      continue;
    }
    switch (*token.label) {
      case Label::kEn:
        ++decision.en_count;
        break;
      case Label::kHi:
        ++decision.hi_count;
        break;
      case Label::kOther:
        ++decision.other_count;
        break;
    }
  }
  decision.accepted =
      decision.hi_count >= static_cast<std::size_t>(config.min_hi) &&
      decision.en_count >= static_cast<std::size_t>(config.min_en);
  return decision;
}

LineVerdict filter_line(const LidModel& model, std::string_view line,
                        const NormalizePolicy& policy,
                        const FilterConfig& config) {
  LineVerdict result;
  auto normalized = normalize_sentence(line, policy);
  if (!normalized) return result;
  const TokenizedSentence labeled = predict_sentence(model, tokenize(*normalized));
  const FilterDecision decision = classify_sentence(labeled.tokens, config);
  if (decision.accepted) {
    result.verdict = FilterVerdict::kAccepted;
  } else if (decision.hi_count < static_cast<std::size_t>(config.min_hi)) {
    result.verdict = FilterVerdict::kLowHi;
  } else {
    result.verdict = FilterVerdict::kLowEn;
  }
  result.normalized = std::move(*normalized);
  return result;
}

namespace {

constexpr std::size_t kBatchLines = 4096;

void run_batch(const LidModel& model, const std::vector<std::string>& lines,
               std::vector<LineVerdict>& verdicts, const NormalizePolicy& policy,
               const FilterConfig& config, int threads) {
  verdicts.assign(lines.size(), {});
  const auto workers = static_cast<std::size_t>(threads > 1 ? threads : 1);
  if (workers == 1 || lines.size() < 2) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      verdicts[i] = filter_line(model, lines[i], policy, config);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < lines.size(); i += workers) {
          verdicts[i] = filter_line(model, lines[i], policy, config);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace

FilterStats filter_corpus(const LidModel& model, std::istream& in,
                          std::ostream& out, const NormalizePolicy& policy,
                          const FilterConfig& config, int threads) {
  config.validate();
  FilterStats stats;
  SentenceReader reader(in);
  std::vector<std::string> batch;
  std::vector<LineVerdict> verdicts;
  std::string line;

  auto drain = [&] {
    run_batch(model, batch, verdicts, policy, config, threads);
    for (const LineVerdict& v : verdicts) {
      ++stats.total;
      switch (v.verdict) {
        case FilterVerdict::kAccepted:
          ++stats.accepted;
          out << v.normalized << '\n';
          break;
        case FilterVerdict::kLowHi:
          ++stats.rejected_low_hi;
          break;
        case FilterVerdict::kLowEn:
          ++stats.rejected_low_en;
          break;
        case FilterVerdict::kEmpty:
          ++stats.rejected_empty;
          break;
      }
    }
    if (!out) throw IoError("write failed after " + std::to_string(stats.total) +
                            " sentences");
    batch.clear();
  };

  while (reader.next(line)) {
    batch.push_back(line);
    if (batch.size() == kBatchLines) drain();
  }
  if (!batch.empty()) drain();
  stats.errors = reader.errors();
  stats.invalid_utf8 = stats.errors.size();
  return stats;
}

std::string format_filter_stats(const FilterStats& stats) {
  nlohmann::ordered_json j;
  j["total"] = stats.total;
  j["accepted"] = stats.accepted;
  j["rejected_low_hi"] = stats.rejected_low_hi;
  j["rejected_low_en"] = stats.rejected_low_en;
  j["rejected_empty"] = stats.rejected_empty;
  j["invalid_utf8"] = stats.invalid_utf8;
  j["acceptance_rate"] = std::round(stats.acceptance_rate() * 1e4) / 1e4;
  return j.dump(2) + "\n";
}

}  // namespace codemix
