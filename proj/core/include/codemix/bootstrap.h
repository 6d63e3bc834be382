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

#ifndef CODEMIX_BOOTSTRAP_H_
#define CODEMIX_BOOTSTRAP_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "codemix/conll.h"
#include "codemix/labels.h"
#include "codemix/lid_model.h"
#include "codemix/normalize.h"
#include "codemix/tokenize.h"

namespace codemix {

enum class ReviewStatus { kPending, kCorrected, kConfirmed };

std::string_view review_status_name(ReviewStatus status);
std::optional<ReviewStatus> parse_review_status(std::string_view name);

struct ReviewItem {
  std::string sentence_id;
  std::size_t token_index = 0;
  std::string token_text;
  Label predicted = Label::kEn;
  double confidence = 0.0;
  std::optional<Label> corrected;
  ReviewStatus status = ReviewStatus::kPending;

  // The label that merge_corrections will write for this token.
  Label resolved_label() const { return corrected.value_or(predicted); }
};

// An unlabeled sentence waiting to be pseudo-labeled.
struct PoolSentence {
  std::string id;
  TokenizedSentence sentence;
};

// Normalizes and tokenizes raw lines; lines that normalize to nothing are
// dropped. Ids are id_prefix + zero-based line ordinal.
std::vector<PoolSentence> prepare_pool(std::span<const std::string> lines,
                                       const NormalizePolicy& policy,
                                       const std::string& id_prefix);

struct PseudoLabelResult {
  LabeledCorpus accepted;   // every Word token at or above threshold
  LabeledCorpus held_back;  // at least one token below threshold
  std::vector<ReviewItem> queue;
};

// Throws InvalidArgument unless 0 < threshold <= 1.
PseudoLabelResult pseudo_label(const LidModel& model,
                               std::span<const PoolSentence> pool,
                               double threshold);

// Applies resolved review items to the held-back sentences. Corrected
// items overwrite the prediction, Confirmed items keep it; both get
// confidence 1. Throws PendingItemsRemain if any item is still Pending.
LabeledCorpus merge_corrections(const LabeledCorpus& held_back,
                                std::span<const ReviewItem> queue);

struct RoundRecord {
  int iteration = 0;
  std::size_t train_sentences = 0;
  std::size_t accepted_added = 0;
  std::size_t held_back = 0;
  std::size_t queued = 0;
  std::optional<double> valid_accuracy;
};

struct BootstrapState {
  int iteration = 0;
  double threshold = 0.9;
  LabeledCorpus seed_set;  // gold, never modified
  LabeledCorpus accepted;  // confident pseudo-labels
  LabeledCorpus reviewed;  // held-back sentences after human review
  LabeledCorpus held_back; // awaiting review ("pseudo-labeled pool")
  std::vector<ReviewItem> queue;
  std::string model_path;  // relative to the state directory
  std::optional<std::string> validation_path;
  std::vector<RoundRecord> history;

  std::size_t pending_count() const;
};

struct RoundResult {
  BootstrapState state;
  LidModel model;
};

// One self-training round: merge the resolved queue into the reviewed pool,
// retrain on seed_set + accepted + reviewed, then pseudo-label pool with the
// new model. Pool ids must not collide with ids already in the state.
// validation, when given, is scored into the round record.
RoundResult bootstrap_round(const BootstrapState& state,
                            std::span<const PoolSentence> pool,
                            const FeatureConfig& feature_config,
                            const TrainParams& train_params,
                            const LabeledCorpus* validation = nullptr);

// Token accuracy of model predictions against a gold corpus.
double heldout_accuracy(const LidModel& model, const LabeledCorpus& gold);

struct KeywordCandidate {
  std::string word;
  std::size_t count = 0;
  friend bool operator==(const KeywordCandidate&,
                         const KeywordCandidate&) = default;
};

// HI-labeled word types (ASCII-lowercased) seen at least min_freq times
// and absent from known_vocab; highest count first, ties alphabetical.
std::vector<KeywordCandidate> propose_keywords(
    const LabeledCorpus& corpus,
    const std::unordered_set<std::string>& known_vocab, std::size_t min_freq);

// Review queue TSV. Header:
//   sentence_id token_index token_text predicted confidence corrected status
// (tab separated); confidence has six decimals; corrected is empty while
// unset.
void write_queue_tsv(std::ostream& out, std::span<const ReviewItem> queue);
std::vector<ReviewItem> read_queue_tsv(std::istream& in);

// State directory layout:
//   state.json      manifest (format_version, iteration, threshold, model,
//                   validation, history and the file names below)
//   seed.conll  accepted.conll  reviewed.conll  held_back.conll  queue.tsv
//   model-v<N>.bin
// Every file is replaced atomically (temporary file + rename).
inline constexpr char kStateManifest[] = "state.json";
inline constexpr char kQueueFile[] = "queue.tsv";

void save_state(const std::filesystem::path& dir, const BootstrapState& state);
BootstrapState load_state(const std::filesystem::path& dir);
void save_queue(const std::filesystem::path& dir,
                std::span<const ReviewItem> queue);

}  // namespace codemix

#endif  // CODEMIX_BOOTSTRAP_H_
