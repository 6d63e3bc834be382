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

#include "codemix/bootstrap.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "codemix/corpus_io.h"
#include "codemix/error.h"
#include "codemix/metrics.h"

namespace codemix {

namespace {

constexpr int kStateFormatVersion = 1;
constexpr char kSeedFile[] = "seed.conll";
constexpr char kAcceptedFile[] = "accepted.conll";
constexpr char kReviewedFile[] = "reviewed.conll";
constexpr char kHeldBackFile[] = "held_back.conll";
constexpr char kQueueHeader[] =
    "sentence_id\ttoken_index\ttoken_text\tpredicted\tconfidence\tcorrected\t"
    "status";

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold must be in (0, 1]");
  }
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string_view review_status_name(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kPending:
      return "Pending";
    case ReviewStatus::kCorrected:
      return "Corrected";
    case ReviewStatus::kConfirmed:
      return "Confirmed";
  }
  return "Pending";
}

std::optional<ReviewStatus> parse_review_status(std::string_view name) {
  if (name == "Pending") return ReviewStatus::kPending;
  if (name == "Corrected") return ReviewStatus::kCorrected;
  if (name == "Confirmed") return ReviewStatus::kConfirmed;
  return std::nullopt;
}

std::vector<PoolSentence> prepare_pool(std::span<const std::string> lines,
                                       const NormalizePolicy& policy,
                                       const std::string& id_prefix) {
  std::vector<PoolSentence> pool;
  pool.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto normalized = normalize_sentence(lines[i], policy);
    if (!normalized) continue;
    pool.push_back({id_prefix + std::to_string(i), tokenize(*normalized)});
  }
  return pool;
}

PseudoLabelResult pseudo_label(const LidModel& model,
                               std::span<const PoolSentence> pool,
                               double threshold) {
  check_threshold(threshold);
  PseudoLabelResult result;
  for (const PoolSentence& entry : pool) {
    const TokenizedSentence labeled = predict_sentence(model, entry.sentence);
    std::vector<ReviewItem> items;
    for (std::size_t i = 0; i < labeled.tokens.size(); ++i) {
      const Token& token = labeled.tokens[i];
      if (token.kind != TokenKind::kWord) continue;
      const double confidence = token.confidence.value_or(0.0);
      if (confidence >= threshold) continue;
      ReviewItem item;
      item.sentence_id = entry.id;
      item.token_index = i;
      item.token_text = token.text;
      item.predicted = *token.label;
      item.confidence = confidence;
      items.push_back(std::move(item));
    }
    LabeledSentence sentence = to_labeled(labeled, entry.id);
    if (items.empty()) {
      result.accepted.push_back(std::move(sentence));
    } else {
      result.held_back.push_back(std::move(sentence));
      for (ReviewItem& item : items) result.queue.push_back(std::move(item));
    }
  }
  return result;
}

LabeledCorpus merge_corrections(const LabeledCorpus& held_back,
                                std::span<const ReviewItem> queue) {
  const auto pending = static_cast<std::size_t>(
      std::count_if(queue.begin(), queue.end(), [](const ReviewItem& item) {
        return item.status == ReviewStatus::kPending;
      }));
  if (pending > 0) throw PendingItemsRemain(pending);

  LabeledCorpus merged = held_back;
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t s = 0; s < merged.size(); ++s) by_id[merged[s].id] = s;
  for (const ReviewItem& item : queue) {
    auto it = by_id.find(item.sentence_id);
    if (it == by_id.end()) {
      throw CorruptState("review item for unknown sentence " + item.sentence_id);
    }
    LabeledSentence& sentence = merged[it->second];
    if (item.token_index >= sentence.tokens.size() ||
        sentence.tokens[item.token_index].text != item.token_text) {
      throw CorruptState("review item does not match sentence " +
                         item.sentence_id);
    }
    LabeledToken& token = sentence.tokens[item.token_index];
    token.label = item.resolved_label();
    token.confidence = 1.0;
  }
  return merged;
}

std::size_t BootstrapState::pending_count() const {
  return static_cast<std::size_t>(
      std::count_if(queue.begin(), queue.end(), [](const ReviewItem& item) {
        return item.status == ReviewStatus::kPending;
      }));
}

double heldout_accuracy(const LidModel& model, const LabeledCorpus& gold) {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const LabeledSentence& sentence : gold) {
    const TokenizedSentence predicted =
        predict_sentence(model, to_tokenized(sentence));
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      ++total;
      if (predicted.tokens[i].label == sentence.tokens[i].label) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

RoundResult bootstrap_round(const BootstrapState& state,
                            std::span<const PoolSentence> pool,
                            const FeatureConfig& feature_config,
                            const TrainParams& train_params,
                            const LabeledCorpus* validation) {
  check_threshold(state.threshold);
  BootstrapState next = state;

  LabeledCorpus merged = merge_corrections(next.held_back, next.queue);
  for (LabeledSentence& sentence : merged) {
    next.reviewed.push_back(std::move(sentence));
  }
  next.held_back.clear();
  next.queue.clear();

  LabeledCorpus training = next.seed_set;
  training.insert(training.end(), next.accepted.begin(), next.accepted.end());
  training.insert(training.end(), next.reviewed.begin(), next.reviewed.end());
  LidModel model = train(training, feature_config, train_params);

  std::unordered_map<std::string, int> ids;
  for (const LabeledCorpus* c : {&next.seed_set, &next.accepted, &next.reviewed}) {
    for (const LabeledSentence& sentence : *c) ids[sentence.id] = 0;
  }
  for (const PoolSentence& entry : pool) {
    if (!ids.emplace(entry.id, 1).second) {
      throw InvalidArgument("pool sentence id already in use: " + entry.id);
    }
  }

  PseudoLabelResult pseudo = pseudo_label(model, pool, next.threshold);
  RoundRecord record;
  record.iteration = next.iteration + 1;
  record.train_sentences = training.size();
  record.accepted_added = pseudo.accepted.size();
  record.held_back = pseudo.held_back.size();
  record.queued = pseudo.queue.size();
  for (LabeledSentence& sentence : pseudo.accepted) {
    next.accepted.push_back(std::move(sentence));
  }
  next.held_back = std::move(pseudo.held_back);
  next.queue = std::move(pseudo.queue);
  if (validation != nullptr) {
    record.valid_accuracy = heldout_accuracy(model, *validation);
  }

  next.iteration = record.iteration;
  next.model_path = "model-v" + std::to_string(next.iteration) + ".bin";
  next.history.push_back(record);
  return {std::move(next), std::move(model)};
}

std::vector<KeywordCandidate> propose_keywords(
    const LabeledCorpus& corpus,
    const std::unordered_set<std::string>& known_vocab, std::size_t min_freq) {
  if (min_freq < 1) throw InvalidArgument("min_freq must be >= 1");
  std::map<std::string, std::size_t> counts;
  for (const LabeledSentence& sentence : corpus) {
    for (const LabeledToken& token : sentence.tokens) {
      if (token.label != Label::kHi) continue;
      if (token_kind(token.text) != TokenKind::kWord) continue;
      ++counts[ascii_lower(token.text)];
    }
  }
  std::vector<KeywordCandidate> out;
  for (const auto& [word, count] : counts) {
    if (count < min_freq || known_vocab.count(word) > 0) continue;
    out.push_back({word, count});
  }
  // counts is ordered, so stability gives the alphabetical tie-break.
  std::stable_sort(out.begin(), out.end(),
                   [](const KeywordCandidate& a, const KeywordCandidate& b) {
                     return a.count > b.count;
                   });
  return out;
}

void write_queue_tsv(std::ostream& out, std::span<const ReviewItem> queue) {
  out << kQueueHeader << '\n';
  char conf[32];
  for (const ReviewItem& item : queue) {
    std::snprintf(conf, sizeof(conf), "%.6f", item.confidence);
    out << item.sentence_id << '\t' << item.token_index << '\t'
        << item.token_text << '\t' << label_name(item.predicted) << '\t' << conf
        << '\t' << (item.corrected ? label_name(*item.corrected) : "") << '\t'
        << review_status_name(item.status) << '\n';
  }
}

std::vector<ReviewItem> read_queue_tsv(std::istream& in) {
  std::vector<ReviewItem> queue;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw FormatError("queue line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) return queue;
  ++line_no;
  if (line != kQueueHeader) fail("unexpected header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_tabs(line);
    if (f.size() != 7) fail("expected 7 tab-separated fields");
    ReviewItem item;
    item.sentence_id = f[0];
    try {
      std::size_t used = 0;
      item.token_index = std::stoul(f[1], &used);
      if (used != f[1].size()) fail("bad token_index");
      item.confidence = std::stod(f[4], &used);
      if (used != f[4].size()) fail("bad confidence");
    } catch (const std::logic_error&) {
      fail("bad numeric field");
    }
    item.token_text = f[2];
    auto predicted = parse_label(f[3]);
    if (!predicted) fail("bad predicted label '" + f[3] + "'");
    item.predicted = *predicted;
    if (!f[5].empty()) {
      auto corrected = parse_label(f[5]);
      if (!corrected) fail("bad corrected label '" + f[5] + "'");
      item.corrected = *corrected;
    }
    auto status = parse_review_status(f[6]);
    if (!status) fail("bad status '" + f[6] + "'");
    item.status = *status;
    if ((item.status == ReviewStatus::kCorrected) != item.corrected.has_value()) {
      fail("corrected label and status disagree");
    }
    queue.push_back(std::move(item));
  }
  return queue;
}

void save_queue(const std::filesystem::path& dir,
                std::span<const ReviewItem> queue) {
  std::ostringstream buf;
  write_queue_tsv(buf, queue);
  write_file_atomic(dir / kQueueFile, buf.str());
}

void save_state(const std::filesystem::path& dir, const BootstrapState& state) {
  std::filesystem::create_directories(dir);
  write_conll_file((dir / kSeedFile).string(), state.seed_set);
  write_conll_file((dir / kAcceptedFile).string(), state.accepted, true, true);
  write_conll_file((dir / kReviewedFile).string(), state.reviewed, true, true);
  write_conll_file((dir / kHeldBackFile).string(), state.held_back, true, true);
  save_queue(dir, state.queue);

  nlohmann::ordered_json j;
  j["format_version"] = kStateFormatVersion;
  j["iteration"] = state.iteration;
  j["threshold"] = state.threshold;
  j["model"] = state.model_path.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(state.model_path);
  j["validation"] = state.validation_path
                        ? nlohmann::ordered_json(*state.validation_path)
                        : nlohmann::ordered_json(nullptr);
  j["files"] = {{"seed_set", kSeedFile},
                {"accepted", kAcceptedFile},
                {"reviewed", kReviewedFile},
                {"held_back", kHeldBackFile},
                {"queue", kQueueFile}};
  nlohmann::ordered_json history = nlohmann::ordered_json::array();
  for (const RoundRecord& r : state.history) {
    nlohmann::ordered_json h;
    h["iteration"] = r.iteration;
    h["train_sentences"] = r.train_sentences;
    h["accepted_added"] = r.accepted_added;
    h["held_back"] = r.held_back;
    h["queued"] = r.queued;
    h["valid_accuracy"] = r.valid_accuracy ? nlohmann::ordered_json(*r.valid_accuracy)
                                           : nlohmann::ordered_json(nullptr);
    history.push_back(h);
  }
  j["history"] = history;
  write_file_atomic(dir / kStateManifest, j.dump(2) + "\n");
}

BootstrapState load_state(const std::filesystem::path& dir) {
  BootstrapState state;
  try {
    const nlohmann::json j = nlohmann::json::parse(read_file(dir / kStateManifest));
    if (j.at("format_version").get<int>() != kStateFormatVersion) {
      throw CorruptState("unsupported state format_version");
    }
    state.iteration = j.at("iteration").get<int>();
    state.threshold = j.at("threshold").get<double>();
    if (!j.at("model").is_null()) state.model_path = j.at("model").get<std::string>();
    if (j.contains("validation") && !j["validation"].is_null()) {
      state.validation_path = j["validation"].get<std::string>();
    }
    const auto& files = j.at("files");
    auto corpus = [&](const char* key) {
      return read_conll_file((dir / files.at(key).get<std::string>()).string());
    };
    state.seed_set = corpus("seed_set");
    state.accepted = corpus("accepted");
    state.reviewed = corpus("reviewed");
    state.held_back = corpus("held_back");
    std::istringstream queue(read_file(dir / files.at("queue").get<std::string>()));
    state.queue = read_queue_tsv(queue);
    for (const auto& h : j.at("history")) {
      RoundRecord r;
      r.iteration = h.at("iteration").get<int>();
      r.train_sentences = h.at("train_sentences").get<std::size_t>();
      r.accepted_added = h.at("accepted_added").get<std::size_t>();
      r.held_back = h.at("held_back").get<std::size_t>();
      r.queued = h.at("queued").get<std::size_t>();
      if (!h.at("valid_accuracy").is_null()) {
        r.valid_accuracy = h.at("valid_accuracy").get<double>();
      }
      state.history.push_back(r);
    }
  } catch (const CorruptState&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptState(std::string("state manifest: ") + e.what());
  } catch (const DataError& e) {
    throw CorruptState(std::string("state directory ") + dir.string() + ": " +
                       e.what());
  }
  return state;
}

}  // namespace codemix
