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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "codemix/error.h"
#include "synthetic.h"

namespace codemix {
namespace {

namespace fs = std::filesystem;

FeatureConfig small_config() {
  FeatureConfig c;
  c.hash_dim = 1u << 14;
  return c;
}

std::vector<PoolSentence> pool_from(const std::vector<synth::SyntheticSentence>& s,
                                    const std::string& prefix) {
  auto lines = synth::raw_lines(s);
  return prepare_pool(lines, NormalizePolicy{}, prefix);
}

class BootstrapTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    langs_ = new synth::SyntheticLanguages(5, 300);
    seed_ = new LabeledCorpus(synth::gold_corpus(langs_->corpus(1, 60)));
    model_ = new LidModel(train(*seed_, small_config(), TrainParams{}));
  }
  static void TearDownTestSuite() {
    delete model_;
    delete seed_;
    delete langs_;
  }
  static synth::SyntheticLanguages* langs_;
  static LabeledCorpus* seed_;
  static LidModel* model_;
};

synth::SyntheticLanguages* BootstrapTest::langs_ = nullptr;
LabeledCorpus* BootstrapTest::seed_ = nullptr;
LidModel* BootstrapTest::model_ = nullptr;

TEST_F(BootstrapTest, PseudoLabelPartitionsPool) {
  auto pool = pool_from(langs_->corpus(2, 200), "u");
  auto r = pseudo_label(*model_, pool, 0.9);
  EXPECT_EQ(r.accepted.size() + r.held_back.size(), pool.size());
  std::set<std::string> ids;
  for (const auto& s : r.accepted) ids.insert(s.id);
  for (const auto& s : r.held_back) ids.insert(s.id);
  EXPECT_EQ(ids.size(), pool.size());
  std::set<std::string> held;
  for (const auto& s : r.held_back) held.insert(s.id);
  for (const auto& item : r.queue) {
    EXPECT_TRUE(held.count(item.sentence_id));
    EXPECT_LT(item.confidence, 0.9);
    EXPECT_EQ(item.status, ReviewStatus::kPending);
  }
  for (const auto& s : r.accepted) {
    for (const auto& t : s.tokens) EXPECT_GE(*t.confidence, 0.9);
  }
  EXPECT_TRUE(pseudo_label(*model_, {}, 0.9).queue.empty());
}

TEST_F(BootstrapTest, ThresholdMonotonicity) {
  auto pool = pool_from(langs_->corpus(3, 200), "u");
  std::size_t prev_queue = 0, prev_accepted = pool.size() + 1;
  for (double t : {0.4, 0.6, 0.8, 0.9, 0.99, 1.0}) {
    auto r = pseudo_label(*model_, pool, t);
    EXPECT_GE(r.queue.size(), prev_queue) << t;
    EXPECT_LE(r.accepted.size(), prev_accepted) << t;
    prev_queue = r.queue.size();
    prev_accepted = r.accepted.size();
  }
  EXPECT_THROW(pseudo_label(*model_, pool, 0.0), InvalidArgument);
  EXPECT_THROW(pseudo_label(*model_, pool, 1.5), InvalidArgument);
}

TEST(Merge, CorrectionsConfirmationsAndPending) {
  LabeledCorpus held = {{"h1", {{"abc", Label::kEn, 0.6}, {"def", Label::kHi, 0.95}}}};
  ReviewItem item{"h1", 0, "abc", Label::kEn, 0.6, std::nullopt, ReviewStatus::kPending};
  std::vector<ReviewItem> queue = {item};
  try {
    merge_corrections(held, queue);
    FAIL() << "expected PendingItemsRemain";
  } catch (const PendingItemsRemain& e) {
    EXPECT_EQ(e.count(), 1u);
  }
  queue[0].status = ReviewStatus::kCorrected;
  queue[0].corrected = Label::kHi;
  auto merged = merge_corrections(held, queue);
  EXPECT_EQ(merged[0].tokens[0].label, Label::kHi);
  EXPECT_EQ(merged[0].tokens[1].label, Label::kHi);
  queue[0].status = ReviewStatus::kConfirmed;
  queue[0].corrected.reset();
  merged = merge_corrections(held, queue);
  EXPECT_EQ(merged[0].tokens[0].label, Label::kEn);
  queue[0].token_text = "zzz";
  EXPECT_THROW(merge_corrections(held, queue), CorruptState);
}

TEST_F(BootstrapTest, RoundsAreDeterministicAndKeepSeed) {
  BootstrapState state;
  state.seed_set = *seed_;
  auto pool = pool_from(langs_->corpus(4, 150), "r1-");
  TrainParams params;
  auto one = bootstrap_round(state, pool, small_config(), params);
  auto again = bootstrap_round(state, pool, small_config(), params);
  EXPECT_EQ(one.state.iteration, 1);
  EXPECT_EQ(one.state.model_path, "model-v1.bin");
  EXPECT_TRUE(one.model == again.model);
  EXPECT_EQ(one.state.queue.size(), again.state.queue.size());
  EXPECT_EQ(one.state.accepted.size(), again.state.accepted.size());

  // Unresolved queue blocks the next round.
  auto pool2 = pool_from(langs_->corpus(5, 100), "r2-");
  if (!one.state.queue.empty()) {
    EXPECT_THROW(bootstrap_round(one.state, pool2, small_config(), params),
                 PendingItemsRemain);
  }
  BootstrapState resolved = one.state;
  for (auto& item : resolved.queue) item.status = ReviewStatus::kConfirmed;
  const std::size_t held = resolved.held_back.size();
  auto two = bootstrap_round(resolved, pool2, small_config(), params);
  EXPECT_EQ(two.state.iteration, 2);
  EXPECT_EQ(two.state.reviewed.size(), held);
  ASSERT_EQ(two.state.seed_set.size(), seed_->size());
  for (std::size_t i = 0; i < seed_->size(); ++i) {
    EXPECT_EQ(two.state.seed_set[i].id, (*seed_)[i].id);
    for (std::size_t t = 0; t < (*seed_)[i].tokens.size(); ++t) {
      EXPECT_EQ(two.state.seed_set[i].tokens[t].label, (*seed_)[i].tokens[t].label);
    }
  }
  ASSERT_EQ(two.state.history.size(), 2u);
  EXPECT_EQ(two.state.history[1].train_sentences,
            seed_->size() + one.state.accepted.size() + held);

  // Reusing an id already in the training data is an error.
  BootstrapState clash = two.state;
  for (auto& item : clash.queue) item.status = ReviewStatus::kConfirmed;
  EXPECT_THROW(bootstrap_round(clash, pool2, small_config(), params), InvalidArgument);
}

TEST_F(BootstrapTest, EmptyPoolRetrainsOnSameData) {
  BootstrapState state;
  state.seed_set = *seed_;
  auto r = bootstrap_round(state, {}, small_config(), TrainParams{});
  EXPECT_TRUE(r.state.accepted.empty());
  EXPECT_TRUE(r.state.queue.empty());
  EXPECT_TRUE(r.model == *model_);
  LabeledCorpus validation = synth::gold_corpus(langs_->corpus(9, 30));
  auto v = bootstrap_round(r.state, {}, small_config(), TrainParams{}, &validation);
  ASSERT_TRUE(v.state.history.back().valid_accuracy.has_value());
  EXPECT_DOUBLE_EQ(*v.state.history.back().valid_accuracy,
                   heldout_accuracy(v.model, validation));
}

LabeledCorpus keyword_corpus() {
  LabeledCorpus corpus(1);
  corpus[0].id = "k";
  for (int i = 0; i < 50; ++i) corpus[0].tokens.push_back({"bahut", Label::kHi});
  for (int i = 0; i < 9; ++i) corpus[0].tokens.push_back({"accha", Label::kHi});
  for (int i = 0; i < 12; ++i) corpus[0].tokens.push_back({"yaar", Label::kHi});
  for (int i = 0; i < 12; ++i) corpus[0].tokens.push_back({"dost", Label::kHi});
  for (int i = 0; i < 30; ++i) corpus[0].tokens.push_back({"hai", Label::kHi});
  for (int i = 0; i < 40; ++i) corpus[0].tokens.push_back({"very", Label::kEn});
  return corpus;
}

TEST(Keywords, RankingAndFilters) {
  auto out = propose_keywords(keyword_corpus(), {"hai"}, 10);
  EXPECT_EQ(out, (std::vector<KeywordCandidate>{{"bahut", 50}, {"dost", 12}, {"yaar", 12}}));
  EXPECT_THROW(propose_keywords(keyword_corpus(), {}, 0), InvalidArgument);
}

TEST(QueueTsv, RoundTrip) {
  std::vector<ReviewItem> queue = {
      {"s1", 2, "kya", Label::kHi, 0.512345678, std::nullopt, ReviewStatus::kPending},
      {"s2", 0, "ok", Label::kEn, 0.25, Label::kHi, ReviewStatus::kCorrected},
      {"s3", 1, "yo", Label::kOther, 0.5, std::nullopt, ReviewStatus::kConfirmed}};
  std::ostringstream out;
  write_queue_tsv(out, queue);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "sentence_id\ttoken_index\ttoken_text\tpredicted\tconfidence\tcorrected\tstatus");
  EXPECT_NE(text.find("s1\t2\tkya\tHI\t0.512346\t\tPending\n"), std::string::npos) << text;
  std::istringstream in(text);
  auto back = read_queue_tsv(in);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[1].corrected, Label::kHi);
  EXPECT_EQ(back[1].status, ReviewStatus::kCorrected);
  EXPECT_EQ(back[2].status, ReviewStatus::kConfirmed);
  std::istringstream bad("sentence_id\ttoken_index\n");
  EXPECT_THROW(read_queue_tsv(bad), DataError);
}

TEST_F(BootstrapTest, StateDirectoryRoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "codemix_state_roundtrip";
  fs::remove_all(dir);
  BootstrapState state;
  state.seed_set = *seed_;
  auto r = bootstrap_round(state, pool_from(langs_->corpus(6, 80), "p"),
                           small_config(), TrainParams{});
  r.state.validation_path = "valid.conll";
  save_state(dir, r.state);
  for (const char* f : {"state.json", "seed.conll", "accepted.conll", "queue.tsv",
                        "held_back.conll", "reviewed.conll"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  BootstrapState loaded = load_state(dir);
  EXPECT_EQ(loaded.iteration, 1);
  EXPECT_EQ(loaded.threshold, 0.9);
  EXPECT_EQ(loaded.model_path, "model-v1.bin");
  EXPECT_EQ(loaded.validation_path, "valid.conll");
  EXPECT_EQ(loaded.seed_set.size(), r.state.seed_set.size());
  EXPECT_EQ(loaded.accepted.size(), r.state.accepted.size());
  EXPECT_EQ(loaded.held_back.size(), r.state.held_back.size());
  EXPECT_EQ(loaded.queue.size(), r.state.queue.size());
  ASSERT_EQ(loaded.history.size(), 1u);
  EXPECT_EQ(loaded.history[0].queued, r.state.queue.size());

  fs::remove(dir / "seed.conll");
  EXPECT_THROW(load_state(dir), CorruptState);
  EXPECT_THROW(load_state(dir / "missing"), CorruptState);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace codemix
