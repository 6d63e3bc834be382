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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "codemix/error.h"
#include "codemix/rng.h"
#include "synthetic.h"

namespace codemix {
namespace {

std::vector<Token> tokens_with(const std::vector<std::pair<std::string, Label>>& spec) {
  std::vector<Token> out;
  for (const auto& [text, label] : spec) {
    Token t;
    t.text = text;
    t.kind = token_kind(text);
    t.label = label;
    out.push_back(t);
  }
  return out;
}

TEST(Classify, Examples) {
  auto a = classify_sentence(tokens_with({{"yeh", Label::kHi}, {"hai", Label::kHi},
                                          {"very", Label::kEn}, {"good", Label::kEn},
                                          {"!", Label::kOther}}),
                             FilterConfig{});
  EXPECT_EQ(a.hi_count, 2u);
  EXPECT_EQ(a.en_count, 2u);
  EXPECT_EQ(a.other_count, 1u);
  EXPECT_TRUE(a.accepted);
  auto b = classify_sentence(tokens_with({{"yeh", Label::kHi}, {"is", Label::kEn},
                                          {"so", Label::kEn}, {"good", Label::kEn}}),
                             FilterConfig{});
  EXPECT_EQ(b.hi_count, 1u);
  EXPECT_FALSE(b.accepted);
  auto empty = classify_sentence({}, FilterConfig{});
  EXPECT_EQ(empty.hi_count + empty.en_count + empty.other_count, 0u);
  EXPECT_FALSE(empty.accepted);
}

TEST(Classify, NonWordsNeverCount) {
  // A punctuation token mislabeled EN must not count as an English word.
  auto d = classify_sentence(tokens_with({{"yeh", Label::kHi}, {"hai", Label::kHi},
                                          {"good", Label::kEn}, {"!!", Label::kEn}}),
                             FilterConfig{});
  EXPECT_EQ(d.en_count, 1u);
  EXPECT_FALSE(d.accepted);
}

TEST(Classify, UnlabeledToken) {
  auto t = tokens_with({{"yeh", Label::kHi}, {"hai", Label::kHi}});
  t[1].label.reset();
  EXPECT_THROW(classify_sentence(t, FilterConfig{}), UnlabeledToken);
}

TEST(Classify, OrderIndependent) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, Label>> spec;
    const std::size_t n = rng.uniform(8);
    for (std::size_t i = 0; i < n; ++i) {
      spec.push_back({rng.bernoulli(0.2) ? "!" : "w", kAllLabels[rng.uniform(3)]});
    }
    auto tokens = tokens_with(spec);
    auto base = classify_sentence(tokens, FilterConfig{});
    rng.shuffle(std::span<Token>(tokens));
    auto shuffled = classify_sentence(tokens, FilterConfig{});
    EXPECT_EQ(base.accepted, shuffled.accepted);
    EXPECT_EQ(base.hi_count, shuffled.hi_count);
    EXPECT_EQ(base.en_count, shuffled.en_count);
    EXPECT_EQ(base.hi_count + base.en_count + base.other_count, n);
  }
}

TEST(FilterConfig, Validation) {
  EXPECT_THROW((FilterConfig{0, 2}.validate()), InvalidArgument);
  EXPECT_THROW((FilterConfig{2, 0}.validate()), InvalidArgument);
}

class FilterCorpusTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    langs_ = new synth::SyntheticLanguages(31, 400);
    FeatureConfig fc;
    fc.hash_dim = 1u << 16;
    model_ = new LidModel(train(synth::gold_corpus(langs_->corpus(1, 3000)), fc, TrainParams{}));
    lines_ = synth::raw_lines(langs_->corpus(2, 1500));
    lines_.push_back("@only https://t.co/zz");
    lines_.push_back("");
  }
  static void TearDownTestSuite() {
    delete model_;
    delete langs_;
  }

  static std::string joined(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }

  static std::pair<std::string, FilterStats> run(const std::string& input,
                                                 const FilterConfig& config,
                                                 int threads = 1) {
    std::istringstream in(input);
    std::ostringstream out;
    FilterStats stats = filter_corpus(*model_, in, out, NormalizePolicy{}, config, threads);
    return {out.str(), stats};
  }

  static synth::SyntheticLanguages* langs_;
  static LidModel* model_;
  static std::vector<std::string> lines_;
};

synth::SyntheticLanguages* FilterCorpusTest::langs_ = nullptr;
LidModel* FilterCorpusTest::model_ = nullptr;
std::vector<std::string> FilterCorpusTest::lines_;

TEST_F(FilterCorpusTest, StatsReconcile) {
  auto [out, stats] = run(joined(lines_), FilterConfig{});
  EXPECT_EQ(stats.total, lines_.size() - 1);  // the empty line is skipped
  EXPECT_EQ(stats.total, stats.accepted + stats.rejected_low_hi +
                             stats.rejected_low_en + stats.rejected_empty);
  EXPECT_EQ(stats.rejected_empty, 1u);
  EXPECT_GT(stats.accepted, 0u);
  EXPECT_GT(stats.rejected_low_hi + stats.rejected_low_en, 0u);
  std::size_t out_lines = 0;
  for (char c : out) out_lines += c == '\n';
  EXPECT_EQ(out_lines, stats.accepted);
}

TEST_F(FilterCorpusTest, MonotoneInThresholds) {
  auto loose = run(joined(lines_), FilterConfig{1, 1}).first;
  auto strict = run(joined(lines_), FilterConfig{2, 2}).first;
  auto stricter = run(joined(lines_), FilterConfig{3, 2}).first;
  auto as_set = [](const std::string& text) {
    std::multiset<std::string> s;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) s.insert(l);
    return s;
  };
  auto l = as_set(loose), s = as_set(strict), t = as_set(stricter);
  EXPECT_TRUE(std::includes(l.begin(), l.end(), s.begin(), s.end()));
  EXPECT_TRUE(std::includes(s.begin(), s.end(), t.begin(), t.end()));
  EXPECT_LT(s.size(), l.size());
}

TEST_F(FilterCorpusTest, ShardConcatenation) {
  const std::size_t cut = 700;
  std::vector<std::string> a(lines_.begin(), lines_.begin() + cut);
  std::vector<std::string> b(lines_.begin() + cut, lines_.end());
  auto whole = run(joined(lines_), FilterConfig{});
  auto first = run(joined(a), FilterConfig{});
  auto second = run(joined(b), FilterConfig{});
  EXPECT_EQ(whole.first, first.first + second.first);
  EXPECT_EQ(whole.second.accepted, first.second.accepted + second.second.accepted);
}

TEST_F(FilterCorpusTest, ThreadsPreserveOrder) {
  std::string big;
  for (int rep = 0; rep < 4; ++rep) big += joined(lines_);
  auto serial = run(big, FilterConfig{}, 1);
  auto parallel = run(big, FilterConfig{}, 3);
  EXPECT_EQ(serial.first, parallel.first);
  EXPECT_EQ(serial.second.rejected_low_en, parallel.second.rejected_low_en);
}

TEST_F(FilterCorpusTest, MonolingualCorpusYieldsNothing) {
  synth::SentenceStyle style;
  style.monolingual_en = 1.0;
  style.monolingual_hi = 0.0;
  auto mono = synth::raw_lines(langs_->corpus(8, 200, style));
  // The classifier is imperfect, so use the rule with perfect labels.
  std::size_t accepted = 0;
  for (const auto& s : langs_->corpus(8, 200, style)) {
    std::vector<Token> tokens;
    for (const auto& t : s.gold.tokens) {
      tokens.push_back({t.text, {}, token_kind(t.text), t.label, std::nullopt});
    }
    accepted += classify_sentence(tokens, FilterConfig{}).accepted;
  }
  EXPECT_EQ(accepted, 0u);
  auto [out, stats] = run(joined(mono), FilterConfig{});
  EXPECT_LE(stats.accepted, 2u);
}

TEST_F(FilterCorpusTest, InvalidUtf8Reported) {
  auto [out, stats] = run("good line here\n\xFF\xFE bad\n", FilterConfig{});
  EXPECT_EQ(stats.total, 1u);
  EXPECT_EQ(stats.invalid_utf8, 1u);
  ASSERT_EQ(stats.errors.size(), 1u);
  EXPECT_EQ(stats.errors[0].line_no, 2u);
}

TEST(FilterStats, JsonReport) {
  FilterStats s;
  s.total = 3;
  s.accepted = 1;
  s.rejected_low_hi = 1;
  s.rejected_empty = 1;
  EXPECT_EQ(format_filter_stats(s),
            "{\n  \"total\": 3,\n  \"accepted\": 1,\n  \"rejected_low_hi\": 1,\n"
            "  \"rejected_low_en\": 0,\n  \"rejected_empty\": 1,\n"
            "  \"invalid_utf8\": 0,\n  \"acceptance_rate\": 0.3333\n}\n");
}

}  // namespace
}  // namespace codemix
