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

#include "codemix/tokenize.h"

#include <gtest/gtest.h>

#include "codemix/normalize.h"
#include "codemix/rng.h"

namespace codemix {
namespace {

std::vector<std::pair<std::string, TokenKind>> pairs(const TokenizedSentence& s) {
  std::vector<std::pair<std::string, TokenKind>> out;
  for (const Token& t : s.tokens) out.emplace_back(t.text, t.kind);
  return out;
}

using P = std::vector<std::pair<std::string, TokenKind>>;

TEST(Tokenize, WordsAndPunct) {
  EXPECT_EQ(pairs(tokenize("kya scene hai!")),
            (P{{"kya", TokenKind::kWord}, {"scene", TokenKind::kWord},
               {"hai", TokenKind::kWord}, {"!", TokenKind::kPunct}}));
}

TEST(Tokenize, Emoji) {
  EXPECT_EQ(pairs(tokenize("great \xF0\x9F\x98\x8A")),
            (P{{"great", TokenKind::kWord}, {"\xF0\x9F\x98\x8A", TokenKind::kEmoji}}));
}

TEST(Tokenize, EmojiEachSeparate) {
  EXPECT_EQ(pairs(tokenize("\xF0\x9F\x98\x8A\xF0\x9F\x98\x82")),
            (P{{"\xF0\x9F\x98\x8A", TokenKind::kEmoji},
               {"\xF0\x9F\x98\x82", TokenKind::kEmoji}}));
}

TEST(Tokenize, ApostropheStaysInWord) {
  EXPECT_EQ(pairs(tokenize("don't 'quote'")),
            (P{{"don't", TokenKind::kWord}, {"'", TokenKind::kPunct},
               {"quote", TokenKind::kWord}, {"'", TokenKind::kPunct}}));
}

TEST(Tokenize, NumbersAndAlnum) {
  EXPECT_EQ(pairs(tokenize("2024 me 2nd")),
            (P{{"2024", TokenKind::kNumber}, {"me", TokenKind::kWord},
               {"2nd", TokenKind::kWord}}));
}

TEST(Tokenize, PunctRunsAndSmiley) {
  EXPECT_EQ(pairs(tokenize("wow... :)")),
            (P{{"wow", TokenKind::kWord}, {"...", TokenKind::kPunct},
               {":)", TokenKind::kPunct}}));
}

TEST(Tokenize, Devanagari) {
  const std::string kya = "\xE0\xA4\x95\xE0\xA5\x8D\xE0\xA4\xAF\xE0\xA4\xBE";
  auto s = tokenize(kya + " scene \xE0\xA5\xA4");
  EXPECT_EQ(pairs(s), (P{{kya, TokenKind::kWord}, {"scene", TokenKind::kWord},
                         {"\xE0\xA5\xA4", TokenKind::kPunct}}));
}

TEST(Tokenize, KindIsPureFunctionOfText) {
  EXPECT_EQ(token_kind("abc"), TokenKind::kWord);
  EXPECT_EQ(token_kind("12"), TokenKind::kNumber);
  EXPECT_EQ(token_kind("!?"), TokenKind::kPunct);
  EXPECT_EQ(token_kind("\xF0\x9F\x98\x8A"), TokenKind::kEmoji);
}

TEST(TokenizeProperty, RoundTripAndSpans) {
  static const std::vector<std::string> pieces = {
      "Yeh", "hai", "don't", "!", ":)", "...", "\xF0\x9F\x98\x8A", "12", " ",
      "\xE0\xA4\x95", "'", "#", "x2", "\xE2\x9D\xA4\xEF\xB8\x8F", "?!"};
  NormalizePolicy policy;
  policy.script_mode = ScriptMode::kMixed;
  Rng rng(11);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string raw;
    const std::size_t n = 1 + rng.uniform(10);
    for (std::size_t i = 0; i < n; ++i) raw += pieces[rng.uniform(pieces.size())];
    auto normalized = normalize_sentence(raw, policy);
    if (!normalized) continue;
    const TokenizedSentence s = tokenize(*normalized);
    ASSERT_FALSE(s.tokens.empty());
    EXPECT_EQ(detokenize(s), *normalized);
    std::size_t prev_end = 0;
    for (const Token& t : s.tokens) {
      EXPECT_FALSE(t.text.empty());
      EXPECT_GE(t.span.begin, prev_end);
      EXPECT_LT(t.span.begin, t.span.end);
      EXPECT_LE(t.span.end, normalized->size());
      EXPECT_EQ(normalized->substr(t.span.begin, t.span.size()), t.text);
      EXPECT_EQ(token_kind(t.text), t.kind) << t.text;
      prev_end = t.span.end;
    }
  }
}

}  // namespace
}  // namespace codemix
