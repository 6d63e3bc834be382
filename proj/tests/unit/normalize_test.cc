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

#include "codemix/normalize.h"

#include <gtest/gtest.h>

#include "codemix/rng.h"
#include "codemix/utf8.h"

namespace codemix {
namespace {

NormalizePolicy roman() { return {}; }
NormalizePolicy mixed() {
  NormalizePolicy p;
  p.script_mode = ScriptMode::kMixed;
  return p;
}

TEST(ScriptClass, Ranges) {
  EXPECT_EQ(script_class(U'a'), ScriptClass::kRoman);
  EXPECT_EQ(script_class(U'Z'), ScriptClass::kRoman);
  EXPECT_EQ(script_class(0x915), ScriptClass::kDevanagari);
  EXPECT_EQ(script_class(U'7'), ScriptClass::kDigit);
  EXPECT_EQ(script_class(U'!'), ScriptClass::kPunct);
  EXPECT_EQ(script_class(U'#'), ScriptClass::kPunct);
  EXPECT_EQ(script_class(0x1F60A), ScriptClass::kEmoji);
  EXPECT_EQ(script_class(0x2764), ScriptClass::kEmoji);
  EXPECT_EQ(script_class(0xE9), ScriptClass::kOther);
  EXPECT_EQ(script_class(0x4E2D), ScriptClass::kOther);
}

TEST(Normalize, StripsMentionAndShortUrl) {
  EXPECT_EQ(normalize_sentence("@user yeh BEST hai :) http://t.co/x", roman()),
            "yeh BEST hai :)");
}

TEST(Normalize, ScriptPolicy) {
  EXPECT_EQ(normalize_sentence("\xE0\xA4\x95\xE0\xA5\x8D\xE0\xA4\xAF\xE0\xA4\xBE scene hai",
                               roman()),
            "scene hai");
  EXPECT_EQ(normalize_sentence("\xE0\xA4\x95\xE0\xA5\x8D\xE0\xA4\xAF\xE0\xA4\xBE scene hai",
                               mixed()),
            "\xE0\xA4\x95\xE0\xA5\x8D\xE0\xA4\xAF\xE0\xA4\xBE scene hai");
}

TEST(Normalize, EmptyResultIsAbsent) {
  EXPECT_FALSE(normalize_sentence("", roman()).has_value());
  EXPECT_FALSE(normalize_sentence("   \t ", roman()).has_value());
  EXPECT_FALSE(normalize_sentence("@only https://example.com/x", roman()).has_value());
}

TEST(Normalize, CollapsesWhitespaceAndKeepsCase) {
  EXPECT_EQ(normalize_sentence("  Kya   SCENE\thai  ", roman()), "Kya SCENE hai");
}

TEST(Normalize, HashtagsAreKept) {
  EXPECT_EQ(normalize_sentence("#YehDilMaangeMore bhai", roman()),
            "#YehDilMaangeMore bhai");
}

TEST(Normalize, FlagsDisableStripping) {
  NormalizePolicy p;
  p.strip_mentions = false;
  p.strip_urls = false;
  EXPECT_EQ(normalize_sentence("@user dekho https://t.co/abc", p),
            "@user dekho https://t.co/abc");
  p.keep_emoji = false;
  EXPECT_EQ(normalize_sentence("great \xF0\x9F\x98\x8A", p), "great");
}

TEST(Normalize, EmailIsNotAMention) {
  EXPECT_EQ(normalize_sentence("mail me at a@b.com", roman()), "mail me at a@b.com");
}

// Generates adversarial raw strings from a small alphabet of fragments.
std::string random_raw(Rng& rng) {
  static const std::vector<std::string> pieces = {
      "@", "user", "_", "http://", "https://", "t.co/", "x", " ", "  ", "\t",
      "Yeh", "hai", "!", ":)", "\xF0\x9F\x98\x8A", "\xE0\xA4\x95", "\xC3\xA9",
      "@@", "/", ".", "9", "\xE2\x80\x8B", "\xEF\xB8\x8F", "\xE2\x80\x8D"};
  std::string s;
  const std::size_t n = rng.uniform(12);
  for (std::size_t i = 0; i < n; ++i) s += pieces[rng.uniform(pieces.size())];
  return s;
}

bool contains_mention(const std::string& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const bool at_start = i == 0 || s[i - 1] == ' ';
    const char c = s[i + 1];
    if (at_start && s[i] == '@' &&
        (std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      return true;
    }
  }
  return false;
}

TEST(NormalizeProperty, IdempotentAndClean) {
  Rng rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::string raw = random_raw(rng);
    for (const NormalizePolicy& policy : {roman(), mixed()}) {
      auto once = normalize_sentence(raw, policy);
      if (!once) continue;
      ASSERT_FALSE(once->empty());
      EXPECT_EQ(normalize_sentence(*once, policy), once) << raw;
      EXPECT_NE(once->front(), ' ');
      EXPECT_NE(once->back(), ' ');
      EXPECT_EQ(once->find("  "), std::string::npos);
      EXPECT_EQ(once->find("http://"), std::string::npos);
      EXPECT_EQ(once->find("https://"), std::string::npos);
      EXPECT_FALSE(contains_mention(*once)) << *once;
      utf8::ScalarIterator it(*once);
      while (!it.done()) {
        const char32_t c = it.next().scalar;
        EXPECT_TRUE(c == U' ' || allowed_by_policy(c, policy)) << raw;
      }
    }
  }
}

}  // namespace
}  // namespace codemix
