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

#include "codemix/normalize.h"
#include "codemix/utf8.h"

namespace codemix {

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord:
      return "WORD";
    case TokenKind::kPunct:
      return "PUNCT";
    case TokenKind::kEmoji:
      return "EMOJI";
    case TokenKind::kNumber:
      return "NUMBER";
  }
  return "PUNCT";
}

namespace {

enum class CharCat { kLetter, kDigit, kApostrophe, kPunct, kEmoji, kSpace, kOther };

CharCat categorize(char32_t ch) {
  if (ch == '\'' || ch == 0x2019) return CharCat::kApostrophe;
  if (is_space(ch)) return CharCat::kSpace;
  // Danda and double danda are sentence punctuation; U+0966..U+096F digits.
  if (ch == 0x0964 || ch == 0x0965) return CharCat::kPunct;
  if (ch >= 0x0966 && ch <= 0x096F) return CharCat::kDigit;
  switch (script_class(ch)) {
    case ScriptClass::kRoman:
    case ScriptClass::kDevanagari:
      return CharCat::kLetter;
    case ScriptClass::kDigit:
      return CharCat::kDigit;
    case ScriptClass::kPunct:
      return CharCat::kPunct;
    case ScriptClass::kEmoji:
      return CharCat::kEmoji;
    case ScriptClass::kOther:
      return CharCat::kOther;
  }
  return CharCat::kOther;
}

bool is_alnum(CharCat c) { return c == CharCat::kLetter || c == CharCat::kDigit; }

bool is_emoji_modifier(char32_t ch) {
  return ch == 0xFE0F || (ch >= 0x1F3FB && ch <= 0x1F3FF);
}

bool is_regional_indicator(char32_t ch) { return ch >= 0x1F1E6 && ch <= 0x1F1FF; }

struct Scalar {
  char32_t ch;
  std::size_t pos;
  std::size_t length;
  CharCat cat;
};

std::vector<Scalar> decode_all(std::string_view text) {
  std::vector<Scalar> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = utf8::decode(text, pos);
    if (!d) {
      // Stray byte: its own unclassified scalar.
      out.push_back({0xFFFD, pos, 1, CharCat::kOther});
      ++pos;
      continue;
    }
    out.push_back({d->scalar, pos, d->length, categorize(d->scalar)});
    pos += d->length;
  }
  return out;
}

}  // namespace

TokenKind token_kind(std::string_view text) {
  bool has_letter = false;
  bool all_digits = !text.empty();
  bool first_emoji = false;
  bool first = true;
  for (const Scalar& s : decode_all(text)) {
    if (s.cat == CharCat::kLetter) has_letter = true;
    if (s.cat != CharCat::kDigit) all_digits = false;
    if (first) first_emoji = (s.cat == CharCat::kEmoji);
    first = false;
  }
  if (has_letter) return TokenKind::kWord;
  if (all_digits) return TokenKind::kNumber;
  if (first_emoji) return TokenKind::kEmoji;
  return TokenKind::kPunct;
}

TokenizedSentence tokenize(std::string_view normalized) {
  TokenizedSentence result;
  result.raw = std::string(normalized);
  const std::vector<Scalar> scalars = decode_all(normalized);
  const std::size_t n = scalars.size();

  auto emit = [&](std::size_t first, std::size_t last, TokenKind kind) {
    Token token;
    token.span.begin = scalars[first].pos;
    token.span.end = scalars[last - 1].pos + scalars[last - 1].length;
    token.text = result.raw.substr(token.span.begin, token.span.size());
    token.kind = kind;
    result.tokens.push_back(std::move(token));
  };

  std::size_t i = 0;
  while (i < n) {
    const CharCat cat = scalars[i].cat;
    if (cat == CharCat::kSpace) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (is_alnum(cat)) {
      bool has_letter = cat == CharCat::kLetter;
      while (j < n) {
        if (is_alnum(scalars[j].cat)) {
          has_letter |= scalars[j].cat == CharCat::kLetter;
          ++j;
        } else if (scalars[j].cat == CharCat::kApostrophe && j + 1 < n &&
                   (scalars[j + 1].cat == CharCat::kLetter ||
                    (has_letter && scalars[j + 1].cat == CharCat::kDigit))) {
          // Word-internal apostrophe; digit'digit stays split.
          j += 1;
        } else {
          break;
        }
      }
      emit(i, j, has_letter ? TokenKind::kWord : TokenKind::kNumber);
    } else if (cat == CharCat::kEmoji) {
      const bool flag = is_regional_indicator(scalars[i].ch);
      if (flag && j < n && is_regional_indicator(scalars[j].ch)) ++j;
      while (j < n) {
        if (is_emoji_modifier(scalars[j].ch)) {
          ++j;
        } else if (scalars[j].ch == 0x200D && j + 1 < n &&
                   scalars[j + 1].cat == CharCat::kEmoji) {
          j += 2;
        } else {
          break;
        }
      }
      emit(i, j, TokenKind::kEmoji);
    } else if (cat == CharCat::kPunct || cat == CharCat::kApostrophe) {
      while (j < n && (scalars[j].cat == CharCat::kPunct ||
                       scalars[j].cat == CharCat::kApostrophe)) {
        ++j;
      }
      emit(i, j, TokenKind::kPunct);
    } else {
      while (j < n && scalars[j].cat == CharCat::kOther) ++j;
      emit(i, j, TokenKind::kPunct);
    }
    i = j;
  }
  return result;
}

std::string detokenize(const TokenizedSentence& sentence) {
  std::string out;
  out.reserve(sentence.raw.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& token = sentence.tokens[i];
    if (i > 0 && token.span.begin > sentence.tokens[i - 1].span.end) {
      out.push_back(' ');
    }
    out += token.text;
  }
  return out;
}

}  // namespace codemix
