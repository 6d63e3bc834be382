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

#ifndef CODEMIX_TOKENIZE_H_
#define CODEMIX_TOKENIZE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/labels.h"

namespace codemix {

enum class TokenKind { kWord, kPunct, kEmoji, kNumber };

std::string_view token_kind_name(TokenKind kind);

// Half-open byte range into the tokenized sentence.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string text;
  Span span;
  TokenKind kind = TokenKind::kWord;
  std::optional<Label> label;
  std::optional<double> confidence;
};

struct TokenizedSentence {
  std::string raw;
  std::vector<Token> tokens;
};

// Kind of a token from its characters alone: Word iff it contains a Roman
// or Devanagari letter, else Number for pure digit runs, Emoji for emoji
// clusters, Punct otherwise.
TokenKind token_kind(std::string_view text);

// Splits a normalized sentence:
//   * letters, digits and word-internal apostrophes form one token, which is
//     a Word if it holds at least one letter and a Number otherwise;
//   * consecutive ASCII punctuation forms one Punct token (so ":)" and "!!"
//     stay whole), as does a run of unclassified symbols;
//   * each emoji, with its trailing modifiers and joiner sequence, forms one
//     Emoji token.
// Whitespace separates tokens and never appears inside one.
TokenizedSentence tokenize(std::string_view normalized);

// Rebuilds the sentence from token texts, inserting a single space wherever
// the source had whitespace between two tokens.
std::string detokenize(const TokenizedSentence& sentence);

}  // namespace codemix

#endif  // CODEMIX_TOKENIZE_H_
