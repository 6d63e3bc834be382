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

#ifndef CODEMIX_NORMALIZE_H_
#define CODEMIX_NORMALIZE_H_

#include <optional>
#include <string>
#include <string_view>

namespace codemix {

enum class ScriptClass { kRoman, kDevanagari, kDigit, kPunct, kEmoji, kOther };

// Total classification of Unicode scalars:
//   A-Z a-z            -> Roman
//   U+0900..U+097F     -> Devanagari
//   0-9                -> Digit
//   ASCII punctuation  -> Punct
//   emoji ranges       -> Emoji (U+1F000..U+1FAFF, U+2600..U+27BF,
//                         U+2300..U+23FF, U+2B00..U+2BFF, plus the U+FE0F
//                         presentation selector and U+200D joiner)
//   anything else      -> Other (whitespace included)
ScriptClass script_class(char32_t ch);

// ASCII whitespace plus the common Unicode space separators.
bool is_space(char32_t ch);

enum class ScriptMode { kRomanOnly, kMixed };

struct NormalizePolicy {
  ScriptMode script_mode = ScriptMode::kRomanOnly;
  bool strip_mentions = true;
  bool strip_urls = true;
  bool keep_emoji = true;
};

// Whether a scalar survives the script filter under policy.
bool allowed_by_policy(char32_t ch, const NormalizePolicy& policy);

// Removes URLs (http://, https://, bare t.co/ links) and user mentions,
// then characters the script policy rejects, then collapses whitespace.
// The steps repeat until the text stops changing, which makes the function
// idempotent. Returns nullopt when nothing is left. Invalid UTF-8 bytes are
// dropped.
std::optional<std::string> normalize_sentence(std::string_view raw,
                                              const NormalizePolicy& policy);

}  // namespace codemix

#endif  // CODEMIX_NORMALIZE_H_
