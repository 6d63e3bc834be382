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

#include <algorithm>
#include <string>
#include <vector>

#include "codemix/utf8.h"

namespace codemix {

ScriptClass script_class(char32_t ch) {
  if ((ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z')) {
    return ScriptClass::kRoman;
  }
  if (ch >= '0' && ch <= '9') return ScriptClass::kDigit;
  if ((ch >= 0x21 && ch <= 0x2F) || (ch >= 0x3A && ch <= 0x40) ||
      (ch >= 0x5B && ch <= 0x60) || (ch >= 0x7B && ch <= 0x7E)) {
    return ScriptClass::kPunct;
  }
  if (ch >= 0x0900 && ch <= 0x097F) return ScriptClass::kDevanagari;
  if ((ch >= 0x1F000 && ch <= 0x1FAFF) || (ch >= 0x2600 && ch <= 0x27BF) ||
      (ch >= 0x2300 && ch <= 0x23FF) || (ch >= 0x2B00 && ch <= 0x2BFF) ||
      ch == 0xFE0F || ch == 0x200D) {
    return ScriptClass::kEmoji;
  }
  return ScriptClass::kOther;
}

bool is_space(char32_t ch) {
  switch (ch) {
    case ' ':
    case '\t':
    case '\n':
    case '\v':
    case '\f':
    case '\r':
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x200B:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return ch >= 0x2000 && ch <= 0x200A;
  }
}

bool allowed_by_policy(char32_t ch, const NormalizePolicy& policy) {
  switch (script_class(ch)) {
    case ScriptClass::kRoman:
    case ScriptClass::kDigit:
    case ScriptClass::kPunct:
      return true;
    case ScriptClass::kEmoji:
      return policy.keep_emoji;
    case ScriptClass::kDevanagari:
      return policy.script_mode == ScriptMode::kMixed;
    case ScriptClass::kOther:
      return false;
  }
  return false;
}

namespace {

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool is_mention_char(char c) { return is_ascii_alnum(c) || c == '_'; }

// Case-insensitive search for an ASCII needle (given in lowercase).
std::size_t find_ascii_ci(std::string_view hay, std::string_view needle,
                          std::size_t from = 0) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (ascii_lower(hay[i + j]) != needle[j]) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

// A URL runs from its scheme (or a bare t.co/ shortener not glued to a
// preceding alphanumeric) to the end of the whitespace-delimited chunk.
void strip_url(std::string& chunk) {
  std::size_t cut = std::string::npos;
  for (std::string_view scheme : {"http://", "https://"}) {
    cut = std::min(cut, find_ascii_ci(chunk, scheme));
  }
  for (std::size_t p = find_ascii_ci(chunk, "t.co/"); p != std::string::npos;
       p = find_ascii_ci(chunk, "t.co/", p + 1)) {
    if (p == 0 || !is_ascii_alnum(chunk[p - 1])) {
      cut = std::min(cut, p);
      break;
    }
  }
  if (cut != std::string::npos) chunk.erase(cut);
}

// Removes every mention ('@' plus [A-Za-z0-9_]+) at the start of the chunk.
void strip_mentions(std::string& chunk) {
  std::size_t start = 0;
  while (start < chunk.size() && chunk[start] == '@') {
    std::size_t end = start + 1;
    while (end < chunk.size() && is_mention_char(chunk[end])) ++end;
    if (end == start + 1) break;
    start = end;
  }
  chunk.erase(0, start);
}

std::string filter_scripts(std::string_view chunk,
                           const NormalizePolicy& policy) {
  std::string out;
  out.reserve(chunk.size());
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    auto d = utf8::decode(chunk, pos);
    if (!d) {
      ++pos;
      continue;
    }
    if (allowed_by_policy(d->scalar, policy)) {
      out.append(chunk.substr(pos, d->length));
    }
    pos += d->length;
  }
  return out;
}

// Splits on whitespace scalars; invalid bytes are dropped.
std::vector<std::string> split_chunks(std::string_view text) {
  std::vector<std::string> chunks;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = utf8::decode(text, pos);
    if (!d) {
      ++pos;
      continue;
    }
    if (is_space(d->scalar)) {
      if (!current.empty()) chunks.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text.substr(pos, d->length));
    }
    pos += d->length;
  }
  if (!current.empty()) chunks.push_back(std::move(current));
  return chunks;
}

std::string normalize_once(std::string_view text,
                           const NormalizePolicy& policy) {
  std::string out;
  out.reserve(text.size());
  for (std::string& chunk : split_chunks(text)) {
    if (policy.strip_urls) strip_url(chunk);
    if (policy.strip_mentions) strip_mentions(chunk);
    std::string kept = filter_scripts(chunk, policy);
    if (kept.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(kept);
  }
  return out;
}

}  // namespace

std::optional<std::string> normalize_sentence(std::string_view raw,
                                              const NormalizePolicy& policy) {
  std::string current = normalize_once(raw, policy);
  // Each pass only deletes, so this terminates; usually after one extra pass.
  for (;;) {
    std::string next = normalize_once(current, policy);
    if (next == current) break;
    current = std::move(next);
  }
  if (current.empty()) return std::nullopt;
  return current;
}

}  // namespace codemix
