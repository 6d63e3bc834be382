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

#include "codemix/utf8.h"

namespace codemix::utf8 {

std::optional<Decoded> decode(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return std::nullopt;
  auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[pos + i]);
  };
  unsigned char b0 = byte(0);
  if (b0 < 0x80) return Decoded{b0, 1};

  std::size_t length;
  char32_t scalar;
  char32_t min_value;
  if ((b0 & 0xE0) == 0xC0) {
    length = 2;
    scalar = b0 & 0x1F;
    min_value = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    length = 3;
    scalar = b0 & 0x0F;
    min_value = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    length = 4;
    scalar = b0 & 0x07;
    min_value = 0x10000;
  } else {
    return std::nullopt;
  }
  if (pos + length > text.size()) return std::nullopt;
  for (std::size_t i = 1; i < length; ++i) {
    unsigned char b = byte(i);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    scalar = (scalar << 6) | (b & 0x3F);
  }
  if (scalar < min_value || scalar > 0x10FFFF) return std::nullopt;
  if (scalar >= 0xD800 && scalar <= 0xDFFF) return std::nullopt;
  return Decoded{scalar, length};
}

bool is_valid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = decode(text, pos);
    if (!d) return false;
    pos += d->length;
  }
  return true;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

Decoded ScalarIterator::peek() const {
  auto d = decode(text_, pos_);
  // Callers promise valid input; treat a stray byte as U+FFFD of width 1.
  return d ? *d : Decoded{0xFFFD, 1};
}

Decoded ScalarIterator::next() {
  Decoded d = peek();
  pos_ += d.length;
  return d;
}

}  // namespace codemix::utf8
