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

#ifndef CODEMIX_UTF8_H_
#define CODEMIX_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace codemix::utf8 {

// A decoded scalar value together with the byte length it occupied.
struct Decoded {
  char32_t scalar;
  std::size_t length;
};

// Decodes the scalar starting at text[pos]. Returns nullopt for overlong
// forms, surrogates, values above U+10FFFF and truncated sequences.
std::optional<Decoded> decode(std::string_view text, std::size_t pos);

bool is_valid(std::string_view text);

void append(std::string& out, char32_t scalar);

// Iterates the scalars of a string already known to be valid UTF-8.
class ScalarIterator {
 public:
  explicit ScalarIterator(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t position() const { return pos_; }
  // Undefined if done().
  Decoded peek() const;
  Decoded next();

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace codemix::utf8

#endif  // CODEMIX_UTF8_H_
