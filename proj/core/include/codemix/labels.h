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

#ifndef CODEMIX_LABELS_H_
#define CODEMIX_LABELS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace codemix {

// Word-level language labels. The enumerator order is the classifier's
// output order and the tie-break order for argmax.
enum class Label : std::uint8_t { kEn = 0, kHi = 1, kOther = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kEn, Label::kHi, Label::kOther};

constexpr std::size_t index_of(Label label) {
  return static_cast<std::size_t>(label);
}

std::string_view label_name(Label label);

// Accepts exactly "EN", "HI" or "OTHER".
std::optional<Label> parse_label(std::string_view name);

// Like parse_label but raises LabelOutsideAlphabet.
Label require_label(std::string_view name);

}  // namespace codemix

#endif  // CODEMIX_LABELS_H_
