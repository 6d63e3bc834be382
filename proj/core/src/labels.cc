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

#include "codemix/labels.h"

#include <string>

#include "codemix/error.h"

namespace codemix {

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kEn:
      return "EN";
    case Label::kHi:
      return "HI";
    case Label::kOther:
      return "OTHER";
  }
  return "OTHER";
}

std::optional<Label> parse_label(std::string_view name) {
  if (name == "EN") return Label::kEn;
  if (name == "HI") return Label::kHi;
  if (name == "OTHER") return Label::kOther;
  return std::nullopt;
}

Label require_label(std::string_view name) {
  auto label = parse_label(name);
  if (!label) throw LabelOutsideAlphabet(std::string(name));
  return *label;
}

}  // namespace codemix
