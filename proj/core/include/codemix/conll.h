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

#ifndef CODEMIX_CONLL_H_
#define CODEMIX_CONLL_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "codemix/labels.h"
#include "codemix/tokenize.h"

namespace codemix {

struct LabeledToken {
  std::string text;
  Label label = Label::kOther;
  std::optional<double> confidence;
};

struct LabeledSentence {
  std::string id;
  std::vector<LabeledToken> tokens;
};

using LabeledCorpus = std::vector<LabeledSentence>;

// Token-per-line labeled corpus:
//
//   # id = tweet-0042        optional; otherwise ids are <prefix><1-based ordinal>
//   yaar<TAB>HI
//   this<TAB>EN<TAB>0.981234 optional third column: confidence
//   !<TAB>OTHER
//   <blank line between sentences>
//
// Throws FormatError (with line number) for malformed lines and
// LabelOutsideAlphabet for an unknown label.
LabeledCorpus read_conll(std::istream& in, const std::string& id_prefix = "s");
LabeledCorpus read_conll_file(const std::string& path,
                              const std::string& id_prefix = "s");

// Writes "# id = " comments only when write_ids is set; confidences are
// written with six decimals when present and write_confidence is set.
void write_conll(std::ostream& out, const LabeledCorpus& corpus,
                 bool write_ids = true, bool write_confidence = false);
void write_conll_file(const std::string& path, const LabeledCorpus& corpus,
                      bool write_ids = true, bool write_confidence = false);

// Throws UnlabeledToken for the first token without a label.
LabeledSentence to_labeled(const TokenizedSentence& sentence, std::string id);

// Rebuilds a TokenizedSentence (tokens joined by single spaces) carrying the
// labels and confidences of a labeled sentence.
TokenizedSentence to_tokenized(const LabeledSentence& sentence);

}  // namespace codemix

#endif  // CODEMIX_CONLL_H_
