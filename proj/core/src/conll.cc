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

#include "codemix/conll.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "codemix/corpus_io.h"
#include "codemix/error.h"
#include "codemix/utf8.h"

namespace codemix {

namespace {

constexpr std::string_view kIdComment = "# id = ";

std::string format_confidence(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

double parse_confidence(const std::string& field, std::size_t line_no) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    fail(line_no, "bad confidence '" + field + "'");
  }
  if (consumed != field.size() || !(value >= 0.0 && value <= 1.0)) {
    fail(line_no, "bad confidence '" + field + "'");
  }
  return value;
}

}  // namespace

LabeledCorpus read_conll(std::istream& in, const std::string& id_prefix) {
  LabeledCorpus corpus;
  LabeledSentence current;
  std::optional<std::string> pending_id;
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (current.tokens.empty()) return;
    current.id = pending_id.value_or(id_prefix + std::to_string(corpus.size() + 1));
    pending_id.reset();
    corpus.push_back(std::move(current));
    current = LabeledSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (!utf8::is_valid(line)) fail(line_no, "invalid UTF-8");
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      if (line.rfind(kIdComment, 0) == 0) {
        flush();
        pending_id = line.substr(kIdComment.size());
        if (pending_id->empty()) fail(line_no, "empty sentence id");
        continue;
      }
      if (line[0] == '#' && line.size() > 1 && line[1] == ' ') continue;
      fail(line_no, "expected token<TAB>label");
    }
    LabeledToken token;
    token.text = line.substr(0, tab);
    if (token.text.empty()) fail(line_no, "empty token");
    std::string rest = line.substr(tab + 1);
    std::string label_field = rest;
    const std::size_t tab2 = rest.find('\t');
    if (tab2 != std::string::npos) {
      label_field = rest.substr(0, tab2);
      token.confidence = parse_confidence(rest.substr(tab2 + 1), line_no);
    }
    token.label = require_label(label_field);
    current.tokens.push_back(std::move(token));
  }
  if (in.bad()) throw IoError("read failed at line " + std::to_string(line_no));
  flush();
  return corpus;
}

LabeledCorpus read_conll_file(const std::string& path,
                              const std::string& id_prefix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  return read_conll(in, id_prefix);
}

void write_conll(std::ostream& out, const LabeledCorpus& corpus,
                 bool write_ids, bool write_confidence) {
  bool first = true;
  for (const LabeledSentence& sentence : corpus) {
    if (sentence.tokens.empty()) continue;
    if (!first) out << '\n';
    first = false;
    if (write_ids) out << kIdComment << sentence.id << '\n';
    for (const LabeledToken& token : sentence.tokens) {
      out << token.text << '\t' << label_name(token.label);
      if (write_confidence && token.confidence) {
        out << '\t' << format_confidence(*token.confidence);
      }
      out << '\n';
    }
  }
}

void write_conll_file(const std::string& path, const LabeledCorpus& corpus,
                      bool write_ids, bool write_confidence) {
  std::ostringstream buf;
  write_conll(buf, corpus, write_ids, write_confidence);
  write_file_atomic(path, buf.str());
}

LabeledSentence to_labeled(const TokenizedSentence& sentence, std::string id) {
  LabeledSentence out;
  out.id = std::move(id);
  out.tokens.reserve(sentence.tokens.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& token = sentence.tokens[i];
    if (!token.label) throw UnlabeledToken(i);
    out.tokens.push_back({token.text, *token.label, token.confidence});
  }
  return out;
}

TokenizedSentence to_tokenized(const LabeledSentence& sentence) {
  TokenizedSentence out;
  out.tokens.reserve(sentence.tokens.size());
  for (const LabeledToken& lt : sentence.tokens) {
    if (!out.raw.empty()) out.raw.push_back(' ');
    Token token;
    token.span.begin = out.raw.size();
    out.raw += lt.text;
    token.span.end = out.raw.size();
    token.text = lt.text;
    token.kind = token_kind(lt.text);
    token.label = lt.label;
    token.confidence = lt.confidence;
    out.tokens.push_back(std::move(token));
  }
  return out;
}

}  // namespace codemix
