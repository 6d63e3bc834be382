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

#include "codemix/corpus_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include <unistd.h>

#include "codemix/error.h"
#include "codemix/rng.h"
#include "codemix/utf8.h"

namespace codemix {

SentenceReader::SentenceReader(const std::string& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      in_(owned_.get()) {
  if (!*owned_) throw FileNotFound(path);
}

SentenceReader::SentenceReader(std::istream& in) : in_(&in) {}

bool SentenceReader::next(std::string& line) {
  while (std::getline(*in_, line)) {
    ++line_no_cursor_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!utf8::is_valid(line)) {
      errors_.push_back({line_no_cursor_, "invalid UTF-8"});
      continue;
    }
    line_no_ = line_no_cursor_;
    return true;
  }
  if (in_->bad()) {
    throw IoError("read failed after line " + std::to_string(line_no_cursor_));
  }
  return false;
}

namespace {

RawCorpus drain(SentenceReader& reader) {
  RawCorpus corpus;
  std::string line;
  while (reader.next(line)) corpus.sentences.push_back(line);
  corpus.errors = reader.errors();
  corpus.line_count = reader.lines_read();
  return corpus;
}

}  // namespace

RawCorpus read_sentences(const std::string& path) {
  SentenceReader reader(path);
  return drain(reader);
}

RawCorpus read_sentences(std::istream& in) {
  SentenceReader reader(in);
  return drain(reader);
}

DedupResult dedup(std::vector<std::string> sentences) {
  DedupResult result;
  std::unordered_set<std::string_view> seen;
  seen.reserve(sentences.size());
  // Views point into the input vector, which is not resized below.
  std::vector<bool> keep(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    keep[i] = seen.insert(sentences[i]).second;
  }
  seen.clear();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (keep[i]) {
      result.sentences.push_back(std::move(sentences[i]));
    } else {
      ++result.removed;
    }
  }
  return result;
}

std::vector<std::string> shuffle(std::vector<std::string> sentences,
                                 std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(sentences));
  return sentences;
}

std::size_t valid_quota(std::size_t n, double valid_fraction) {
  if (!(valid_fraction >= 0.0 && valid_fraction < 1.0)) {
    throw InvalidArgument("valid_fraction must be in [0, 1)");
  }
  auto quota = static_cast<std::size_t>(
      std::llround(valid_fraction * static_cast<double>(n)));
  return std::min(quota, n);
}

std::vector<bool> split_assignment(std::size_t n, const SplitSpec& spec) {
  const std::size_t quota = valid_quota(n, spec.valid_fraction);
  std::vector<bool> valid(n, false);
  if (quota == 0) return valid;

  const std::uint64_t key_seed = mix64(spec.seed ^ 0x5851F42D4C957F2Dull);
  std::vector<std::pair<std::uint64_t, std::size_t>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = {mix64(key_seed + mix64(i)), i};
  }
  std::nth_element(keys.begin(), keys.begin() + (quota - 1), keys.end());
  for (std::size_t k = 0; k < quota; ++k) valid[keys[k].second] = true;
  return valid;
}

Split split_corpus(const std::vector<std::string>& sentences,
                   const SplitSpec& spec) {
  auto assignment = split_assignment(sentences.size(), spec);
  Split split;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    (assignment[i] ? split.valid : split.train).push_back(sentences[i]);
  }
  return split;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace codemix
