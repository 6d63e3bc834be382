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

#ifndef CODEMIX_CORPUS_IO_H_
#define CODEMIX_CORPUS_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codemix {

struct LineError {
  std::size_t line_no;  // 1-based
  std::string message;
};

// Single-consumer stream over a one-sentence-per-line UTF-8 source. Empty
// lines are skipped; lines that are not valid UTF-8 are recorded in errors()
// and skipped rather than terminating the stream.
class SentenceReader {
 public:
  // Throws FileNotFound if path cannot be opened.
  explicit SentenceReader(const std::string& path);
  // Reads from a caller-owned stream.
  explicit SentenceReader(std::istream& in);

  SentenceReader(const SentenceReader&) = delete;
  SentenceReader& operator=(const SentenceReader&) = delete;

  // Returns false at end of input. line receives the sentence, trailing
  // newline stripped.
  bool next(std::string& line);

  // 1-based number of the line most recently returned.
  std::size_t line_no() const { return line_no_; }
  // Physical lines consumed so far (including skipped ones).
  std::size_t lines_read() const { return line_no_cursor_; }
  const std::vector<LineError>& errors() const { return errors_; }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  std::size_t line_no_ = 0;
  std::size_t line_no_cursor_ = 0;
  std::vector<LineError> errors_;
};

// Fully materialized corpus.
struct RawCorpus {
  std::vector<std::string> sentences;
  std::vector<LineError> errors;
  std::size_t line_count = 0;  // physical lines in the source
};

RawCorpus read_sentences(const std::string& path);
RawCorpus read_sentences(std::istream& in);

struct DedupResult {
  std::vector<std::string> sentences;
  std::size_t removed = 0;
};

// Keeps the first occurrence of every exact line.
DedupResult dedup(std::vector<std::string> sentences);

// Seeded in-memory Fisher-Yates permutation.
std::vector<std::string> shuffle(std::vector<std::string> sentences,
                                 std::uint64_t seed);

struct SplitSpec {
  double valid_fraction = 0.097;
  std::uint64_t seed = 0;
};

// Exact validation quota for a corpus of n lines: round(valid_fraction * n).
std::size_t valid_quota(std::size_t n, double valid_fraction);

// Per-line bit saying whether line i goes to the validation side. Lines are
// ranked by a keyed hash of (index, seed) and the valid_quota smallest keys
// are chosen, so the count is exact and the choice depends only on the
// index, the seed and n.
std::vector<bool> split_assignment(std::size_t n, const SplitSpec& spec);

struct Split {
  std::vector<std::string> train;
  std::vector<std::string> valid;
};

// Both halves keep the input order. Throws InvalidArgument unless
// 0 <= valid_fraction < 1.
Split split_corpus(const std::vector<std::string>& sentences,
                   const SplitSpec& spec);

// Writes content to a sibling temporary file and renames it over path, so
// readers observe either the old or the new file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Reads a whole file. Throws FileNotFound.
std::string read_file(const std::filesystem::path& path);

}  // namespace codemix

#endif  // CODEMIX_CORPUS_IO_H_
