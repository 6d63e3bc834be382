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

#ifndef CODEMIX_ERROR_H_
#define CODEMIX_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codemix {

// Base class of every error raised by the library. The CLI maps subclasses
// of DataError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input data (files, corpora, model blobs).
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or argument supplied by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public DataError {
 public:
  explicit FileNotFound(const std::string& path)
      : DataError("file not found: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class Utf8Error : public DataError {
 public:
  explicit Utf8Error(std::size_t line_no)
      : DataError("invalid UTF-8 at line " + std::to_string(line_no)),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

// Syntax error in a text format (labeled corpus, queue TSV, manifest).
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class LabelOutsideAlphabet : public DataError {
 public:
  explicit LabelOutsideAlphabet(const std::string& token)
      : DataError("label outside {EN, HI, OTHER}: '" + token + "'"),
        token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class EmptyCorpus : public DataError {
 public:
  EmptyCorpus() : DataError("corpus has no trainable word tokens") {}
};

class FormatVersionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class ChecksumMismatch : public DataError {
 public:
  using DataError::DataError;
};

class PendingItemsRemain : public DataError {
 public:
  explicit PendingItemsRemain(std::size_t count)
      : DataError(std::to_string(count) + " review item(s) still pending"),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

class AlignmentMismatch : public DataError {
 public:
  explicit AlignmentMismatch(const std::string& sentence_id)
      : DataError("gold and predicted corpora disagree at sentence " +
                  sentence_id),
        sentence_id_(sentence_id) {}
  const std::string& sentence_id() const { return sentence_id_; }

 private:
  std::string sentence_id_;
};

class UnlabeledToken : public DataError {
 public:
  explicit UnlabeledToken(std::size_t index)
      : DataError("token " + std::to_string(index) + " has no label"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class CorruptState : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace codemix

#endif  // CODEMIX_ERROR_H_
