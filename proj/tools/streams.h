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

// Stream helpers shared by the subcommands.

#ifndef CODEMIX_TOOLS_STREAMS_H_
#define CODEMIX_TOOLS_STREAMS_H_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>

namespace codemix::cli {

// Reads from a file, or stdin when path is empty or "-".
class InputSource {
 public:
  explicit InputSource(const std::string& path);
  std::istream& stream() { return *in_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* in_;
};

// Writes to stdout when path is empty, otherwise to a temporary sibling file
// that commit() renames into place.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path);
  ~OutputSink();
  std::ostream& stream() { return *out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
  bool committed_ = false;
};

}  // namespace codemix::cli

#endif  // CODEMIX_TOOLS_STREAMS_H_
