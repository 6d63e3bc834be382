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

#include "streams.h"

#include <iostream>
#include <system_error>

#include <unistd.h>

#include "codemix/error.h"

namespace codemix::cli {

InputSource::InputSource(const std::string& path) : in_(&std::cin) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file_) throw FileNotFound(path);
  in_ = file_.get();
}

OutputSink::OutputSink(const std::string& path) : out_(&std::cout) {
  if (path.empty() || path == "-") return;
  path_ = path;
  tmp_ = path_;
  tmp_ += ".tmp." + std::to_string(::getpid());
  file_ = std::make_unique<std::ofstream>(tmp_, std::ios::binary | std::ios::trunc);
  if (!*file_) throw IoError("cannot write " + path);
  out_ = file_.get();
}

OutputSink::~OutputSink() {
  if (file_ && !committed_) {
    file_->close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void OutputSink::commit() {
  out_->flush();
  if (!*out_) throw IoError("write failed for " + (file_ ? path_.string() : "stdout"));
  if (!file_) return;
  file_->close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw IoError("cannot replace " + path_.string() + ": " + ec.message());
  committed_ = true;
}

}  // namespace codemix::cli
