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

#ifndef CODEMIX_REVIEW_SERVICE_H_
#define CODEMIX_REVIEW_SERVICE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "codemix/bootstrap.h"
#include "codemix/conll.h"

namespace codemix {

struct Correction {
  std::string sentence_id;
  std::size_t token_index = 0;
  std::optional<Label> label;
  bool confirm = false;
};

struct ReviewProgress {
  std::size_t pending = 0;
  std::size_t corrected = 0;
  std::size_t confirmed = 0;
  int iteration = 0;
};

struct QueueEntry {
  ReviewItem item;
  LabeledSentence context;
};

struct QueuePage {
  std::vector<QueueEntry> entries;
  std::optional<std::size_t> next_cursor;
};

// Owns the review queue of a bootstrap state directory. Reads take a shared
// snapshot under the lock; every mutation rewrites queue.tsv atomically
// before returning.
class ReviewStore {
 public:
  // Throws CorruptState if the directory does not hold a readable state.
  explicit ReviewStore(std::filesystem::path state_dir);

  // Pending items at queue positions >= cursor, at most limit of them.
  QueuePage pending(std::size_t limit, std::size_t cursor) const;

  enum class ApplyStatus { kOk, kNotFound, kInvalid };
  struct ApplyResult {
    ApplyStatus status = ApplyStatus::kOk;
    std::string message;
    std::optional<ReviewItem> item;
  };
  ApplyResult apply(const Correction& correction);

  ReviewProgress progress() const;
  std::vector<ReviewItem> snapshot() const;

 private:
  std::filesystem::path dir_;
  BootstrapState state_;
  mutable std::mutex mu_;
};

// HTTP front end:
//   GET  /queue?limit=N&cursor=C  -> {"items": [...], "cursor": "C" | null}
//   POST /corrections             <- {"sentence_id", "token_index", "label",
//                                     "confirm"}
//   GET  /progress                -> {"pending", "corrected", "confirmed",
//                                     "iteration"}
//   /ui/*                         static files, when a directory is given
class ReviewServer {
 public:
  explicit ReviewServer(ReviewStore& store,
                        std::optional<std::filesystem::path> ui_dir = {});
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Binds host:port; port 0 picks a free port. Throws IoError on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Parses "host:port" (port required). Throws InvalidArgument.
std::pair<std::string, int> parse_bind_address(const std::string& address);

}  // namespace codemix

#endif  // CODEMIX_REVIEW_SERVICE_H_
