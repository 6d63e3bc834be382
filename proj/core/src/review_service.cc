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

#include "codemix/review_service.h"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "httplib.h"
#include "json.hpp"

#include "codemix/error.h"

namespace codemix {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultLimit = 100;
constexpr std::size_t kMaxLimit = 10000;
constexpr char kJson[] = "application/json; charset=utf-8";

json item_json(const ReviewItem& item) {
  return {{"sentence_id", item.sentence_id},
          {"token_index", item.token_index},
          {"token_text", item.token_text},
          {"predicted", label_name(item.predicted)},
          {"confidence", item.confidence},
          {"corrected",
           item.corrected ? json(label_name(*item.corrected)) : json(nullptr)},
          {"status", review_status_name(item.status)}};
}

json context_json(const LabeledSentence& sentence) {
  json tokens = json::array();
  for (const LabeledToken& token : sentence.tokens) {
    tokens.push_back({{"text", token.text},
                      {"predicted", label_name(token.label)},
                      {"confidence", token.confidence ? json(*token.confidence)
                                                      : json(nullptr)}});
  }
  return {{"sentence_id", sentence.id}, {"tokens", tokens}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

std::optional<std::size_t> parse_size(const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

ReviewStore::ReviewStore(std::filesystem::path state_dir)
    : dir_(std::move(state_dir)) {
  try {
    state_ = load_state(dir_);
  } catch (const CorruptState&) {
    throw;
  } catch (const Error& e) {
    throw CorruptState(e.what());
  }
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t s = 0; s < state_.held_back.size(); ++s) {
    ids[state_.held_back[s].id] = s;
  }
  for (const ReviewItem& item : state_.queue) {
    auto it = ids.find(item.sentence_id);
    if (it == ids.end() ||
        item.token_index >= state_.held_back[it->second].tokens.size()) {
      throw CorruptState("queue item references missing sentence " +
                         item.sentence_id);
    }
  }
}

QueuePage ReviewStore::pending(std::size_t limit, std::size_t cursor) const {
  std::lock_guard<std::mutex> lock(mu_);
  QueuePage page;
  std::size_t i = std::min(cursor, state_.queue.size());
  for (; i < state_.queue.size() && page.entries.size() < limit; ++i) {
    const ReviewItem& item = state_.queue[i];
    if (item.status != ReviewStatus::kPending) continue;
    auto sentence = std::find_if(
        state_.held_back.begin(), state_.held_back.end(),
        [&](const LabeledSentence& s) { return s.id == item.sentence_id; });
    page.entries.push_back({item, *sentence});
  }
  for (std::size_t j = i; j < state_.queue.size(); ++j) {
    if (state_.queue[j].status == ReviewStatus::kPending) {
      page.next_cursor = i;
      break;
    }
  }
  return page;
}

ReviewStore::ApplyResult ReviewStore::apply(const Correction& correction) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = std::find_if(state_.queue.begin(), state_.queue.end(),
                         [&](const ReviewItem& item) {
                           return item.sentence_id == correction.sentence_id &&
                                  item.token_index == correction.token_index;
                         });
  if (it == state_.queue.end()) {
    return {ApplyStatus::kNotFound, "no review item for that token", {}};
  }
  ReviewItem updated = *it;
  if (correction.confirm) {
    if (correction.label && *correction.label != updated.predicted) {
      return {ApplyStatus::kInvalid,
              "confirm:true conflicts with a label different from the prediction",
              {}};
    }
    updated.status = ReviewStatus::kConfirmed;
    updated.corrected.reset();
  } else if (correction.label) {
    updated.status = ReviewStatus::kCorrected;
    updated.corrected = *correction.label;
  } else {
    return {ApplyStatus::kInvalid, "label is required unless confirm is true", {}};
  }
  const ReviewItem previous = *it;
  *it = updated;
  try {
    save_queue(dir_, state_.queue);
  } catch (...) {
    *it = previous;
    throw;
  }
  return {ApplyStatus::kOk, "", updated};
}

ReviewProgress ReviewStore::progress() const {
  std::lock_guard<std::mutex> lock(mu_);
  ReviewProgress p;
  p.iteration = state_.iteration;
  for (const ReviewItem& item : state_.queue) {
    switch (item.status) {
      case ReviewStatus::kPending:
        ++p.pending;
        break;
      case ReviewStatus::kCorrected:
        ++p.corrected;
        break;
      case ReviewStatus::kConfirmed:
        ++p.confirmed;
        break;
    }
  }
  return p;
}

std::vector<ReviewItem> ReviewStore::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_.queue;
}

class ReviewServer::Impl {
 public:
  Impl(ReviewStore& store, std::optional<std::filesystem::path> ui_dir)
      : store_(store) {
    server_.Get("/queue", [this](const httplib::Request& req,
                                 httplib::Response& res) { get_queue(req, res); });
    server_.Post("/corrections",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   post_correction(req, res);
                 });
    server_.Get("/progress", [this](const httplib::Request&,
                                    httplib::Response& res) {
      const ReviewProgress p = store_.progress();
      send_json(res, 200,
                {{"pending", p.pending},
                 {"corrected", p.corrected},
                 {"confirmed", p.confirmed},
                 {"iteration", p.iteration}});
    });
    if (ui_dir) server_.set_mount_point("/ui", ui_dir->string());
    server_.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string message = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            message = e.what();
          } catch (...) {
          }
          send_error(res, 500, message);
        });
  }

  httplib::Server server_;

 private:
  void get_queue(const httplib::Request& req, httplib::Response& res) {
    std::size_t limit = kDefaultLimit;
    std::size_t cursor = 0;
    if (req.has_param("limit")) {
      auto v = parse_size(req.get_param_value("limit"));
      if (!v || *v == 0) return send_error(res, 400, "limit must be a positive integer");
      limit = std::min(*v, kMaxLimit);
    }
    if (req.has_param("cursor")) {
      auto v = parse_size(req.get_param_value("cursor"));
      if (!v) return send_error(res, 400, "malformed cursor");
      cursor = *v;
    }
    const QueuePage page = store_.pending(limit, cursor);
    json items = json::array();
    for (const QueueEntry& entry : page.entries) {
      json item = item_json(entry.item);
      item["context"] = context_json(entry.context);
      items.push_back(std::move(item));
    }
    send_json(res, 200,
              {{"items", items},
               {"cursor", page.next_cursor ? json(std::to_string(*page.next_cursor))
                                           : json(nullptr)}});
  }

  void post_correction(const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      return send_error(res, 400, "body must be a JSON object");
    }
    Correction correction;
    if (!body.contains("sentence_id") || !body["sentence_id"].is_string()) {
      return send_error(res, 422, "sentence_id (string) is required");
    }
    correction.sentence_id = body["sentence_id"].get<std::string>();
    if (!body.contains("token_index") || !body["token_index"].is_number_unsigned()) {
      return send_error(res, 422, "token_index (non-negative integer) is required");
    }
    correction.token_index = body["token_index"].get<std::size_t>();
    if (body.contains("label") && !body["label"].is_null()) {
      if (!body["label"].is_string()) {
        return send_error(res, 422, "label must be one of EN, HI, OTHER");
      }
      auto label = parse_label(body["label"].get<std::string>());
      if (!label) return send_error(res, 422, "label must be one of EN, HI, OTHER");
      correction.label = *label;
    }
    if (body.contains("confirm")) {
      if (!body["confirm"].is_boolean()) {
        return send_error(res, 422, "confirm must be a boolean");
      }
      correction.confirm = body["confirm"].get<bool>();
    }
    const ReviewStore::ApplyResult result = store_.apply(correction);
    switch (result.status) {
      case ReviewStore::ApplyStatus::kOk:
        return send_json(res, 200, item_json(*result.item));
      case ReviewStore::ApplyStatus::kNotFound:
        return send_error(res, 404, result.message);
      case ReviewStore::ApplyStatus::kInvalid:
        return send_error(res, 422, result.message);
    }
  }

  ReviewStore& store_;
};

ReviewServer::ReviewServer(ReviewStore& store,
                           std::optional<std::filesystem::path> ui_dir)
    : impl_(std::make_unique<Impl>(store, std::move(ui_dir))) {}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server_.bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server_.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ReviewServer::listen() { impl_->server_.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_) impl_->server_.stop();
}

bool ReviewServer::running() const { return impl_->server_.is_running(); }

std::pair<std::string, int> parse_bind_address(const std::string& address) {
  const std::size_t colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw InvalidArgument("bind address must be host:port");
  }
  auto port = parse_size(address.substr(colon + 1));
  if (!port || *port > 65535) throw InvalidArgument("invalid port in " + address);
  return {address.substr(0, colon), static_cast<int>(*port)};
}

}  // namespace codemix
