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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "codemix/error.h"
#include "httplib.h"
#include "json.hpp"

namespace codemix {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A state of held-back sentences with three tokens each and one pending
// item per sentence (token 1).
fs::path make_state(const std::string& name, std::size_t sentences) {
  const fs::path dir = fs::temp_directory_path() / ("codemix_review_" + name);
  fs::remove_all(dir);
  BootstrapState state;
  state.iteration = 3;
  state.model_path = "model-v3.bin";
  state.seed_set = {{"seed0", {{"hello", Label::kEn}, {"yaar", Label::kHi}}}};
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::string id = "h" + std::to_string(i);
    state.held_back.push_back(
        {id, {{"kal", Label::kHi, 0.97}, {"w" + std::to_string(i), Label::kEn, 0.55},
              {"!", Label::kOther, 1.0}}});
    state.queue.push_back({id, 1, "w" + std::to_string(i), Label::kEn, 0.55,
                           std::nullopt, ReviewStatus::kPending});
  }
  save_state(dir, state);
  return dir;
}

TEST(ReviewStore, PagingAndApply) {
  const fs::path dir = make_state("store", 5);
  ReviewStore store(dir);
  auto page = store.pending(2, 0);
  ASSERT_EQ(page.entries.size(), 2u);
  EXPECT_EQ(page.entries[0].item.sentence_id, "h0");
  EXPECT_EQ(page.entries[0].context.tokens.size(), 3u);
  ASSERT_TRUE(page.next_cursor.has_value());
  auto page2 = store.pending(10, *page.next_cursor);
  EXPECT_EQ(page2.entries.size(), 3u);
  EXPECT_FALSE(page2.next_cursor.has_value());

  auto ok = store.apply({"h1", 1, Label::kHi, false});
  EXPECT_EQ(ok.status, ReviewStore::ApplyStatus::kOk);
  EXPECT_EQ(ok.item->status, ReviewStatus::kCorrected);
  EXPECT_EQ(store.apply({"h1", 0, Label::kHi, false}).status,
            ReviewStore::ApplyStatus::kNotFound);
  EXPECT_EQ(store.apply({"h2", 1, std::nullopt, false}).status,
            ReviewStore::ApplyStatus::kInvalid);
  EXPECT_EQ(store.apply({"h2", 1, Label::kHi, true}).status,
            ReviewStore::ApplyStatus::kInvalid);
  EXPECT_EQ(store.apply({"h2", 1, Label::kEn, true}).status,
            ReviewStore::ApplyStatus::kOk);
  auto progress = store.progress();
  EXPECT_EQ(progress.pending, 3u);
  EXPECT_EQ(progress.corrected, 1u);
  EXPECT_EQ(progress.confirmed, 1u);
  EXPECT_EQ(progress.iteration, 3);

  // Persisted atomically to the queue file.
  BootstrapState reloaded = load_state(dir);
  EXPECT_EQ(reloaded.queue[1].corrected, Label::kHi);
  EXPECT_EQ(reloaded.queue[2].status, ReviewStatus::kConfirmed);
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
  }
  fs::remove_all(dir);
}

TEST(ReviewStore, RejectsCorruptState) {
  const fs::path dir = make_state("corrupt", 2);
  std::ofstream(dir / "queue.tsv", std::ios::trunc)
      << "sentence_id\ttoken_index\ttoken_text\tpredicted\tconfidence\tcorrected\tstatus\n"
      << "nope\t0\tx\tEN\t0.5\t\tPending\n";
  EXPECT_THROW(ReviewStore store(dir), CorruptState);
  EXPECT_THROW(ReviewStore store(dir / "absent"), CorruptState);
  fs::remove_all(dir);
}

TEST(BindAddress, Parse) {
  EXPECT_EQ(parse_bind_address("127.0.0.1:8080"), (std::pair<std::string, int>{"127.0.0.1", 8080}));
  EXPECT_THROW(parse_bind_address("localhost"), InvalidArgument);
  EXPECT_THROW(parse_bind_address("localhost:99999"), InvalidArgument);
}

class ReviewHttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = make_state("http", 100);
    ui_ = dir_ / "ui";
    fs::create_directories(ui_);
    std::ofstream(ui_ / "index.html") << "<html>review</html>";
    store_ = std::make_unique<ReviewStore>(dir_);
    server_ = std::make_unique<ReviewServer>(*store_, ui_);
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 200 && !server_->running(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
    fs::remove_all(dir_);
  }

  httplib::Result post(const json& body) {
    return client_->Post("/corrections", body.dump(), "application/json");
  }
  json progress() {
    auto res = client_->Get("/progress");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    return json::parse(res->body);
  }

  fs::path dir_, ui_;
  std::unique_ptr<ReviewStore> store_;
  std::unique_ptr<ReviewServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ReviewHttpTest, QueueReturnsItemsWithContext) {
  auto res = client_->Get("/queue?limit=100");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->get_header_value("Content-Type").find("application/json"), std::string::npos);
  json body = json::parse(res->body);
  ASSERT_EQ(body["items"].size(), 100u);
  EXPECT_TRUE(body["cursor"].is_null());
  const json& first = body["items"][0];
  EXPECT_EQ(first["sentence_id"], "h0");
  EXPECT_EQ(first["token_index"], 1);
  EXPECT_EQ(first["status"], "Pending");
  EXPECT_EQ(first["context"]["tokens"].size(), 3u);
  EXPECT_EQ(first["context"]["tokens"][1]["text"], "w0");

  auto paged = json::parse(client_->Get("/queue?limit=30")->body);
  EXPECT_EQ(paged["items"].size(), 30u);
  ASSERT_TRUE(paged["cursor"].is_string());
  auto next = json::parse(
      client_->Get(("/queue?limit=100&cursor=" + paged["cursor"].get<std::string>()).c_str())->body);
  EXPECT_EQ(next["items"].size(), 70u);
  EXPECT_EQ(next["items"][0]["sentence_id"], "h30");
  EXPECT_EQ(client_->Get("/queue?limit=abc")->status, 400);
}

TEST_F(ReviewHttpTest, CorrectionLifecycle) {
  auto res = post({{"sentence_id", "h0"}, {"token_index", 1}, {"label", "HI"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["status"], "Corrected");
  // Posting the same correction twice leaves one corrected item.
  EXPECT_EQ(post({{"sentence_id", "h0"}, {"token_index", 1}, {"label", "HI"}})->status, 200);
  auto p = progress();
  EXPECT_EQ(p["pending"], 99);
  EXPECT_EQ(p["corrected"], 1);
  EXPECT_EQ(p["iteration"], 3);
  auto queue = json::parse(client_->Get("/queue?limit=100")->body);
  EXPECT_EQ(queue["items"].size(), 99u);
  EXPECT_EQ(queue["items"][0]["sentence_id"], "h1");
}

TEST_F(ReviewHttpTest, Validation) {
  auto bad_label = post({{"sentence_id", "h0"}, {"token_index", 1}, {"label", "FR"}});
  EXPECT_EQ(bad_label->status, 422);
  EXPECT_TRUE(json::parse(bad_label->body).contains("error"));
  EXPECT_EQ(post({{"token_index", 1}, {"label", "EN"}})->status, 422);
  EXPECT_EQ(post({{"sentence_id", "h0"}, {"token_index", -1}, {"label", "EN"}})->status, 422);
  EXPECT_EQ(post({{"sentence_id", "h0"}, {"token_index", 1}})->status, 422);
  EXPECT_EQ(post({{"sentence_id", "zz"}, {"token_index", 1}, {"label", "EN"}})->status, 404);
  auto malformed = client_->Post("/corrections", "{not json", "application/json");
  EXPECT_EQ(malformed->status, 400);
  EXPECT_EQ(progress()["pending"], 100);
}

TEST_F(ReviewHttpTest, HundredDecisionsThenMerge) {
  std::size_t last_pending = 100;
  for (int i = 0; i < 100; ++i) {
    json body = {{"sentence_id", "h" + std::to_string(i)}, {"token_index", 1}};
    if (i % 2) {
      body["confirm"] = true;
    } else {
      body["label"] = "HI";
    }
    ASSERT_EQ(post(body)->status, 200) << i;
    const std::size_t pending = progress()["pending"].get<std::size_t>();
    EXPECT_LE(pending, last_pending);
    last_pending = pending;
  }
  auto p = progress();
  EXPECT_EQ(p["pending"], 0);
  EXPECT_EQ(p["corrected"], 50);
  EXPECT_EQ(p["confirmed"], 50);
  BootstrapState state = load_state(dir_);
  auto merged = merge_corrections(state.held_back, state.queue);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    EXPECT_EQ(merged[i].tokens[1].label, i % 2 ? Label::kEn : Label::kHi);
  }
}

TEST_F(ReviewHttpTest, ServesUiAssets) {
  auto res = client_->Get("/ui/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>review</html>");
}

}  // namespace
}  // namespace codemix
