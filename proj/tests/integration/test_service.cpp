// Copyright 2026 The Capacity Studio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "capstudio/io.hpp"
#include "capstudio/tools/cli.hpp"
#include "capstudio/tools/service.hpp"
#include "fixtures.hpp"

// Last: pulls in <resolv.h>, whose _res macro clashes with Eigen.
#include <httplib.h>

namespace capstudio::tools {
namespace {

using io::Json;
using io::OrderedJson;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override { start({}); }

  void TearDown() override { shutdown(); }

  void start(ServiceConfig config) {
    config.port = 0;
    service_ = std::make_unique<Service>(config);
    port_ = service_->bind();
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->listen(); });
    service_->server().wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void shutdown() {
    if (!service_) return;
    service_->stop();
    thread_.join();
    client_.reset();
    service_.reset();
  }

  static void expect_status(const httplib::Result& r, int status) {
    ASSERT_TRUE(r) << "no response";
    EXPECT_EQ(r->status, status) << r->body;
  }

  std::string create_session(const std::string& body = R"({"criteria": ["MIQ", "RS", "CX", "FX", "CT"]})") {
    const auto r = client_->Post("/sessions", body, "application/json");
    if (!r || r->status != 201) return {};
    return io::parse_json(r->body)["id"].get<std::string>();
  }

  httplib::Result put_constraints(const std::string& id, const std::string& body, httplib::Headers headers = {}) {
    return client_->Put("/sessions/" + id + "/constraints", headers, body, "application/json");
  }

  httplib::Result post(const std::string& path, const std::string& body = "{}", httplib::Headers headers = {}) {
    return client_->Post(path, headers, body, "application/json");
  }

  static std::string fixture_text(const std::string& name) { return io::dump(OrderedJson(test::load_json(name))); }

  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

std::string cli_capacity_bytes(const std::vector<std::string>& args) {
  const auto path = std::filesystem::temp_directory_path() / ("capstudio-http-" + std::to_string(::getpid()) + ".json");
  std::vector<std::string> full{"capstudio"};
  full.insert(full.end(), args.begin(), args.end());
  full.push_back("-o");
  full.push_back(path.string());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  if (run_cli(static_cast<int>(argv.size()), argv.data(), out, err) != kExitOk) return "cli failed: " + err.str();
  std::ifstream in(path, std::ios::binary);
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::filesystem::remove(path);
  return bytes;
}

TEST_F(ServiceTest, LinguisticTerms) {
  const auto r = client_->Get("/linguistic-terms");
  expect_status(r, 200);
  const auto doc = io::parse_json(r->body);
  EXPECT_EQ(doc["importance"]["range"][0].get<double>(), 0.9);
  EXPECT_FALSE(doc["synergy"]["terms"].empty());
}

TEST_F(ServiceTest, ReferenceSemanticSession) {
  const auto id = create_session();
  ASSERT_FALSE(id.empty());
  expect_status(post("/sessions/" + id + "/samples", fixture_text("learning-samples.json")), 200);
  const auto put = put_constraints(id, fixture_text("semantic-constraints.json"));
  expect_status(put, 200);
  EXPECT_EQ(io::parse_json(put->body)["revision"], 3);
  EXPECT_EQ(put->get_header_value("ETag"), "\"3\"");

  const auto r = post("/sessions/" + id + "/identify?method=semantic");
  expect_status(r, 200);
  const auto doc = io::parse_json(r->body);
  EXPECT_EQ(doc["method"], "semantic");
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_EQ(doc["revision"], 3);
  EXPECT_TRUE(doc["constraint_report"]["satisfied"].get<bool>());
  EXPECT_LE(doc["constraint_report"]["max_violation"].get<double>(), 1e-6);
  EXPECT_TRUE(io::capacity_from_json(doc["capacity"]).is_valid());

  // Identical bytes to the CLI for the same inputs.
  const auto ordered = OrderedJson::parse(r->body);
  EXPECT_EQ(io::dump(ordered["capacity"]),
            cli_capacity_bytes({"identify", "semantic", test::fixture_path("semantic-constraints.json"), "--samples",
                                test::fixture_path("learning-samples.json")}));
}

TEST_F(ServiceTest, EmptySessionProjectsToEquidistributed) {
  const auto id = create_session(R"({"n": 4})");
  ASSERT_FALSE(id.empty());
  const auto r = post("/sessions/" + id + "/identify?method=semantic");
  expect_status(r, 200);
  const auto c = io::capacity_from_json(io::parse_json(r->body)["capacity"]);
  const auto u0 = equidistributed(4);
  for (CriterionSet::Mask m = 0; m < 16; ++m) EXPECT_EQ(c[m], u0[m]);
}

TEST_F(ServiceTest, EditingKeepsEarlierResults) {
  const auto id = create_session();
  expect_status(post("/sessions/" + id + "/samples", fixture_text("learning-samples.json")), 200);
  expect_status(put_constraints(id, fixture_text("semantic-constraints.json")), 200);
  const auto first = post("/sessions/" + id + "/identify?method=semantic");
  expect_status(first, 200);
  const auto first_capacity = io::parse_json(first->body)["capacity"];

  const auto edit = put_constraints(id, R"({"constraints": [{"kind": "importance", "a": [1], "b": [2], "term": "A is more important than B"}]})");
  expect_status(edit, 200);
  EXPECT_EQ(io::parse_json(edit->body)["revision"], 4);
  const auto second = post("/sessions/" + id + "/identify?method=semantic");
  expect_status(second, 200);
  EXPECT_EQ(io::parse_json(second->body)["result_index"], 1);
  EXPECT_NE(io::parse_json(second->body)["capacity"], first_capacity);

  const auto old = client_->Get("/sessions/" + id + "/results/0");
  expect_status(old, 200);
  const auto doc = io::parse_json(old->body);
  EXPECT_EQ(doc["revision"], 3);
  EXPECT_TRUE(doc["stale"].get<bool>());
  EXPECT_EQ(doc["result"]["capacity"], first_capacity);

  const auto list = client_->Get("/sessions/" + id + "/results");
  expect_status(list, 200);
  EXPECT_EQ(io::parse_json(list->body)["results"].size(), 2u);
  expect_status(client_->Get("/sessions/" + id + "/results/7"), 404);
}

TEST_F(ServiceTest, RevisionConflict) {
  const auto id = create_session();
  const auto stale = httplib::Headers{{"If-Match", "\"7\""}};
  expect_status(put_constraints(id, "{}", stale), 409);
  expect_status(put_constraints(id, "{}", {{"If-Match", "\"1\""}}), 200);
  expect_status(put_constraints(id, "{}", {{"If-Match", "\"1\""}}), 409);
  expect_status(post("/sessions/" + id + "/identify?method=semantic", "{}", {{"If-Match", "\"1\""}}), 409);
}

TEST_F(ServiceTest, UnknownSessionAndBadRequests) {
  expect_status(client_->Get("/sessions/does-not-exist"), 404);
  expect_status(post("/sessions/does-not-exist/identify?method=semantic"), 404);
  expect_status(client_->Post("/sessions", "{not json", "application/json"), 400);
  expect_status(client_->Post("/sessions", R"({"n": 1})", "application/json"), 400);
  const auto id = create_session();
  expect_status(post("/sessions/" + id + "/identify"), 400);
  expect_status(post("/sessions/" + id + "/identify?method=magic"), 400);
  expect_status(put_constraints(id, R"({"bogus": 1})"), 400);
  expect_status(put_constraints(id, R"({"constraints": [{"kind": "importance", "a": [9], "b": [1], "term": "same level"}]})"), 400);
  expect_status(client_->Get("/sessions/" + id + "/indices"), 404);
}

TEST_F(ServiceTest, InfeasibleConstraintsGive422) {
  const auto id = create_session(R"({"n": 3})");
  const auto body = R"({"constraints": [
      {"kind": "dependence", "a": [1], "b": [2], "lo": 0.0, "hi": 0.0},
      {"kind": "synergy", "a": [1], "b": [2], "lo": 1.0, "hi": 1.0},
      {"kind": "dependence", "a": [1], "b": [3], "term": "independent"},
      {"kind": "importance", "a": [3], "b": [1], "term": "same level"}]})";
  expect_status(put_constraints(id, body), 200);
  const auto r = post("/sessions/" + id + "/identify?method=semantic");
  expect_status(r, 422);
  const auto doc = io::parse_json(r->body);
  EXPECT_GT(doc["report"]["max_violation"].get<double>(), 0.0);
  EXPECT_EQ(doc["report"]["conflicting_subset"].size(), 4u);
}

TEST_F(ServiceTest, SugenoMatchesCliAndRanks) {
  const auto id = create_session();
  OrderedJson body;
  body["densities"] = test::load_json("sugeno-densities.json");
  expect_status(put_constraints(id, io::dump(body)), 200);
  const auto r = post("/sessions/" + id + "/identify?method=sugeno");
  expect_status(r, 200);
  const auto ordered = OrderedJson::parse(r->body);
  EXPECT_EQ(io::dump(ordered["capacity"]),
            cli_capacity_bytes({"identify", "sugeno", test::fixture_path("sugeno-densities.json")}));

  const auto indices = client_->Get("/sessions/" + id + "/indices?method=sugeno");
  expect_status(indices, 200);
  EXPECT_NEAR(io::parse_json(indices->body)["indices"]["shapley"][1].get<double>(), 0.2422, 0.005);

  expect_status(post("/sessions/" + id + "/concepts", fixture_text("design-concepts.json")), 200);
  OrderedJson uploaded;
  uploaded["capacity"] = test::load_json("design-capacity.json");
  const auto ranked = post("/sessions/" + id + "/rank", io::dump(uploaded));
  expect_status(ranked, 200);
  const auto ranking = io::parse_json(ranked->body)["ranking"];
  EXPECT_EQ(ranking[0]["name"], "Concept III");
  EXPECT_EQ(ranking[3]["name"], "Concept II");
  const auto by_method = post("/sessions/" + id + "/rank", R"({"method": "sugeno"})");
  expect_status(by_method, 200);
  EXPECT_EQ(io::parse_json(by_method->body)["capacity_source"], "sugeno");
}

TEST_F(ServiceTest, LearningSession) {
  const auto id = create_session();
  expect_status(post("/sessions/" + id + "/samples", fixture_text("learning-samples.json")), 200);
  OrderedJson body;
  body["preferences"] = test::load_json("learning-preferences.json");
  expect_status(put_constraints(id, io::dump(body)), 200);
  const auto r = post("/sessions/" + id + "/identify?method=learn");
  expect_status(r, 200);
  const auto doc = io::parse_json(r->body);
  EXPECT_TRUE(doc["constraint_report"]["satisfied"].get<bool>());
  EXPECT_TRUE(doc.contains("fit_error"));
}

TEST_F(ServiceTest, DeleteAndCors) {
  const auto id = create_session();
  expect_status(client_->Delete("/sessions/" + id), 200);
  expect_status(client_->Get("/sessions/" + id), 404);
  const auto options = client_->Options("/sessions");
  expect_status(options, 204);
  EXPECT_EQ(options->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, SnapshotRestoresSessions) {
  shutdown();
  const auto snapshot = std::filesystem::temp_directory_path() / ("capstudio-snapshot-" + std::to_string(::getpid()) + ".json");
  std::filesystem::remove(snapshot);
  ServiceConfig config;
  config.snapshot = snapshot;
  start(config);
  const auto id = create_session();
  expect_status(post("/sessions/" + id + "/samples", fixture_text("learning-samples.json")), 200);
  shutdown();
  start(config);
  const auto r = client_->Get("/sessions/" + id);
  expect_status(r, 200);
  const auto doc = io::parse_json(r->body);
  EXPECT_EQ(doc["revision"], 2);
  EXPECT_EQ(doc["samples"].size(), 10u);
  std::filesystem::remove(snapshot);
}

}  // namespace
}  // namespace capstudio::tools
