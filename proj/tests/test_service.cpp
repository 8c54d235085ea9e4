#include <chrono>
#include <thread>

#include <gtest/gtest.h>

#include "qdilog/http_server.hpp"
#include "qdilog/service.hpp"

using namespace qdilog;
using service::handle;
using json = nlohmann::json;

namespace {

const json a2 = {{"n", 2}, {"arrows", {{1, 2, 1}}}};

json initial_a2() {
  const auto r = handle("/frame", json{{"quiver", a2}}.dump());
  EXPECT_EQ(r.status, 200);
  return r.body;
}

}  // namespace

TEST(Service, FrameBuildsThePrincipalExtension) {
  const json f = initial_a2();
  EXPECT_EQ(f["n"], 2);
  EXPECT_EQ(f["b"], json({{0, 1, 1, 0}, {-1, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}));
}

TEST(Service, MutateColorsFollowTheA2Figure) {
  const auto r = handle("/mutate", json{{"framed", initial_a2()}, {"k", 1}}.dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["colors"], json({"red", "green"}));
  EXPECT_EQ(r.body["beta"], json({1, 0}));
  EXPECT_EQ(r.body["eps"], 1);
  EXPECT_EQ(r.body["maximal"], false);

  json f = r.body["framed"];
  const auto r2 = handle("/mutate", json{{"framed", f}, {"k", 2}}.dump());
  EXPECT_EQ(r2.body["colors"], json({"red", "red"}));
  const auto r3 = handle("/mutate", json{{"framed", r2.body["framed"]}, {"k", 1}}.dump());
  EXPECT_EQ(r3.body["maximal"], false);
  const auto r4 = handle("/mutate", json{{"framed", r2.body["framed"]}, {"k", 2}}.dump());
  EXPECT_EQ(r4.body["eps"], -1);
}

TEST(Service, MaximalAfterTwoSteps) {
  json g = initial_a2();
  json last;
  for (int k : {1, 2}) {
    last = handle("/mutate", json{{"framed", g}, {"k", k}}.dump()).body;
    g = last["framed"];
  }
  EXPECT_EQ(last["colors"], json({"red", "red"}));
  EXPECT_EQ(last["maximal"], true);
  EXPECT_EQ(handle("/mutate", json{{"framed", initial_a2()}, {"k", 2}}.dump()).body["maximal"], false);
}

TEST(Service, EvalAgreesOnThePentagonPair) {
  const auto e1 = handle("/eval", json{{"quiver", a2}, {"seq", {1, 2}}, {"D", 4}}.dump());
  const auto e2 = handle("/eval", json{{"quiver", a2}, {"seq", {2, 1, 2}}, {"D", 4}}.dump());
  ASSERT_EQ(e1.status, 200);
  EXPECT_EQ(e1.body, e2.body);
}

TEST(Service, CompareReportsIsoAndEquality) {
  const auto r = handle("/compare", json{{"quiver", a2}, {"seq1", {1, 2}}, {"seq2", {2, 1, 2}}, {"D", 4}}.dump());
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["frozen_iso"], true);
  EXPECT_EQ(r.body["equal_series"], true);
  EXPECT_EQ(r.body["permutation"], json({2, 1}));
  EXPECT_FALSE(r.body.contains("first_diff"));

  const auto s = handle("/compare", json{{"quiver", a2}, {"seq1", {1, 2}}, {"seq2", json::array()}, {"D", 3}}.dump());
  EXPECT_EQ(s.body["frozen_iso"], false);
  EXPECT_EQ(s.body["equal_series"], false);
  EXPECT_TRUE(s.body.contains("first_diff"));
}

TEST(Service, SearchListsMaximalSequences) {
  const auto r = handle("/search", json{{"framed", initial_a2()}, {"max_len", 6}, {"maximal_only", true}}.dump());
  ASSERT_EQ(r.status, 200);
  json seqs = json::array();
  for (const auto& g : r.body["sequences"]) seqs.push_back(g["seq"]);
  EXPECT_EQ(seqs, json({{1, 2}, {2, 1, 2}}));
}

TEST(Service, ErrorStatuses) {
  EXPECT_EQ(handle("/mutate", json{{"framed", initial_a2()}, {"k", 3}}.dump()).status, 422);
  EXPECT_EQ(handle("/mutate", json{{"framed", initial_a2()}, {"k", 3}}.dump()).body["error"]["code"], "frozen_vertex");
  EXPECT_EQ(handle("/mutate", "{not json").status, 400);
  EXPECT_EQ(handle("/mutate", "[1, 2]").status, 400);
  EXPECT_EQ(handle("/mutate", json{{"k", 1}}.dump()).status, 400);
  EXPECT_EQ(handle("/nowhere", "{}").status, 404);
  EXPECT_EQ(handle("/eval", json{{"quiver", a2}, {"seq", {1}}, {"D", 99}}.dump()).status, 422);
  EXPECT_EQ(handle("/eval", json{{"quiver", a2}, {"seq", {3}}, {"D", 2}}.dump()).status, 422);
  EXPECT_EQ(handle("/search", json{{"framed", initial_a2()}, {"max_len", 2}, {"maximal_only", 1}}.dump()).status, 400);
}

TEST(Service, NonSkewMatrixIs400) {
  json f = initial_a2();
  f["b"][0][1] = 1;
  f["b"][1][0] = 1;
  EXPECT_EQ(handle("/mutate", json{{"framed", f}, {"k", 1}}.dump()).status, 400);
}

TEST(Service, Deterministic) {
  const std::string body = json{{"quiver", a2}, {"seq1", {1, 2}}, {"seq2", {2, 1, 2}}, {"D", 5}}.dump();
  EXPECT_EQ(handle("/compare", body).body.dump(), handle("/compare", body).body.dump());
}

TEST(Service, HttpRoundTrip) {
  httplib::Server srv;
  service::install_routes(srv);
  const int port = srv.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Post("/compare", json{{"quiver", a2}, {"seq1", {1, 2}}, {"seq2", {2, 1, 2}}, {"D", 4}}.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  const json body = json::parse(res->body);
  EXPECT_EQ(body["frozen_iso"], true);
  EXPECT_EQ(body["equal_series"], true);

  auto bad = cli.Post("/mutate", json{{"framed", initial_a2()}, {"k", 4}}.dump(), "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 422);
  auto pre = cli.Options("/eval");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);

  srv.stop();
  t.join();
}
