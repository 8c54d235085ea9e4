#pragma once

// Stateless JSON handlers behind the HTTP facade.  Every request carries the
// full quiver and sequence, so handle() is a pure function of its input.

#include <string>

#include <json.hpp>

#include "qdilog/errors.hpp"
#include "qdilog/json_io.hpp"
#include "qdilog/quiver.hpp"

namespace qdilog::service {

using json = nlohmann::json;

struct Limits {
  int max_truncation = 10;
  int max_search_length = 12;
  int max_vertices = 8;  // frozen_iso is brute force over n!
};

struct Response {
  int status = 200;
  json body;
};

namespace detail {

inline json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

inline int bounded_int(const json& body, const char* key, int lo, int hi, const char* guard_name) {
  const int v = io::detail::as_int(io::detail::field(body, key), key);
  if (v < lo) throw ParseError(std::string(key) + " must be at least " + std::to_string(lo));
  if (v > hi) throw GuardError(std::string(key) + " = " + std::to_string(v) + " exceeds the server cap " + std::to_string(hi) + " (" + guard_name + ")");
  return v;
}

inline void check_size(int n, const Limits& lim) {
  if (n > lim.max_vertices) throw GuardError("quiver has " + std::to_string(n) + " vertices; the server accepts at most " + std::to_string(lim.max_vertices));
}

inline std::vector<int> checked_sequence(const json& j, int n) {
  auto seq = io::sequence_from_json(j, n);
  for (int k : seq)
    if (k >= n) throw DomainError("frozen_vertex", "sequence contains frozen vertex " + std::to_string(k + 1));
  return seq;
}

inline json colors(const FramedQuiver& f) {
  json c = json::array();
  for (int k = 0; k < f.size(); ++k) c.push_back(is_green(f, k) ? "green" : "red");
  return c;
}

inline json frame_ep(const json& body, const Limits& lim) {
  Quiver q = io::quiver_from_json(io::detail::field(body, "quiver"));
  check_size(q.size(), lim);
  return io::to_json(frame(q));
}

inline json mutate_ep(const json& body, const Limits& lim) {
  FramedQuiver f = io::framed_from_json(io::detail::field(body, "framed"));
  check_size(f.size(), lim);
  const int k = io::detail::as_int(io::detail::field(body, "k"), "k");
  if (k < 1 || k > 2 * f.size()) throw ParseError("k out of range");
  if (k > f.size()) throw DomainError("frozen_vertex", "vertex " + std::to_string(k) + " is frozen");
  const CVector c = c_vector(f, k - 1);
  FramedQuiver g = mutate(f, k - 1);
  return {{"framed", io::to_json(g)}, {"beta", c.beta}, {"eps", c.eps}, {"colors", colors(g)}, {"maximal", all_red(g)}};
}

inline json eval_ep(const json& body, const Limits& lim) {
  Quiver q = io::quiver_from_json(io::detail::field(body, "quiver"));
  check_size(q.size(), lim);
  const int D = bounded_int(body, "D", 0, lim.max_truncation, "truncation");
  auto seq = checked_sequence(io::detail::field(body, "seq"), q.size());
  return io::to_json(tropical_E(frame(q), seq, D));
}

inline json compare_ep(const json& body, const Limits& lim) {
  Quiver q = io::quiver_from_json(io::detail::field(body, "quiver"));
  check_size(q.size(), lim);
  const int D = bounded_int(body, "D", 0, lim.max_truncation, "truncation");
  auto s1 = checked_sequence(io::detail::field(body, "seq1"), q.size());
  auto s2 = checked_sequence(io::detail::field(body, "seq2"), q.size());
  const FramedQuiver f = frame(q);
  const GreenSeq g1 = run_sequence(f, s1), g2 = run_sequence(f, s2);
  const auto iso = frozen_iso(g1.final_quiver, g2.final_quiver);
  const Series e1 = tropical_E(f, s1, D), e2 = tropical_E(f, s2, D);
  const auto diff = e1.first_difference(e2);
  json out = {{"frozen_iso", iso.has_value()}, {"equal_series", !diff.has_value()}};
  if (iso) {
    json perm = json::array();
    for (int v : *iso) perm.push_back(v + 1);
    out["permutation"] = perm;
  }
  if (diff) out["first_diff"] = io::to_json(*diff);
  return out;
}

inline json search_ep(const json& body, const Limits& lim) {
  FramedQuiver f = io::framed_from_json(io::detail::field(body, "framed"));
  check_size(f.size(), lim);
  const int L = bounded_int(body, "max_len", 0, lim.max_search_length, "search length");
  bool maximal_only = false;
  if (body.contains("maximal_only")) {
    if (!body["maximal_only"].is_boolean()) throw ParseError("maximal_only must be a boolean");
    maximal_only = body["maximal_only"].get<bool>();
  }
  json seqs = json::array();
  for (const auto& g : green_search(f, L, maximal_only)) seqs.push_back(io::to_json(g));
  return {{"sequences", seqs}};
}

}  // namespace detail

/// Dispatches POST `path` with JSON text `body`.  400 for malformed input,
/// 422 for domain errors, 404 for unknown paths.
inline Response handle(const std::string& path, const std::string& body, const Limits& lim = {}) {
  using Handler = json (*)(const json&, const Limits&);
  Handler h = nullptr;
  if (path == "/frame") h = detail::frame_ep;
  else if (path == "/mutate") h = detail::mutate_ep;
  else if (path == "/eval") h = detail::eval_ep;
  else if (path == "/compare") h = detail::compare_ep;
  else if (path == "/search") h = detail::search_ep;
  if (!h) return {404, detail::error_body("not_found", "unknown endpoint " + path)};
  try {
    const json req = json::parse(body);
    if (!req.is_object()) throw ParseError("request body must be a JSON object");
    return {200, h(req, lim)};
  } catch (const json::exception& e) {
    return {400, detail::error_body("bad_json", e.what())};
  } catch (const ParseError& e) {
    return {400, detail::error_body("bad_request", e.what())};
  } catch (const DomainError& e) {
    return {422, detail::error_body(e.code(), e.what())};
  } catch (const std::invalid_argument& e) {
    return {400, detail::error_body("bad_request", e.what())};
  }
}

}  // namespace qdilog::service
