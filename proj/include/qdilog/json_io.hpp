#pragma once

// JSON formats.  Vertices are 1-based on the wire and 0-based in memory.
//
//   quiver:   {"n": 2, "arrows": [[1, 2, 1]]}
//   framed:   {"n": 2, "b": [[...2n...], ...]}   frozen vertices are n+1..2n
//   sequence: {"seq": [1, 2], "steps": [{"beta": [1, 0], "eps": 1}, ...]}
//   series:   {"offset": [...], "D": 4, "terms": [{"exp": [...], "coeff": "..."}]}
//   charges:  {"Z": [["-1", "1"], ["1", "1"]]}

#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdilog/dynkin.hpp"
#include "qdilog/errors.hpp"
#include "qdilog/quiver.hpp"
#include "qdilog/qtorus.hpp"

namespace qdilog::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline std::vector<int> as_int_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  std::vector<int> v;
  for (const auto& x : j) v.push_back(as_int(x, what));
  return v;
}

}  // namespace detail

inline json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& [i, j, m] : q.arrow_list()) arrows.push_back({i + 1, j + 1, m});
  return {{"n", q.size()}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const json& j) {
  const int n = detail::as_int(detail::field(j, "n"), "n");
  if (n < 1 || n > 64) throw ParseError("n must be between 1 and 64");
  Quiver q(n);
  const json& arrows = detail::field(j, "arrows");
  if (!arrows.is_array()) throw ParseError("arrows must be an array");
  for (const auto& a : arrows) {
    auto t = detail::as_int_vector(a, "arrow");
    if (t.size() != 2 && t.size() != 3) throw ParseError("an arrow is [i, j] or [i, j, multiplicity]");
    const int m = t.size() == 3 ? t[2] : 1;
    if (t[0] < 1 || t[0] > n || t[1] < 1 || t[1] > n) throw ParseError("arrow endpoint out of range");
    if (m < 0) throw ParseError("arrow multiplicity must be nonnegative");
    q.add_arrows(t[0] - 1, t[1] - 1, m);
  }
  return q;
}

inline json to_json(const FramedQuiver& f) {
  const int n = f.size();
  json b = json::array();
  for (int i = 0; i < 2 * n; ++i) {
    json row = json::array();
    for (int j = 0; j < 2 * n; ++j) row.push_back(f.at(i, j));
    b.push_back(row);
  }
  json arrows = json::array();
  for (const auto& [i, j, m] : f.arrow_list()) arrows.push_back({i + 1, j + 1, m});
  return {{"n", n}, {"b", b}, {"arrows", arrows}};
}

inline FramedQuiver framed_from_json(const json& j) {
  const int n = detail::as_int(detail::field(j, "n"), "n");
  if (n < 1 || n > 64) throw ParseError("n must be between 1 and 64");
  const json& b = detail::field(j, "b");
  if (!b.is_array() || static_cast<int>(b.size()) != 2 * n) throw ParseError("b must be a 2n x 2n matrix");
  std::vector<int> flat;
  for (const auto& row : b) {
    auto r = detail::as_int_vector(row, "b entry");
    if (static_cast<int>(r.size()) != 2 * n) throw ParseError("b must be a 2n x 2n matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  try {
    return FramedQuiver(n, std::move(flat));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const GreenSeq& g) {
  json seq = json::array(), steps = json::array();
  for (const auto& s : g.steps) {
    seq.push_back(s.vertex + 1);
    steps.push_back({{"beta", s.beta}, {"eps", s.eps}});
  }
  return {{"seq", seq}, {"steps", steps}};
}

/// Vertex sequence from [k1, ...] or {"seq": [k1, ...]}, 1-based.
inline std::vector<int> sequence_from_json(const json& j, int n) {
  const json& s = j.is_object() ? detail::field(j, "seq") : j;
  std::vector<int> out;
  for (int k : detail::as_int_vector(s, "sequence entry")) {
    if (k < 1 || k > 2 * n) throw ParseError("sequence vertex out of range");
    out.push_back(k - 1);
  }
  return out;
}

/// Parses "1,2,1" or "1 2 1" into 0-based vertices.
inline std::vector<int> sequence_from_text(const std::string& text) {
  std::vector<int> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    try {
      std::size_t used = 0;
      int k = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(k - 1);
    } catch (const std::logic_error&) {
      throw ParseError("bad vertex '" + tok + "' in sequence");
    }
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '(' || c == ')') {
      flush();
    } else {
      tok += c;
    }
  }
  flush();
  return out;
}

template <class C, class Text>
json to_json(const QSeries<C>& s, Text&& text) {
  json terms = json::array();
  for (const auto& [g, c] : s.cone_terms()) terms.push_back({{"exp", g}, {"coeff", text(c)}});
  return {{"offset", s.offset()}, {"D", s.truncation()}, {"terms", terms}};
}

inline json to_json(const Series& s) {
  return to_json(s, [](const QRat& c) { return c.to_string(); });
}

inline Series series_from_json(const json& j, const SkewForm& form) {
  const int D = detail::as_int(detail::field(j, "D"), "D");
  const ExpVec offset = detail::as_int_vector(detail::field(j, "offset"), "offset");
  if (static_cast<int>(offset.size()) != form.size()) throw ParseError("offset has the wrong length");
  std::vector<std::pair<ExpVec, QRat>> terms;
  for (const auto& t : detail::field(j, "terms")) {
    ExpVec e = detail::as_int_vector(detail::field(t, "exp"), "exp");
    const json& c = detail::field(t, "coeff");
    if (!c.is_string()) throw ParseError("coeff must be a string");
    terms.emplace_back(std::move(e), QRat::parse(c.get<std::string>()));
  }
  return Series::from_cone(form, D, offset, terms);
}

template <class C, class Text>
json to_json(const SeriesDifference<C>& d, Text&& text) {
  return {{"exp", d.exponent}, {"lhs", text(d.lhs)}, {"rhs", text(d.rhs)}};
}

inline json to_json(const SeriesDifference<QRat>& d) {
  return to_json(d, [](const QRat& c) { return c.to_string(); });
}

inline json to_json(const IdentityCheck& c) {
  json j = {{"name", c.name}, {"pass", c.pass}};
  if (c.difference) j["first_diff"] = to_json(*c.difference);
  return j;
}

inline mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be an integer or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  static const std::regex re(R"(\s*[-+]?\d+(\s*/\s*\d+)?\s*)");
  if (!std::regex_match(s, re)) throw ParseError("bad rational '" + s + "'");
  std::string compact;
  for (char c : s)
    if (c != ' ' && c != '+') compact += c;
  mpq_class r(compact);
  if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline CentralCharge charges_from_json(const json& j) {
  const json& z = detail::field(j, "Z");
  if (!z.is_array()) throw ParseError("Z must be an array of [x, y] pairs");
  CentralCharge c;
  for (const auto& p : z) {
    if (!p.is_array() || p.size() != 2) throw ParseError("Z must be an array of [x, y] pairs");
    c.z.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
  }
  return c;
}

inline json to_json(const CentralCharge& c) {
  json z = json::array();
  for (const auto& [x, y] : c.z) z.push_back({x.get_str(), y.get_str()});
  return {{"Z", z}};
}

/// Word factor text: "[coeff*](a,b,...)[^-1]", factors separated by ';'.
/// Example: "(0,1); (1,1); (1,0)^-1" or "v^-1*(1,1)".
inline std::vector<WordFactor> word_from_text(const std::string& text) {
  static const std::regex factor_re(R"(^\s*(.*?)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*(\^\s*-1)?\s*$)");
  std::vector<WordFactor> word;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string piece = text.substr(start, end - start);
    start = end + 1;
    if (piece.find_first_not_of(" \t") == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    std::smatch m;
    if (!std::regex_match(piece, m, factor_re)) throw ParseError("bad word factor '" + piece + "'");
    WordFactor f;
    std::string coeff = m[1].str();
    if (!coeff.empty()) {
      if (coeff.back() != '*') throw ParseError("coefficient must be followed by '*' in '" + piece + "'");
      coeff.pop_back();
      f.c = QRat::parse(coeff);
    }
    f.alpha = sequence_from_text(m[2].str());
    for (int& a : f.alpha) ++a;  // sequence_from_text shifts to 0-based
    f.sign = m[3].matched ? -1 : 1;
    word.push_back(std::move(f));
  }
  return word;
}

inline std::string exp_text(const ExpVec& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

inline std::string seq_text(const std::vector<int>& seq) {
  std::string s = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + std::to_string(seq[i] + 1);
  return s + ")";
}

}  // namespace qdilog::io
