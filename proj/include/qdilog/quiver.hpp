#pragma once

// Framed quivers, matrix mutation, c-vectors, green sequences and the
// dilogarithm product E(k) attached to a mutation sequence.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/qtorus.hpp"
#include "qdilog/quiver_data.hpp"

namespace qdilog {

/// Quiver on n mutable vertices 0..n-1 and n frozen vertices n..2n-1
/// (frozen vertex n+j is the partner j' of j), stored as its signed exchange
/// matrix b (b[i][j] = #arrows i->j - #arrows j->i).
class FramedQuiver {
 public:
  FramedQuiver() = default;
  FramedQuiver(int n, std::vector<int> b) : n_(n), b_(std::move(b)) {
    if (n_ < 0 || b_.size() != static_cast<std::size_t>(4 * n_ * n_))
      throw std::invalid_argument("FramedQuiver: exchange matrix must be 2n x 2n");
    for (int i = 0; i < 2 * n_; ++i)
      for (int j = 0; j < 2 * n_; ++j)
        if (at(i, j) != -at(j, i)) throw std::invalid_argument("FramedQuiver: exchange matrix is not antisymmetric");
    for (int i = n_; i < 2 * n_; ++i)
      for (int j = n_; j < 2 * n_; ++j)
        if (at(i, j) != 0) throw std::invalid_argument("FramedQuiver: arrows between frozen vertices");
  }

  int size() const { return n_; }
  int at(int i, int j) const { return b_[static_cast<std::size_t>(i * 2 * n_ + j)]; }
  const std::vector<int>& matrix() const { return b_; }

  /// Full subquiver on the mutable vertices.
  Quiver mutable_part() const {
    Quiver q(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (at(i, j) > 0) q.add_arrows(i, j, at(i, j));
    return q;
  }

  /// Arrow list over all 2n vertices, 0-based.
  std::vector<std::tuple<int, int, int>> arrow_list() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int i = 0; i < 2 * n_; ++i)
      for (int j = 0; j < 2 * n_; ++j)
        if (at(i, j) > 0) out.emplace_back(i, j, at(i, j));
    return out;
  }

  friend bool operator==(const FramedQuiver&, const FramedQuiver&) = default;
  friend auto operator<=>(const FramedQuiver& a, const FramedQuiver& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.b_ <=> b.b_;
  }

 private:
  friend FramedQuiver mutate(const FramedQuiver&, int);
  int& ref(int i, int j) { return b_[static_cast<std::size_t>(i * 2 * n_ + j)]; }

  int n_ = 0;
  std::vector<int> b_;
};

/// Adds a frozen vertex i' and an arrow i -> i' for every vertex.
inline FramedQuiver frame(const Quiver& q) {
  if (q.has_loops()) throw DomainError("loop", "frame: quiver has a loop");
  const int n = q.size();
  for (int k = 0; k < n; ++k)
    if (q.has_two_cycle_at(k)) throw DomainError("two_cycle", "frame: quiver has a 2-cycle at vertex " + std::to_string(k + 1));
  std::vector<int> b(static_cast<std::size_t>(4 * n * n), 0);
  auto set = [&](int i, int j, int v) { b[static_cast<std::size_t>(i * 2 * n + j)] = v; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) set(i, j, q.arrows(i, j) - q.arrows(j, i));
  for (int i = 0; i < n; ++i) {
    set(i, n + i, 1);
    set(n + i, i, -1);
  }
  return FramedQuiver(n, std::move(b));
}

/// Matrix mutation at the mutable vertex k.
inline FramedQuiver mutate(const FramedQuiver& f, int k) {
  const int n = f.size();
  if (k < 0 || k >= n) throw DomainError("frozen_vertex", "mutation vertex " + std::to_string(k + 1) + " is not mutable");
  FramedQuiver r = f;
  const int m = 2 * n;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == k || j == k) {
        r.ref(i, j) = -f.at(i, j);
        continue;
      }
      const int bik = f.at(i, k);
      const int bkj = f.at(k, j);
      const int prod = bik * bkj;
      if (prod > 0) r.ref(i, j) = f.at(i, j) + (bik > 0 ? prod : -prod);
    }
  }
  return r;
}

struct CVector {
  ExpVec beta;
  int eps;
  friend bool operator==(const CVector&, const CVector&) = default;
};

/// Frozen row of k with its sign.  A mixed-sign row is reported as an error.
inline CVector c_vector(const FramedQuiver& f, int k) {
  const int n = f.size();
  if (k < 0 || k >= n) throw DomainError("frozen_vertex", "c-vector requested at a non-mutable vertex");
  CVector c{ExpVec(static_cast<std::size_t>(n)), 0};
  bool pos = false, neg = false;
  for (int j = 0; j < n; ++j) {
    int v = f.at(k, n + j);
    c.beta[static_cast<std::size_t>(j)] = v;
    pos |= v > 0;
    neg |= v < 0;
  }
  if (pos && neg) throw DomainError("sign_coherence_violation", "c-vector of vertex " + std::to_string(k + 1) + " has mixed signs");
  if (!pos && !neg) throw DomainError("zero_c_vector", "c-vector of vertex " + std::to_string(k + 1) + " is zero");
  c.eps = pos ? 1 : -1;
  return c;
}

/// No arrows from frozen vertices into k.
inline bool is_green(const FramedQuiver& f, int k) {
  const int n = f.size();
  if (k < 0 || k >= n) throw DomainError("frozen_vertex", "colour requested at a non-mutable vertex");
  for (int j = 0; j < n; ++j)
    if (f.at(n + j, k) > 0) return false;
  return true;
}

inline bool all_red(const FramedQuiver& f) {
  for (int k = 0; k < f.size(); ++k)
    if (is_green(f, k)) return false;
  return true;
}

struct GreenStep {
  int vertex;
  ExpVec beta;
  int eps;
};

/// A mutation sequence with its recorded c-vectors and end point.
struct GreenSeq {
  std::vector<GreenStep> steps;
  FramedQuiver final_quiver;

  std::vector<int> vertices() const {
    std::vector<int> v;
    for (const auto& s : steps) v.push_back(s.vertex);
    return v;
  }
};

/// Applies the vertex sequence, recording (beta_s, eps_s) before each step.
inline GreenSeq run_sequence(const FramedQuiver& start, const std::vector<int>& seq) {
  GreenSeq g{{}, start};
  for (int k : seq) {
    CVector c = c_vector(g.final_quiver, k);
    g.steps.push_back({k, c.beta, c.eps});
    g.final_quiver = mutate(g.final_quiver, k);
  }
  return g;
}

/// Depth-first enumeration of green sequences of length <= max_len, children
/// in ascending vertex order (so the output is lexicographic).  A sequence
/// never revisits a framed quiver already on its own path.
inline std::vector<GreenSeq> green_search(const FramedQuiver& start, int max_len, bool maximal_only) {
  if (max_len < 0) throw std::invalid_argument("green_search: negative length bound");
  std::vector<GreenSeq> out;
  GreenSeq cur{{}, start};
  std::set<FramedQuiver> on_path{start};
  auto rec = [&](auto&& self) -> void {
    const bool maximal = all_red(cur.final_quiver);
    if (!cur.steps.empty() && (!maximal_only || maximal)) out.push_back(cur);
    if (maximal || static_cast<int>(cur.steps.size()) == max_len) return;
    for (int k = 0; k < start.size(); ++k) {
      if (!is_green(cur.final_quiver, k)) continue;
      FramedQuiver before = cur.final_quiver;
      CVector c = c_vector(before, k);
      FramedQuiver next = mutate(before, k);
      if (on_path.contains(next)) continue;
      on_path.insert(next);
      cur.steps.push_back({k, c.beta, c.eps});
      cur.final_quiver = next;
      self(self);
      cur.steps.pop_back();
      cur.final_quiver = before;
      on_path.erase(next);
    }
  };
  rec(rec);
  return out;
}

/// E(k) = E(eps_1 beta_1)^{eps_1} ... E(eps_N beta_N)^{eps_N} on the skew form
/// of the mutable part of the starting quiver.
inline Series tropical_E(const FramedQuiver& start, const std::vector<int>& seq, int D) {
  const SkewForm form = skew_from_quiver(start.mutable_part());
  GreenSeq g = run_sequence(start, seq);
  std::vector<WordFactor> word;
  for (const auto& s : g.steps) word.push_back({s.eps, 1, scaled(s.beta, s.eps)});
  return eval_word(form, word, D);
}

/// Permutation sigma of the mutable vertices, fixing frozen ones, with
/// b2[sigma(i)][sigma(j)] = b1[i][j] for all i, j.  Brute force over n!.
inline std::optional<std::vector<int>> frozen_iso(const FramedQuiver& f1, const FramedQuiver& f2) {
  if (f1.size() != f2.size()) return std::nullopt;
  const int n = f1.size();
  std::vector<int> sigma(static_cast<std::size_t>(2 * n));
  std::iota(sigma.begin(), sigma.end(), 0);
  auto matches = [&] {
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j)
        if (f2.at(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]) != f1.at(i, j)) return false;
    return true;
  };
  do {
    if (matches()) return std::vector<int>(sigma.begin(), sigma.begin() + n);
  } while (std::next_permutation(sigma.begin(), sigma.begin() + n));
  return std::nullopt;
}

struct DtResult {
  std::vector<int> sequence;
  Series value;
};

/// E(k) for the first maximal green sequence found with length <= depth
/// (depth < 0 selects the default 4n).
inline DtResult dt_invariant(const Quiver& q, int D, int depth = -1) {
  if (depth < 0) depth = 4 * q.size();
  FramedQuiver f = frame(q);
  // A single branch suffices; search lexicographically and stop at the first hit.
  std::optional<std::vector<int>> found;
  std::vector<int> cur;
  std::set<FramedQuiver> on_path{f};
  auto rec = [&](auto&& self, const FramedQuiver& state) -> bool {
    if (all_red(state)) {
      found = cur;
      return true;
    }
    if (static_cast<int>(cur.size()) == depth) return false;
    for (int k = 0; k < state.size(); ++k) {
      if (!is_green(state, k)) continue;
      FramedQuiver next = mutate(state, k);
      if (on_path.contains(next)) continue;
      on_path.insert(next);
      cur.push_back(k);
      if (self(self, next)) return true;
      cur.pop_back();
      on_path.erase(next);
    }
    return false;
  };
  rec(rec, f);
  if (!found)
    throw DomainError("no_maximal_green_sequence",
                      "no maximal green sequence found within depth " + std::to_string(depth));
  return {*found, tropical_E(f, *found, D)};
}

}  // namespace qdilog
