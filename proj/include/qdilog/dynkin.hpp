#pragma once

// Representations of Dynkin quivers over F_p, stability functions with
// exact rational central charges, and the products of quantum dilogarithms
// over stable representations.
//
// Conventions: a Dynkin quiver Q is represented through the opposite quiver,
// so an arrow i -> j of Q carries a linear map V_j -> V_i.  With Q = 1 -> 2
// this makes S_1 the unique proper subobject of P_2.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdilog/errors.hpp"
#include "qdilog/fp.hpp"
#include "qdilog/qtorus.hpp"
#include "qdilog/quiver_data.hpp"

namespace qdilog {

/// Largest total dimension for which subrepresentations are enumerated.
/// QDILOG_GUARD in the environment overrides the default.
inline int brute_force_guard() {
  static const int guard = [] {
    if (const char* env = std::getenv("QDILOG_GUARD")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 12;
  }();
  return guard;
}

// ---------------------------------------------------------------------------
// Dynkin quivers

class DynkinQuiver {
 public:
  /// Classifies a connected, simply laced tree quiver; throws otherwise.
  static DynkinQuiver from_quiver(const Quiver& q);

  /// Standard labelling: A_n is the path 1-2-...-n; D_n and E_n are the path
  /// 1-...-(n-1) with vertex n attached to n-2 (D) or to 3 (E).  The
  /// orientation string has one character per edge in that order: '>' for
  /// lower -> higher endpoint of the edge as listed, '<' for the reverse.
  static DynkinQuiver standard(char type, int n, const std::string& orientation = "");

  char type() const { return type_; }
  int rank() const { return quiver_.size(); }
  const Quiver& quiver() const { return quiver_; }
  std::string name() const { return std::string(1, type_) + std::to_string(rank()); }

  static std::vector<std::pair<int, int>> standard_edges(char type, int n) {
    std::vector<std::pair<int, int>> e;
    if (type == 'A') {
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    } else if (type == 'D') {
      for (int i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(n - 3, n - 1);
    } else if (type == 'E') {
      for (int i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(2, n - 1);
    }
    return e;
  }

 private:
  DynkinQuiver(char t, Quiver q) : type_(t), quiver_(std::move(q)) {}
  char type_;
  Quiver quiver_;
};

inline DynkinQuiver DynkinQuiver::standard(char type, int n, const std::string& orientation) {
  bool ok = (type == 'A' && n >= 1) || (type == 'D' && n >= 4) || (type == 'E' && n >= 6 && n <= 8);
  if (!ok) throw DomainError("not_dynkin", std::string("unsupported Dynkin type ") + type + std::to_string(n));
  const auto edges = standard_edges(type, n);
  std::string o = orientation.empty() ? std::string(edges.size(), '>') : orientation;
  if (o.size() != edges.size())
    throw ParseError("orientation needs " + std::to_string(edges.size()) + " characters from {<,>}");
  Quiver q(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (o[e] == '>') {
      q.add_arrows(a, b);
    } else if (o[e] == '<') {
      q.add_arrows(b, a);
    } else {
      throw ParseError("orientation characters must be '<' or '>'");
    }
  }
  return DynkinQuiver(type, std::move(q));
}

inline DynkinQuiver DynkinQuiver::from_quiver(const Quiver& q) {
  const int n = q.size();
  if (n == 0) throw DomainError("not_dynkin", "empty quiver");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  int edges = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int m = q.arrows(i, j);
      if (m == 0) continue;
      if (i == j || m > 1 || q.arrows(j, i) > 0) throw DomainError("not_dynkin", "underlying graph is not simply laced");
      adj[static_cast<std::size_t>(i)].push_back(j);
      adj[static_cast<std::size_t>(j)].push_back(i);
      ++edges;
    }
  if (edges != n - 1) throw DomainError("not_dynkin", "underlying graph is not a tree");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
  }
  if (count != n) throw DomainError("not_dynkin", "underlying graph is not connected");
  int branch = -1;
  for (int v = 0; v < n; ++v) {
    const auto deg = adj[static_cast<std::size_t>(v)].size();
    if (deg > 3) throw DomainError("not_dynkin", "vertex of degree > 3");
    if (deg == 3) {
      if (branch >= 0) throw DomainError("not_dynkin", "more than one branch vertex");
      branch = v;
    }
  }
  if (branch < 0) return DynkinQuiver('A', q);
  std::vector<int> arms;
  for (int start : adj[static_cast<std::size_t>(branch)]) {
    int len = 1, prev = branch, cur = start;
    for (;;) {
      int next = -1;
      for (int w : adj[static_cast<std::size_t>(cur)])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return DynkinQuiver('D', q);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return DynkinQuiver('E', q);
  throw DomainError("not_dynkin", "underlying graph is not of type A, D or E");
}

/// Symmetrized Cartan pairing (a, b) = 2 sum a_i b_i - sum_{edges} (a_i b_j + a_j b_i).
inline int cartan_pairing(const Quiver& q, const ExpVec& a, const ExpVec& b) {
  int s = 0;
  const int n = q.size();
  for (int i = 0; i < n; ++i) s += 2 * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int m = q.arrows(i, j);
      if (m == 0) continue;
      s -= m * (a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] +
                a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)]);
    }
  return s;
}

inline ExpVec simple_reflection(const Quiver& q, const ExpVec& a, int k) {
  ExpVec r = a;
  r[static_cast<std::size_t>(k)] -= cartan_pairing(q, a, unit_vec(q.size(), k));
  return r;
}

/// Positive roots, by closing the simple roots under simple reflections.
/// Sorted by height, then lexicographically decreasing (so e_1 comes first).
inline std::vector<ExpVec> positive_roots(const DynkinQuiver& d) {
  const Quiver& q = d.quiver();
  const int n = q.size();
  std::set<ExpVec> found;
  std::vector<ExpVec> frontier;
  for (int i = 0; i < n; ++i) {
    found.insert(unit_vec(n, i));
    frontier.push_back(unit_vec(n, i));
  }
  while (!frontier.empty()) {
    ExpVec a = frontier.back();
    frontier.pop_back();
    for (int k = 0; k < n; ++k) {
      ExpVec b = simple_reflection(q, a, k);
      if (!nonnegative(b) || total_degree(b) == 0) continue;
      if (found.insert(b).second) frontier.push_back(b);
    }
  }
  std::vector<ExpVec> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const ExpVec& x, const ExpVec& y) {
    if (total_degree(x) != total_degree(y)) return total_degree(x) < total_degree(y);
    return x > y;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Representations

/// Representation of a quiver given by its arrow list (source, target) over
/// F_p; maps[a] is a dim[target] x dim[source] matrix acting on columns.
struct FqRep {
  int p = 2;
  std::vector<int> dim;
  std::vector<std::pair<int, int>> arrows;
  std::vector<fp::Matrix> maps;

  int vertices() const { return static_cast<int>(dim.size()); }
  int total_dim() const {
    int s = 0;
    for (int d : dim) s += d;
    return s;
  }
  ExpVec dim_vector() const { return dim; }

  void validate() const {
    if (maps.size() != arrows.size()) throw std::invalid_argument("FqRep: one matrix per arrow required");
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      auto [s, t] = arrows[a];
      if (maps[a].rows() != dim[static_cast<std::size_t>(t)] || maps[a].cols() != dim[static_cast<std::size_t>(s)])
        throw std::invalid_argument("FqRep: matrix shape does not match the dimension vector");
    }
  }
};

/// Arrow list of the quiver whose representations model modules over Q.
inline std::vector<std::pair<int, int>> representation_arrows(const Quiver& q) {
  std::vector<std::pair<int, int>> arrows;
  for (const auto& [i, j, m] : q.arrow_list())
    for (int t = 0; t < m; ++t) arrows.emplace_back(j, i);
  return arrows;
}

inline FqRep zero_rep(const std::vector<std::pair<int, int>>& arrows, int n, int p) {
  FqRep r{p, std::vector<int>(static_cast<std::size_t>(n), 0), arrows, {}};
  for (std::size_t a = 0; a < arrows.size(); ++a) r.maps.emplace_back(0, 0);
  return r;
}

inline FqRep simple_rep(const std::vector<std::pair<int, int>>& arrows, int n, int k, int p) {
  FqRep r = zero_rep(arrows, n, p);
  r.dim[static_cast<std::size_t>(k)] = 1;
  for (std::size_t a = 0; a < arrows.size(); ++a)
    r.maps[a] = fp::Matrix(r.dim[static_cast<std::size_t>(arrows[a].second)], r.dim[static_cast<std::size_t>(arrows[a].first)]);
  return r;
}

inline FqRep direct_sum(const FqRep& x, const FqRep& y) {
  if (x.p != y.p || x.arrows != y.arrows) throw std::invalid_argument("direct_sum: representations of different quivers");
  FqRep r = x;
  for (std::size_t i = 0; i < r.dim.size(); ++i) r.dim[i] = x.dim[i] + y.dim[i];
  for (std::size_t a = 0; a < r.arrows.size(); ++a) {
    const auto& mx = x.maps[a];
    const auto& my = y.maps[a];
    fp::Matrix m(mx.rows() + my.rows(), mx.cols() + my.cols());
    for (int i = 0; i < mx.rows(); ++i)
      for (int j = 0; j < mx.cols(); ++j) m(i, j) = mx(i, j);
    for (int i = 0; i < my.rows(); ++i)
      for (int j = 0; j < my.cols(); ++j) m(mx.rows() + i, mx.cols() + j) = my(i, j);
    r.maps[a] = std::move(m);
  }
  return r;
}

namespace detail {

inline int var_offset(const std::vector<int>& offs, int v) { return offs[static_cast<std::size_t>(v)]; }

// The intertwining system  N_a phi_s - phi_t M_a = 0,  one block of
// equations per arrow; unknowns are the entries of phi_i : M_i -> N_i.
inline fp::Matrix intertwiner_system(const FqRep& m, const FqRep& n) {
  if (m.p != n.p || m.arrows != n.arrows || m.dim.size() != n.dim.size())
    throw std::invalid_argument("hom: representations of different quivers or fields");
  const int p = m.p;
  std::vector<int> offs;
  int vars = 0;
  for (std::size_t i = 0; i < m.dim.size(); ++i) {
    offs.push_back(vars);
    vars += m.dim[i] * n.dim[i];
  }
  int eqs = 0;
  for (auto [s, t] : m.arrows) eqs += n.dim[static_cast<std::size_t>(t)] * m.dim[static_cast<std::size_t>(s)];
  fp::Matrix sys(eqs, vars);
  int row = 0;
  for (std::size_t a = 0; a < m.arrows.size(); ++a) {
    auto [s, t] = m.arrows[a];
    const int ms = m.dim[static_cast<std::size_t>(s)], mt = m.dim[static_cast<std::size_t>(t)];
    const int ns = n.dim[static_cast<std::size_t>(s)], nt = n.dim[static_cast<std::size_t>(t)];
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < ms; ++c) {
        // sum_l N_a(r,l) phi_s(l,c)  -  sum_l phi_t(r,l) M_a(l,c)
        for (int l = 0; l < ns; ++l) {
          int& e = sys(row, var_offset(offs, s) + l * ms + c);
          e = (e + n.maps[a](r, l)) % p;
        }
        for (int l = 0; l < mt; ++l) {
          int& e = sys(row, var_offset(offs, t) + r * mt + l);
          e = fp::mod(e - m.maps[a](l, c), p);
        }
        ++row;
      }
  }
  return sys;
}

}  // namespace detail

/// dim_Fp Hom(M, N).
inline int hom_dim(const FqRep& m, const FqRep& n) {
  fp::Matrix sys = detail::intertwiner_system(m, n);
  return sys.cols() - (sys.rows() > 0 ? fp::rank(sys, m.p) : 0);
}

/// Basis of Hom(M, N) as flattened tuples (phi_i row-major, vertex order).
inline fp::Matrix hom_basis(const FqRep& m, const FqRep& n) {
  fp::Matrix sys = detail::intertwiner_system(m, n);
  if (sys.rows() == 0) return fp::Matrix::identity(sys.cols());
  return fp::nullspace(sys, m.p);
}

/// dim Ext^1(M, N) as the cokernel of the intertwining map
/// (+) Hom(M_i, N_i) -> (+)_{a: s->t} Hom(M_s, N_t), i.e. from the standard
/// projective resolution of M.
inline int ext1_dim(const FqRep& m, const FqRep& n) {
  fp::Matrix sys = detail::intertwiner_system(m, n);
  return sys.rows() - (sys.rows() > 0 ? fp::rank(sys, m.p) : 0);
}

inline void check_guard(const FqRep& m, const char* what) {
  if (m.total_dim() > brute_force_guard())
    throw GuardError(std::string(what) + ": total dimension " + std::to_string(m.total_dim()) + " exceeds guard " +
                     std::to_string(brute_force_guard()) + " (raise QDILOG_GUARD)");
}

/// Visits every subrepresentation as a tuple of echelon bases, one per vertex.
inline void for_each_subrep(const FqRep& m, const std::function<void(const std::vector<fp::Matrix>&)>& visit) {
  check_guard(m, "subrepresentation enumeration");
  const int n = m.vertices();
  const int p = m.p;
  std::vector<fp::Matrix> bases(static_cast<std::size_t>(n));
  // arrows whose larger endpoint is v are checked once v is assigned
  std::vector<std::vector<std::size_t>> check_at(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < m.arrows.size(); ++a)
    check_at[static_cast<std::size_t>(std::max(m.arrows[a].first, m.arrows[a].second))].push_back(a);
  auto stable = [&](std::size_t a) {
    auto [s, t] = m.arrows[a];
    const fp::Matrix& us = bases[static_cast<std::size_t>(s)];
    const fp::Matrix& ut = bases[static_cast<std::size_t>(t)];
    if (us.rows() == 0) return true;
    fp::Matrix img = fp::multiply(us, fp::transpose(m.maps[a]), p);
    if (fp::rank(img, p) == 0) return true;
    if (ut.rows() == 0) return false;
    return fp::rank(fp::stack_rows(ut, img), p) == ut.rows();
  };
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      visit(bases);
      return;
    }
    fp::for_each_subspace(m.dim[static_cast<std::size_t>(v)], p, [&](const fp::Matrix& b) {
      bases[static_cast<std::size_t>(v)] = b;
      for (std::size_t a : check_at[static_cast<std::size_t>(v)])
        if (!stable(a)) return;
      rec(v + 1);
    });
  };
  rec(0);
}

/// Dimension vectors of all nonzero proper subrepresentations.
inline std::set<ExpVec> subrep_dims(const FqRep& m) {
  std::set<ExpVec> out;
  const int total = m.total_dim();
  for_each_subrep(m, [&](const std::vector<fp::Matrix>& b) {
    ExpVec d;
    int s = 0;
    for (const auto& x : b) {
      d.push_back(x.rows());
      s += x.rows();
    }
    if (s > 0 && s < total) out.insert(d);
  });
  return out;
}

/// Restriction of M to the subrepresentation spanned by `bases`.
inline FqRep subrep(const FqRep& m, const std::vector<fp::Matrix>& bases) {
  FqRep r{m.p, {}, m.arrows, {}};
  for (const auto& b : bases) r.dim.push_back(b.rows());
  for (std::size_t a = 0; a < m.arrows.size(); ++a) {
    auto [s, t] = m.arrows[a];
    const auto& us = bases[static_cast<std::size_t>(s)];
    const auto& ut = bases[static_cast<std::size_t>(t)];
    fp::Matrix img = fp::multiply(us, fp::transpose(m.maps[a]), m.p);
    r.maps.push_back(fp::transpose(fp::coordinates(ut, img, m.p)));
    if (us.rows() == 0) r.maps.back() = fp::Matrix(ut.rows(), 0);
  }
  return r;
}

/// M / U for the subrepresentation U spanned by `bases`.
inline FqRep quotient_rep(const FqRep& m, const std::vector<fp::Matrix>& bases) {
  FqRep r{m.p, {}, m.arrows, {}};
  std::vector<fp::Matrix> comp, full;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const int d = m.dim[i];
    comp.push_back(fp::complement(bases[i], d, m.p));
    full.push_back(fp::stack_rows(bases[i], comp.back()));
    r.dim.push_back(comp.back().rows());
  }
  for (std::size_t a = 0; a < m.arrows.size(); ++a) {
    auto [s, t] = m.arrows[a];
    const auto& cs = comp[static_cast<std::size_t>(s)];
    const int rt = bases[static_cast<std::size_t>(t)].rows();
    const int ct = comp[static_cast<std::size_t>(t)].rows();
    fp::Matrix q(ct, cs.rows());
    if (cs.rows() > 0 && ct > 0) {
      fp::Matrix img = fp::multiply(cs, fp::transpose(m.maps[a]), m.p);
      fp::Matrix co = fp::coordinates(full[static_cast<std::size_t>(t)], img, m.p);
      for (int i = 0; i < cs.rows(); ++i)
        for (int j = 0; j < ct; ++j) q(j, i) = co(i, rt + j);
    }
    r.maps.push_back(std::move(q));
  }
  return r;
}

namespace detail {

// Reflection at a source k of the quiver given by `arrows`: V'_k is the
// cokernel of V_k -> (+)_{a: k->i} V_i and every arrow at k is reversed.
inline FqRep reflect_at_source(const FqRep& v, int k) {
  const int p = v.p;
  std::vector<std::size_t> out;
  int total = 0;
  std::vector<int> block;
  for (std::size_t a = 0; a < v.arrows.size(); ++a) {
    if (v.arrows[a].second == k) throw std::logic_error("reflect_at_source: vertex is not a source");
    if (v.arrows[a].first == k) {
      out.push_back(a);
      block.push_back(total);
      total += v.dim[static_cast<std::size_t>(v.arrows[a].second)];
    }
  }
  const int dk = v.dim[static_cast<std::size_t>(k)];
  // image of V_k as rows of length `total`
  fp::Matrix img(dk, total);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto& m = v.maps[out[idx]];
    for (int c = 0; c < dk; ++c)
      for (int r = 0; r < m.rows(); ++r) img(c, block[idx] + r) = m(r, c);
  }
  fp::Matrix ib = dk > 0 ? fp::row_basis(img, p) : fp::Matrix(0, total);
  fp::Matrix comp = fp::complement(ib, total, p);
  fp::Matrix full = fp::stack_rows(ib, comp);
  const int ck = comp.rows();
  FqRep r = v;
  r.dim[static_cast<std::size_t>(k)] = ck;
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const std::size_t a = out[idx];
    const int i = v.arrows[a].second;
    const int di = v.dim[static_cast<std::size_t>(i)];
    fp::Matrix emb(di, total);
    for (int j = 0; j < di; ++j) emb(j, block[idx] + j) = 1;
    fp::Matrix m(ck, di);
    if (di > 0 && ck > 0) {
      fp::Matrix co = fp::coordinates(full, emb, p);
      for (int j = 0; j < di; ++j)
        for (int c = 0; c < ck; ++c) m(c, j) = co(j, ib.rows() + c);
    }
    r.arrows[a] = {i, k};
    r.maps[a] = std::move(m);
  }
  return r;
}

inline void flip_at(std::vector<std::pair<int, int>>& arrows, int k) {
  for (auto& [s, t] : arrows)
    if (s == k || t == k) std::swap(s, t);
}

}  // namespace detail

/// The indecomposable representation with dimension vector alpha, built
/// from a simple by reflection functors, and certified by dim End = 1.
inline FqRep indecomposable(const DynkinQuiver& d, const ExpVec& alpha, int p) {
  if (!fp::is_prime(p)) throw std::invalid_argument("indecomposable: p must be prime");
  const Quiver& q = d.quiver();
  const int n = q.size();
  const auto roots = positive_roots(d);
  if (std::find(roots.begin(), roots.end(), alpha) == roots.end())
    throw DomainError("not_a_root", "dimension vector is not a positive root");
  const auto arrows0 = representation_arrows(q);
  // Sink-admissible order of the representation quiver: targets before sources.
  std::vector<int> order;
  {
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    while (static_cast<int>(order.size()) < n) {
      for (int v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        bool sink = true;
        for (auto [s, t] : arrows0)
          if (s == v && !used[static_cast<std::size_t>(t)]) sink = false;
        if (sink) {
          used[static_cast<std::size_t>(v)] = true;
          order.push_back(v);
          break;
        }
      }
    }
  }
  std::vector<int> path;
  auto arrows = arrows0;
  ExpVec beta = alpha;
  int k = -1;
  for (int t = 0;; ++t) {
    if (t > n * (static_cast<int>(roots.size()) + 2)) throw std::logic_error("indecomposable: reflection walk did not terminate");
    k = order[static_cast<std::size_t>(t % n)];
    if (beta == unit_vec(n, k)) break;
    beta = simple_reflection(q, beta, k);
    if (!nonnegative(beta)) throw std::logic_error("indecomposable: reflection left the positive cone");
    detail::flip_at(arrows, k);
    path.push_back(k);
  }
  FqRep v = simple_rep(arrows, n, k, p);
  for (auto it = path.rbegin(); it != path.rend(); ++it) v = detail::reflect_at_source(v, *it);
  if (v.arrows != arrows0 || v.dim != alpha) throw std::logic_error("indecomposable: reflection functors returned the wrong shape");
  if (hom_dim(v, v) != 1) throw std::logic_error("indecomposable: endomorphism algebra is not the ground field");
  return v;
}

/// Positive roots together with their indecomposables over F_p, built once.
class RepContext {
 public:
  RepContext(DynkinQuiver d, int p) : dynkin_(std::move(d)), p_(p), roots_(positive_roots(dynkin_)) {
    for (const auto& a : roots_) indec_.push_back(indecomposable(dynkin_, a, p_));
  }
  const DynkinQuiver& dynkin() const { return dynkin_; }
  int p() const { return p_; }
  const std::vector<ExpVec>& roots() const { return roots_; }
  const FqRep& rep(std::size_t i) const { return indec_[i]; }
  const FqRep& rep_of(const ExpVec& alpha) const { return indec_[index_of(alpha)]; }
  std::size_t index_of(const ExpVec& alpha) const {
    auto it = std::find(roots_.begin(), roots_.end(), alpha);
    if (it == roots_.end()) throw DomainError("not_a_root", "dimension vector is not a positive root");
    return static_cast<std::size_t>(it - roots_.begin());
  }

  /// dim Hom(V(beta), M) for every root beta; determines M up to isomorphism.
  std::vector<int> fingerprint(const FqRep& m) const {
    std::vector<int> f;
    for (const auto& v : indec_) f.push_back(hom_dim(v, m));
    return f;
  }

 private:
  DynkinQuiver dynkin_;
  int p_;
  std::vector<ExpVec> roots_;
  std::vector<FqRep> indec_;
};

// ---------------------------------------------------------------------------
// Hom order, source sequences

/// order[a][b] true iff root a <= root b in the smallest order containing
/// Hom(V(a), V(b)) != 0.
inline std::vector<std::vector<bool>> hom_order(const RepContext& ctx) {
  const std::size_t N = ctx.roots().size();
  std::vector<std::vector<bool>> le(N, std::vector<bool>(N, false));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) le[a][b] = a == b || hom_dim(ctx.rep(a), ctx.rep(b)) != 0;
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t a = 0; a < N; ++a)
      if (le[a][k])
        for (std::size_t b = 0; b < N; ++b)
          if (le[k][b]) le[a][b] = true;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      if (le[a][b] && le[b][a]) throw std::logic_error("hom_order: relation is not antisymmetric");
  return le;
}

/// Number of orderings listing larger elements first (capped at `cap`+1).
inline long long count_decreasing_extensions(const std::vector<std::vector<bool>>& le, long long cap) {
  const std::size_t N = le.size();
  if (N > 24) return cap + 1;
  // dp over the set of already listed elements
  std::vector<long long> dp(std::size_t{1} << N, 0);
  dp[0] = 1;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == 0) continue;
    for (std::size_t x = 0; x < N; ++x) {
      if (mask >> x & 1) continue;
      bool ok = true;  // every strictly larger y must already be listed
      for (std::size_t y = 0; y < N && ok; ++y)
        if (y != x && le[x][y] && !(mask >> y & 1)) ok = false;
      if (ok) dp[mask | (std::size_t{1} << x)] = std::min(cap + 1, dp[mask | (std::size_t{1} << x)] + dp[mask]);
    }
  }
  return dp.back();
}

/// Enumeration i_1, ..., i_n with each i_j a source once its predecessors are
/// removed; the smallest admissible vertex is taken first.
inline std::vector<int> source_sequence(const Quiver& q) {
  const int n = q.size();
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::vector<int> seq;
  while (static_cast<int>(seq.size()) < n) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v) {
      if (removed[static_cast<std::size_t>(v)]) continue;
      bool source = true;
      for (int u = 0; u < n; ++u)
        if (!removed[static_cast<std::size_t>(u)] && q.arrows(u, v) > 0) source = false;
      if (source) pick = v;
    }
    if (pick < 0) throw DomainError("cycle", "source_sequence: quiver has an oriented cycle");
    removed[static_cast<std::size_t>(pick)] = true;
    seq.push_back(pick);
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Stability

/// Z(S_i) = (x_i, y_i) with exact rational coordinates.
struct CentralCharge {
  std::vector<std::pair<mpq_class, mpq_class>> z;

  std::pair<mpq_class, mpq_class> operator()(const ExpVec& a) const {
    if (a.size() != z.size()) throw std::invalid_argument("central charge: dimension mismatch");
    mpq_class x = 0, y = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      x += a[i] * z[i].first;
      y += a[i] * z[i].second;
    }
    return {x, y};
  }

  /// Z(a) in the half-open upper half plane: y > 0, or y = 0 and x > 0.
  bool admissible(const ExpVec& a) const {
    auto [x, y] = (*this)(a);
    return sgn(y) > 0 || (sgn(y) == 0 && sgn(x) > 0);
  }

  void validate(const std::vector<ExpVec>& roots) const {
    for (const auto& a : roots)
      if (!admissible(a)) throw DomainError("bad_charge", "central charge leaves the half plane of phases [0, pi)");
  }
};

/// arg Z(a) < arg Z(b), decided by the sign of a cross product.
inline bool phase_lt(const CentralCharge& Z, const ExpVec& a, const ExpVec& b) {
  if (!Z.admissible(a) || !Z.admissible(b)) throw DomainError("bad_charge", "phase of a class with zero or inadmissible charge");
  auto [xa, ya] = Z(a);
  auto [xb, yb] = Z(b);
  return sgn(xa * yb - ya * xb) > 0;
}

inline bool same_phase(const CentralCharge& Z, const ExpVec& a, const ExpVec& b) {
  return !phase_lt(Z, a, b) && !phase_lt(Z, b, a);
}

inline bool proportional(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

/// No two non-proportional roots have collinear charges.
inline bool is_generic(const CentralCharge& Z, const std::vector<ExpVec>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (proportional(roots[i], roots[j])) continue;
      auto [xa, ya] = Z(roots[i]);
      auto [xb, yb] = Z(roots[j]);
      if (sgn(xa * yb - ya * xb) == 0) return false;
    }
  return true;
}

struct StableRoot {
  ExpVec root;
  int phase_rank;  // 0 = largest phase
};

/// Stable indecomposables, sorted by strictly decreasing phase.
inline std::vector<StableRoot> stables(const RepContext& ctx, const CentralCharge& Z) {
  Z.validate(ctx.roots());
  if (!is_generic(Z, ctx.roots())) throw DomainError("not_generic", "central charge is not generic");
  std::vector<ExpVec> st;
  for (std::size_t i = 0; i < ctx.roots().size(); ++i) {
    const ExpVec& a = ctx.roots()[i];
    bool stable = true;
    for (const auto& e : subrep_dims(ctx.rep(i)))
      if (!phase_lt(Z, e, a)) {
        stable = false;
        break;
      }
    if (stable) st.push_back(a);
  }
  std::sort(st.begin(), st.end(), [&](const ExpVec& a, const ExpVec& b) { return phase_lt(Z, b, a); });
  std::vector<StableRoot> out;
  for (std::size_t i = 0; i < st.size(); ++i) out.push_back({st[i], static_cast<int>(i)});
  return out;
}

inline std::vector<WordFactor> positive_word(const std::vector<ExpVec>& roots) {
  std::vector<WordFactor> w;
  for (const auto& a : roots) w.push_back({1, 1, a});
  return w;
}

/// Product of E(y^{dim M}) over stable M in decreasing phase order.
inline Series reineke_product(const RepContext& ctx, const CentralCharge& Z, int D) {
  std::vector<ExpVec> roots;
  for (const auto& s : stables(ctx, Z)) roots.push_back(s.root);
  return eval_word(skew_from_quiver(ctx.dynkin().quiver()), positive_word(roots), D);
}

struct CorollaryReport {
  std::vector<int> source_seq;
  std::vector<ExpVec> decreasing_roots;  // the first decreasing linear extension
  long long extension_count = 0;         // capped at limit + 1
  long long extensions_checked = 0;
  bool pass = false;
  std::optional<SeriesDifference<QRat>> difference;
  std::vector<ExpVec> failing_order;
};

/// Source-sequence product against products over decreasing linear
/// extensions of the Hom order; every extension is checked when there are at
/// most `limit` of them, otherwise only the first.
inline CorollaryReport verify_corollary(const RepContext& ctx, int D, long long limit = 1000) {
  CorollaryReport rep;
  const Quiver& q = ctx.dynkin().quiver();
  const SkewForm form = skew_from_quiver(q);
  const int n = q.size();
  rep.source_seq = source_sequence(q);
  std::vector<ExpVec> simples;
  for (int v : rep.source_seq) simples.push_back(unit_vec(n, v));
  const Series lhs = eval_word(form, positive_word(simples), D);

  const auto le = hom_order(ctx);
  const std::size_t N = le.size();
  rep.extension_count = count_decreasing_extensions(le, limit);
  const bool all = rep.extension_count <= limit;

  std::vector<std::size_t> order;
  std::vector<bool> used(N, false);
  bool stop = false;
  std::function<void(const Series&)> rec = [&](const Series& prefix) {
    if (stop) return;
    if (order.size() == N) {
      ++rep.extensions_checked;
      std::vector<ExpVec> roots;
      for (auto i : order) roots.push_back(ctx.roots()[i]);
      if (rep.decreasing_roots.empty()) rep.decreasing_roots = roots;
      auto diff = lhs.first_difference(prefix);
      if (diff) {
        rep.difference = diff;
        rep.failing_order = roots;
        stop = true;
      }
      if (!all) stop = true;
      return;
    }
    for (std::size_t x = 0; x < N && !stop; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (std::size_t y = 0; y < N && ok; ++y)
        if (y != x && le[x][y] && !used[y]) ok = false;
      if (!ok) continue;
      used[x] = true;
      order.push_back(x);
      rec(prefix * dilog(form, 1, ctx.roots()[x], D));
      order.pop_back();
      used[x] = false;
    }
  };
  rec(Series::unit(form, D));
  rep.pass = !rep.difference.has_value();
  return rep;
}

}  // namespace qdilog
