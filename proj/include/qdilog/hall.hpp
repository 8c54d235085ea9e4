#pragma once

// Ringel-Hall algebra of a Dynkin quiver over F_p, by brute force: Hall
// numbers count subrepresentations of a concrete representative, and the
// integration map lands in the quantum affine space with q specialized.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdilog/dynkin.hpp"
#include "qdilog/errors.hpp"
#include "qdilog/qtorus.hpp"
#include "qdilog/spec_value.hpp"

namespace qdilog {

/// sum a_i b_i - sum_{arrows i -> j} a_i b_j.  On representations of the
/// opposite quiver this is dim Hom(V_b, V_a) - dim Ext^1(V_b, V_a).
inline int euler_form(const Quiver& q, const ExpVec& a, const ExpVec& b) {
  const int n = q.size();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("euler_form: dimension mismatch");
  int s = 0;
  for (int i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s -= q.arrows(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return s;
}

/// Krull-Schmidt decomposition: multiplicity of V(root_i) for each positive root.
struct IsoClass {
  std::vector<int> mult;
  friend auto operator<=>(const IsoClass&, const IsoClass&) = default;
};

inline bool dim_le(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Hall-algebra bookkeeping over a fixed RepContext.  Structure constants
/// are computed per dimension vector on first use and cached.
class HallAlgebra {
 public:
  explicit HallAlgebra(const RepContext& ctx) : ctx_(ctx) {
    const std::size_t N = ctx_.roots().size();
    for (std::size_t i = 0; i < N; ++i) finger_.push_back(ctx_.fingerprint(ctx_.rep(i)));
  }

  const RepContext& context() const { return ctx_; }
  int n() const { return ctx_.dynkin().rank(); }
  const Quiver& quiver() const { return ctx_.dynkin().quiver(); }

  IsoClass zero() const { return {std::vector<int>(ctx_.roots().size(), 0)}; }
  IsoClass indecomposable(const ExpVec& alpha) const {
    IsoClass c = zero();
    ++c.mult[ctx_.index_of(alpha)];
    return c;
  }
  IsoClass direct_sum(const IsoClass& a, const IsoClass& b) const {
    IsoClass c = a;
    for (std::size_t i = 0; i < c.mult.size(); ++i) c.mult[i] += b.mult[i];
    return c;
  }
  IsoClass power(const IsoClass& a, int k) const {
    IsoClass c = a;
    for (int& m : c.mult) m *= k;
    return c;
  }

  ExpVec dim(const IsoClass& c) const {
    ExpVec d(static_cast<std::size_t>(n()), 0);
    for (std::size_t i = 0; i < c.mult.size(); ++i) d = d + scaled(ctx_.roots()[i], c.mult[i]);
    return d;
  }

  std::string name(const IsoClass& c) const {
    std::string s;
    for (std::size_t i = 0; i < c.mult.size(); ++i) {
      if (c.mult[i] == 0) continue;
      if (!s.empty()) s += "+";
      s += "V(";
      for (std::size_t j = 0; j < ctx_.roots()[i].size(); ++j) s += (j ? "," : "") + std::to_string(ctx_.roots()[i][j]);
      s += ")";
      if (c.mult[i] > 1) s += "^" + std::to_string(c.mult[i]);
    }
    return s.empty() ? "0" : s;
  }

  FqRep representative(const IsoClass& c) const {
    FqRep r = zero_rep(representation_arrows(quiver()), n(), ctx_.p());
    for (std::size_t i = 0; i < c.mult.size(); ++i)
      for (int k = 0; k < c.mult[i]; ++k) r = qdilog::direct_sum(r, ctx_.rep(i));
    return r;
  }

  /// All classes with dimension vector <= bound componentwise, ordered by
  /// total dimension and then by multiplicities.
  std::vector<IsoClass> classes_within(const ExpVec& bound) const {
    std::vector<IsoClass> out;
    IsoClass cur = zero();
    const auto& roots = ctx_.roots();
    auto rec = [&](auto&& self, std::size_t i, const ExpVec& left) -> void {
      if (i == roots.size()) {
        out.push_back(cur);
        return;
      }
      ExpVec rem = left;
      for (int k = 0;; ++k) {
        cur.mult[i] = k;
        self(self, i + 1, rem);
        rem = rem - roots[i];
        if (!nonnegative(rem)) break;
      }
      cur.mult[i] = 0;
    };
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), [&](const IsoClass& a, const IsoClass& b) {
      const int da = total_degree(dim(a)), db = total_degree(dim(b));
      if (da != db) return da < db;
      return a.mult > b.mult;
    });
    return out;
  }

  std::vector<IsoClass> classes_of_dim(const ExpVec& d) const {
    std::vector<IsoClass> out;
    for (auto& c : classes_within(d))
      if (dim(c) == d) out.push_back(c);
    return out;
  }

  /// c^N_{LM}: submodules L' of N with L' ~ L and N/L' ~ M.
  long long hall_number(const IsoClass& l, const IsoClass& m, const IsoClass& nn) const {
    if (dim(l) + dim(m) != dim(nn)) return 0;
    const auto& table = structure(dim(nn));
    auto it = table.find(nn);
    if (it == table.end()) return 0;
    auto jt = it->second.find({l, m});
    return jt == it->second.end() ? 0 : jt->second;
  }

  /// |Aut(M)| by enumerating End(M) over F_p.
  long long aut_order(const IsoClass& c) const {
    const FqRep m = representative(c);
    check_guard(m, "aut_order");
    const fp::Matrix basis = hom_basis(m, m);
    const int e = basis.rows();
    const int p = ctx_.p();
    double size = 1;
    for (int i = 0; i < e; ++i) size *= p;
    if (size > double(1 << 22)) throw GuardError("aut_order: endomorphism algebra has " + std::to_string(p) + "^" + std::to_string(e) + " elements");
    std::vector<int> coef(static_cast<std::size_t>(e), 0);
    const int vars = basis.cols();
    long long count = 0;
    for (;;) {
      std::vector<int> phi(static_cast<std::size_t>(vars), 0);
      for (int b = 0; b < e; ++b)
        if (coef[static_cast<std::size_t>(b)])
          for (int v = 0; v < vars; ++v)
            phi[static_cast<std::size_t>(v)] = (phi[static_cast<std::size_t>(v)] + coef[static_cast<std::size_t>(b)] * basis(b, v)) % p;
      bool invertible = true;
      int off = 0;
      for (int d : m.dim) {
        fp::Matrix blk(d, d);
        for (int r = 0; r < d; ++r)
          for (int s = 0; s < d; ++s) blk(r, s) = phi[static_cast<std::size_t>(off + r * d + s)];
        off += d * d;
        if (d > 0 && fp::rank(blk, p) != d) {
          invertible = false;
          break;
        }
      }
      if (invertible) ++count;
      int pos = 0;
      while (pos < e && ++coef[static_cast<std::size_t>(pos)] == p) coef[static_cast<std::size_t>(pos++)] = 0;
      if (pos == e) break;
    }
    return count;
  }

  /// The class of an arbitrary representation, from its Hom fingerprint.
  IsoClass classify(const FqRep& m) const {
    const auto f = ctx_.fingerprint(m);
    for (const auto& c : classes_of_dim(m.dim))
      if (fingerprint(c) == f) return c;
    throw std::logic_error("classify: fingerprint matches no isomorphism class");
  }

 private:
  using Table = std::map<IsoClass, std::map<std::pair<IsoClass, IsoClass>, long long>>;

  std::vector<int> fingerprint(const IsoClass& c) const {
    std::vector<int> f(finger_.size(), 0);
    for (std::size_t i = 0; i < c.mult.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) f[j] += c.mult[i] * finger_[i][j];
    return f;
  }

  const Table& structure(const ExpVec& d) const {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    Table t;
    std::map<ExpVec, std::map<std::vector<int>, IsoClass>> lookup;
    auto classify_cached = [&](const FqRep& r) {
      auto& byfp = lookup[r.dim];
      if (byfp.empty())
        for (const auto& c : classes_of_dim(r.dim)) byfp.emplace(fingerprint(c), c);
      auto jt = byfp.find(ctx_.fingerprint(r));
      if (jt == byfp.end()) throw std::logic_error("hall: fingerprint matches no isomorphism class");
      return jt->second;
    };
    for (const auto& nn : classes_of_dim(d)) {
      const FqRep rep = representative(nn);
      auto& row = t[nn];
      for_each_subrep(rep, [&](const std::vector<fp::Matrix>& bases) {
        IsoClass l = classify_cached(subrep(rep, bases));
        IsoClass m = classify_cached(quotient_rep(rep, bases));
        ++row[{l, m}];
      });
    }
    return cache_.emplace(d, std::move(t)).first->second;
  }

  const RepContext& ctx_;
  std::vector<std::vector<int>> finger_;
  mutable std::map<ExpVec, Table> cache_;
};

/// Finite combination of classes, truncated to dimension vectors <= bound.
struct HallElement {
  ExpVec bound;
  std::map<IsoClass, mpq_class> terms;

  void add(const HallAlgebra& h, const IsoClass& c, const mpq_class& a) {
    if (sgn(a) == 0 || !dim_le(h.dim(c), bound)) return;
    auto& x = terms[c];
    x += a;
    if (sgn(x) == 0) terms.erase(c);
  }
  friend bool operator==(const HallElement&, const HallElement&) = default;
};

inline HallElement hall_basis(const HallAlgebra& h, const IsoClass& c, const ExpVec& bound) {
  HallElement e{bound, {}};
  e.add(h, c, 1);
  return e;
}

inline HallElement hall_product(const HallAlgebra& h, const HallElement& x, const HallElement& y) {
  if (x.bound != y.bound) throw std::invalid_argument("hall_product: bounds differ");
  HallElement r{x.bound, {}};
  for (const auto& [l, a] : x.terms)
    for (const auto& [m, b] : y.terms) {
      const ExpVec d = h.dim(l) + h.dim(m);
      if (!dim_le(d, r.bound)) continue;
      for (const auto& nn : h.classes_of_dim(d)) {
        const long long c = h.hall_number(l, m, nn);
        if (c != 0) r.add(h, nn, a * b * mpq_class(static_cast<long>(c)));
      }
    }
  return r;
}

/// q = p^m as an integer.
inline mpz_class spec_q(int p, int m) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
  return q;
}

using SpecSeries = QSeries<SpecValue>;

/// [M] -> q^{<d,d>/2} y^d / |Aut M| with d = dim M, extended linearly; q = p^m
/// and q^{1/2} kept as a formal square root unless q is a perfect square.
inline SpecSeries integrate(const HallAlgebra& h, const HallElement& x, int m, int D = -1) {
  const mpz_class q = spec_q(h.context().p(), m);
  const SpecValue one(1, q);
  if (D < 0) D = total_degree(x.bound);
  SpecSeries s(skew_from_quiver(h.quiver()), D, one);
  for (const auto& [c, a] : x.terms) {
    const ExpVec d = h.dim(c);
    if (total_degree(d) > D) continue;
    const SpecValue coeff = one.vpow(euler_form(h.quiver(), d, d)) *
                            SpecValue(a / mpq_class(static_cast<long>(h.aut_order(c))), 0, q);
    s.accumulate(d, coeff);
  }
  return s;
}

inline SpecSeries specialize(const Series& s, const mpz_class& q) {
  return s.map_coeffs([&](const QRat& f) { return SpecValue::from_qrat(f, q); }, SpecValue(1, q));
}

struct ExpSumReport {
  bool pass = true;
  int failing_n = -1;
  std::string lhs, rhs;
};

/// Coefficients of y^{n alpha} in the integral of sum_n [M^n] against the
/// dilogarithm coefficients at q = p, for n <= n_max.
inline ExpSumReport verify_exp_sum(const HallAlgebra& h, const ExpVec& alpha, int n_max) {
  ExpSumReport r;
  const IsoClass m = h.indecomposable(alpha);
  const FqRep rep = h.representative(m);
  if (hom_dim(rep, rep) != 1) throw DomainError("end_not_field", "verify_exp_sum: End(M) is not the ground field");
  if (n_max * total_degree(alpha) > brute_force_guard())
    throw GuardError("verify_exp_sum: n_max |alpha| exceeds guard " + std::to_string(brute_force_guard()));
  const ExpVec bound = scaled(alpha, n_max);
  HallElement sum{bound, {}};
  for (int n = 0; n <= n_max; ++n) sum.add(h, h.power(m, n), 1);
  const SpecSeries lhs = integrate(h, sum, 1);
  const mpz_class q = spec_q(h.context().p(), 1);
  for (int n = 0; n <= n_max; ++n) {
    const SpecValue got = lhs.coefficient(scaled(alpha, n));
    const SpecValue want = SpecValue::from_qrat(dilog_coefficient(n), q);
    if (!(got == want)) {
      r.pass = false;
      r.failing_n = n;
      r.lhs = got.to_string();
      r.rhs = want.to_string();
      return r;
    }
  }
  return r;
}

struct HnReport {
  bool pass = false;
  HallElement lhs, rhs;
  std::vector<std::vector<IsoClass>> phase_groups;  // decreasing phase
};

/// Semistable: every nonzero proper subrepresentation has phase <= phase(M).
inline bool is_semistable(const HallAlgebra& h, const CentralCharge& Z, const IsoClass& c) {
  const ExpVec d = h.dim(c);
  for (const auto& e : subrep_dims(h.representative(c)))
    if (phase_lt(Z, d, e)) return false;
  return true;
}

/// sum over all classes [M] against the product, in decreasing phase, of the
/// sums over semistable classes of each phase; both truncated at `bound`.
inline HnReport verify_hn_identity(const HallAlgebra& h, const CentralCharge& Z, const ExpVec& bound) {
  const auto& roots = h.context().roots();
  Z.validate(roots);
  if (!is_generic(Z, roots)) throw DomainError("not_generic", "central charge is not generic");
  HnReport r;
  r.lhs = HallElement{bound, {}};
  const auto classes = h.classes_within(bound);
  std::vector<IsoClass> semistable;
  for (const auto& c : classes) {
    r.lhs.add(h, c, 1);
    if (total_degree(h.dim(c)) > 0 && is_semistable(h, Z, c)) semistable.push_back(c);
  }
  std::stable_sort(semistable.begin(), semistable.end(),
                   [&](const IsoClass& a, const IsoClass& b) { return phase_lt(Z, h.dim(b), h.dim(a)); });
  for (const auto& c : semistable) {
    if (!r.phase_groups.empty() && same_phase(Z, h.dim(r.phase_groups.back().front()), h.dim(c)))
      r.phase_groups.back().push_back(c);
    else
      r.phase_groups.push_back({c});
  }
  r.rhs = hall_basis(h, h.zero(), bound);
  for (const auto& group : r.phase_groups) {
    HallElement factor = hall_basis(h, h.zero(), bound);
    for (const auto& c : group) factor.add(h, c, 1);
    r.rhs = hall_product(h, r.rhs, factor);
  }
  r.pass = r.lhs == r.rhs;
  return r;
}

}  // namespace qdilog
