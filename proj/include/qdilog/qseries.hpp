#pragma once

// Truncated series in the formal quantum affine space:
//   y^a y^b = q^{lambda(a,b)/2} y^{a+b}
// with lambda an integer skew form.  Coefficients come from any field type C
// providing +, *, inverse(), is_zero() and vpow(k) (= q^{k/2} in C).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/errors.hpp"

namespace qdilog {

using ExpVec = std::vector<int>;

inline int total_degree(const ExpVec& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

inline ExpVec unit_vec(int n, int i) {
  ExpVec e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

inline ExpVec operator+(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent dimension mismatch");
  ExpVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline ExpVec operator-(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent dimension mismatch");
  ExpVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
inline ExpVec scaled(const ExpVec& a, int k) {
  ExpVec r(a);
  for (int& x : r) x *= k;
  return r;
}
inline bool nonnegative(const ExpVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

/// Integer antisymmetric matrix; form(i, j) = lambda(e_i, e_j).
class SkewForm {
 public:
  SkewForm() = default;
  explicit SkewForm(int n) : n_(n), m_(static_cast<std::size_t>(n * n), 0) {}
  SkewForm(int n, std::vector<int> entries) : n_(n), m_(std::move(entries)) {
    if (m_.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("SkewForm: wrong entry count");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) throw std::invalid_argument("SkewForm: matrix is not antisymmetric");
  }

  int size() const { return n_; }
  int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }

  int lambda(const ExpVec& a, const ExpVec& b) const {
    check(a);
    check(b);
    int s = 0;
    for (int i = 0; i < n_; ++i) {
      if (a[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < n_; ++j) s += a[static_cast<std::size_t>(i)] * (*this)(i, j) * b[static_cast<std::size_t>(j)];
    }
    return s;
  }

  void check(const ExpVec& a) const {
    if (a.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("exponent of length " + std::to_string(a.size()) + " for a form on " +
                                  std::to_string(n_) + " vertices");
  }

  friend bool operator==(const SkewForm&, const SkewForm&) = default;

 private:
  int n_ = 0;
  std::vector<int> m_;
};

/// y^a y^b = (q^{1/2})^{power} y^{exponent}
struct MonomialProduct {
  int power;
  ExpVec exponent;
  friend bool operator==(const MonomialProduct&, const MonomialProduct&) = default;
};

inline MonomialProduct monomial_mul(const SkewForm& form, const ExpVec& a, const ExpVec& b) {
  return {form.lambda(a, b), a + b};
}

template <class C>
struct SeriesDifference {
  ExpVec exponent;  // absolute exponent of the first differing monomial
  C lhs;
  C rhs;
};

/// y^{offset} * sum_gamma c_gamma y^gamma, gamma in N^n, |gamma| <= D.
///
/// Internally coefficients are kept against the absolute monomials y^delta
/// (delta = offset + gamma), which form a basis of the quantum torus, so that
/// shifting offsets never rescales stored coefficients.
template <class C>
class QSeries {
 public:
  QSeries(SkewForm form, int truncation, C one = C(1))
      : form_(std::move(form)), offset_(static_cast<std::size_t>(form_.size()), 0), D_(truncation), one_(std::move(one)) {
    if (D_ < 0) throw std::invalid_argument("QSeries: negative truncation bound");
  }

  static QSeries unit(const SkewForm& form, int truncation, C one = C(1)) {
    QSeries s(form, truncation, one);
    s.terms_.emplace(s.offset_, one);
    return s;
  }

  /// c * y^exponent, with the offset placed at the exponent.
  static QSeries monomial(const SkewForm& form, int truncation, const C& c, const ExpVec& exponent, C one = C(1)) {
    form.check(exponent);
    QSeries s(form, truncation, one);
    s.offset_ = exponent;
    if (!c.is_zero()) s.terms_.emplace(exponent, c);
    return s;
  }

  /// Builds from cone-relative data: y^offset * sum c_gamma y^gamma.
  static QSeries from_cone(const SkewForm& form, int truncation, const ExpVec& offset,
                           const std::vector<std::pair<ExpVec, C>>& cone_terms, C one = C(1)) {
    form.check(offset);
    QSeries s(form, truncation, one);
    s.offset_ = offset;
    for (const auto& [g, c] : cone_terms) {
      form.check(g);
      if (!nonnegative(g)) throw std::invalid_argument("QSeries: cone exponent with a negative entry");
      if (total_degree(g) > truncation) continue;
      s.accumulate(offset + g, c * s.vpow(form.lambda(offset, g)));
    }
    return s;
  }

  const SkewForm& form() const { return form_; }
  const ExpVec& offset() const { return offset_; }
  int truncation() const { return D_; }
  const C& one() const { return one_; }
  const std::map<ExpVec, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the basis monomial y^delta.
  C coefficient(const ExpVec& delta) const {
    auto it = terms_.find(delta);
    return it == terms_.end() ? zero() : it->second;
  }

  /// Coefficients relative to y^offset, i.e. c_gamma with y^offset y^gamma,
  /// sorted lexicographically by gamma.
  std::vector<std::pair<ExpVec, C>> cone_terms() const {
    std::vector<std::pair<ExpVec, C>> out;
    for (const auto& [d, c] : terms_) {
      ExpVec g = d - offset_;
      out.emplace_back(g, c * vpow(-form_.lambda(offset_, g)));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  /// Adds c * y^delta; terms outside the truncation window are dropped.
  void accumulate(const ExpVec& delta, const C& c) {
    if (c.is_zero() || !in_window(delta)) return;
    auto [it, inserted] = terms_.try_emplace(delta, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool in_window(const ExpVec& delta) const {
    int deg = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      int d = delta[i] - offset_[i];
      if (d < 0) return false;
      deg += d;
    }
    return deg <= D_;
  }

  QSeries operator*(const QSeries& g) const {
    require_compatible(g);
    QSeries r(form_, D_, one_);
    r.offset_ = offset_ + g.offset_;
    std::map<int, C> powers;
    auto pw = [&](int k) -> const C& {
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, vpow(k)).first;
      return it->second;
    };
    std::vector<std::pair<int, const std::pair<const ExpVec, C>*>> gt;
    gt.reserve(g.terms_.size());
    for (const auto& t : g.terms_) gt.emplace_back(total_degree(t.first - g.offset_), &t);
    for (const auto& [da, ca] : terms_) {
      const int dega = total_degree(da - offset_);
      for (const auto& [degb, tb] : gt) {
        if (dega + degb > D_) continue;
        const auto& [db, cb] = *tb;
        const int lam = form_.lambda(da, db);
        C c = ca * cb;
        if (lam != 0) c = c * pw(lam);
        r.accumulate(da + db, c);
      }
    }
    return r;
  }

  QSeries operator+(const QSeries& g) const {
    require_compatible(g);
    QSeries r(form_, D_, one_);
    for (std::size_t i = 0; i < offset_.size(); ++i) r.offset_[i] = std::min(offset_[i], g.offset_[i]);
    for (const auto& [d, c] : terms_) r.accumulate(d, c);
    for (const auto& [d, c] : g.terms_) r.accumulate(d, c);
    return r;
  }
  QSeries operator-() const {
    QSeries r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  QSeries operator-(const QSeries& g) const { return *this + (-g); }
  QSeries& operator*=(const QSeries& g) { return *this = *this * g; }

  QSeries scaled(const C& s) const {
    QSeries r(form_, D_, one_);
    r.offset_ = offset_;
    for (const auto& [d, c] : terms_) r.accumulate(d, c * s);
    return r;
  }

  /// Two-sided inverse up to the truncation degree; the offset is negated.
  QSeries inverse() const {
    const ExpVec zero_exp(offset_.size(), 0);
    // h = y^{-offset} f is supported on the cone.
    QSeries h = monomial(form_, D_, one_, qdilog::scaled(offset_, -1), one_) * *this;
    h.offset_ = zero_exp;
    const C c0 = h.coefficient(zero_exp);
    if (c0.is_zero()) throw DomainError("not_invertible", "series_inv: constant term is zero");
    const C c0inv = c0.inverse();
    // Right inverse g of h, solved degree by degree: (h g)_gamma = 0 for gamma != 0.
    std::map<ExpVec, C> g;
    g.emplace(zero_exp, c0inv);
    std::vector<std::pair<ExpVec, C>> hs;
    for (const auto& [a, c] : h.terms_)
      if (a != zero_exp) hs.emplace_back(a, c);
    for (const ExpVec& gamma : cone_monomials(form_.size(), D_)) {
      if (gamma == zero_exp) continue;
      C acc = zero();
      for (const auto& [a, ca] : hs) {
        ExpVec rest = gamma - a;
        if (!nonnegative(rest)) continue;
        auto it = g.find(rest);
        if (it == g.end()) continue;
        acc = acc + ca * it->second * vpow(form_.lambda(a, rest));
      }
      if (!acc.is_zero()) g.emplace(gamma, -(c0inv * acc));
    }
    QSeries gs(form_, D_, one_);
    gs.terms_ = std::move(g);
    QSeries r = gs * monomial(form_, D_, one_, qdilog::scaled(offset_, -1), one_);
    return r;
  }

  /// Compares f and g over the common window: the componentwise minimum
  /// offset and the smaller truncation bound.  Returns the lexicographically
  /// first absolute exponent where they differ.
  std::optional<SeriesDifference<C>> first_difference(const QSeries& g) const {
    if (!(form_ == g.form_)) throw std::invalid_argument("QSeries comparison: skew forms differ");
    QSeries window(form_, std::min(D_, g.D_), one_);
    for (std::size_t i = 0; i < offset_.size(); ++i) window.offset_[i] = std::min(offset_[i], g.offset_[i]);
    auto a = terms_.begin();
    auto b = g.terms_.begin();
    auto skip = [&](auto& it, const auto& end) {
      while (it != end && !window.in_window(it->first)) ++it;
    };
    for (;;) {
      skip(a, terms_.end());
      skip(b, g.terms_.end());
      if (a == terms_.end() && b == g.terms_.end()) return std::nullopt;
      if (b == g.terms_.end() || (a != terms_.end() && a->first < b->first))
        return SeriesDifference<C>{a->first, a->second, zero()};
      if (a == terms_.end() || b->first < a->first) return SeriesDifference<C>{b->first, zero(), b->second};
      if (!(a->second == b->second)) return SeriesDifference<C>{a->first, a->second, b->second};
      ++a;
      ++b;
    }
  }

  bool equals(const QSeries& g) const { return !first_difference(g).has_value(); }

  /// Applies a ring map coefficientwise (e.g. specialization of q).
  template <class C2, class F>
  QSeries<C2> map_coeffs(F&& fn, C2 one2) const {
    QSeries<C2> r(form_, D_, one2);
    r.set_offset(offset_);
    for (const auto& [d, c] : terms_) r.accumulate(d, fn(c));
    return r;
  }

  void set_offset(const ExpVec& off) {
    form_.check(off);
    offset_ = off;
  }

  C vpow(int k) const { return one_.vpow(k); }
  C zero() const { return one_ - one_; }

  /// All gamma in N^n with |gamma| <= D, sorted by total degree then lex.
  static std::vector<ExpVec> cone_monomials(int n, int D) {
    std::vector<ExpVec> out;
    ExpVec cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[static_cast<std::size_t>(i)] = k;
        rec(i + 1, left - k);
      }
      cur[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, D);
    std::stable_sort(out.begin(), out.end(),
                     [](const ExpVec& x, const ExpVec& y) { return total_degree(x) < total_degree(y); });
    return out;
  }

 private:
  void require_compatible(const QSeries& g) const {
    if (!(form_ == g.form_)) throw std::invalid_argument("QSeries: skew forms differ");
    if (D_ != g.D_) throw std::invalid_argument("QSeries: truncation bounds differ");
  }

  SkewForm form_;
  ExpVec offset_;
  int D_;
  C one_;
  std::map<ExpVec, C> terms_;
};

}  // namespace qdilog
