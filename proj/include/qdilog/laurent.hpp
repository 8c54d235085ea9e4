#pragma once

// Laurent polynomials in v = q^{1/2} with rational coefficients.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qdilog {

/// Finite sum  sum_k c_k v^k  with k in Z.  Stored densely from the lowest
/// nonzero exponent; the first and last stored coefficients are nonzero and
/// the zero polynomial has no coefficients at all.
class HalfLaurent {
 public:
  HalfLaurent() = default;
  HalfLaurent(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.emplace_back(c);
  }
  HalfLaurent(const mpq_class& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) coeffs_.push_back(c);
  }
  HalfLaurent(int low, std::vector<mpq_class> coeffs) : low_(low), coeffs_(std::move(coeffs)) { trim(); }

  /// c * v^k
  static HalfLaurent monomial(const mpq_class& c, int k) {
    HalfLaurent r;
    if (sgn(c) != 0) {
      r.low_ = k;
      r.coeffs_.push_back(c);
    }
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  const mpq_class& lowest_coeff() const { return coeffs_.front(); }
  const mpq_class& leading_coeff() const { return coeffs_.back(); }

  mpq_class operator[](int k) const {
    if (is_zero() || k < low_ || k > high()) return 0;
    return coeffs_[static_cast<std::size_t>(k - low_)];
  }

  bool is_constant() const { return is_zero() || (coeffs_.size() == 1 && low_ == 0); }

  /// Multiply by v^k.
  HalfLaurent shifted(int k) const {
    HalfLaurent r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  HalfLaurent operator-() const {
    HalfLaurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend HalfLaurent operator+(const HalfLaurent& a, const HalfLaurent& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.low_, b.low_);
    const int hi = std::max(a.high(), b.high());
    std::vector<mpq_class> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i + static_cast<std::size_t>(a.low_ - lo)] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i + static_cast<std::size_t>(b.low_ - lo)] += b.coeffs_[i];
    return HalfLaurent(lo, std::move(c));
  }
  friend HalfLaurent operator-(const HalfLaurent& a, const HalfLaurent& b) { return a + (-b); }

  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return HalfLaurent(a.low_ + b.low_, std::move(c));
  }

  HalfLaurent& operator+=(const HalfLaurent& o) { return *this = *this + o; }
  HalfLaurent& operator*=(const HalfLaurent& o) { return *this = *this * o; }

  HalfLaurent scaled(const mpq_class& s) const {
    if (sgn(s) == 0) return {};
    HalfLaurent r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
    return a.coeffs_ == b.coeffs_ && (a.is_zero() || a.low_ == b.low_);
  }

  /// Value at v = t (t must be nonzero when negative exponents occur).
  mpq_class evaluate(const mpq_class& t) const {
    if (is_zero()) return 0;
    if (low_ < 0 && sgn(t) == 0) throw std::domain_error("evaluate: negative power of v at v = 0");
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    mpq_class base = 1;
    mpq_class f = low_ >= 0 ? t : mpq_class(1) / t;
    for (int i = 0; i < std::abs(low_); ++i) base *= f;
    return acc * base;
  }

 private:
  void trim() {
    std::size_t first = 0;
    while (first < coeffs_.size() && sgn(coeffs_[first]) == 0) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    while (sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    if (first > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
      low_ += static_cast<int>(first);
    }
  }

  int low_ = 0;
  std::vector<mpq_class> coeffs_;
};

namespace detail {

// Ordinary polynomials (low exponent 0) as coefficient vectors, index = degree.
// Used only inside gcd/division; never hold trailing zeros.
using IntPoly = std::vector<mpz_class>;

inline void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  mpz_class g = content(p);
  if (sgn(p.back()) < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Rational coefficient vector -> primitive integer polynomial (same roots).
inline IntPoly to_primitive(const std::vector<mpq_class>& c) {
  mpz_class l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntPoly p(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) p[i] = c[i].get_num() * (l / c[i].get_den());
  trim(p);
  make_primitive(p);
  return p;
}

// Pseudo-remainder of a by b (b nonzero), result primitive.
inline IntPoly prem(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    mpz_class la = a.back();
    mpz_class g = gcd(la, lb);
    mpz_class ma = lb / g;
    mpz_class mb = la / g;
    for (auto& c : a) c *= ma;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= mb * b[i];
    trim(a);
    make_primitive(a);
  }
  return a;
}

// Euclidean algorithm with primitive remainders; result primitive, positive lead.
inline IntPoly euclid_gcd(IntPoly a, IntPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = prem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

}  // namespace detail

/// Monic gcd of two ordinary polynomials in v, given as coefficient vectors
/// (index = degree, low exponent 0).  Exponent strides common to both inputs
/// are factored out first, since most inputs here are polynomials in q = v^2.
inline std::vector<mpq_class> poly_gcd(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  if (a.empty()) return b.empty() ? b : std::vector<mpq_class>{1};
  if (b.empty()) return {1};
  int stride = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) stride = std::gcd(stride, static_cast<int>(i));
  for (std::size_t i = 0; i < b.size(); ++i)
    if (sgn(b[i]) != 0) stride = std::gcd(stride, static_cast<int>(i));
  if (stride == 0) return {1};  // both constant
  auto compress = [stride](const std::vector<mpq_class>& p) {
    std::vector<mpq_class> r((p.size() - 1) / static_cast<std::size_t>(stride) + 1);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = p[i * static_cast<std::size_t>(stride)];
    return r;
  };
  detail::IntPoly g = detail::euclid_gcd(detail::to_primitive(compress(a)), detail::to_primitive(compress(b)));
  std::vector<mpq_class> out((g.size() - 1) * static_cast<std::size_t>(stride) + 1);
  for (std::size_t i = 0; i < g.size(); ++i) out[i * static_cast<std::size_t>(stride)] = mpq_class(g[i], g.back());
  for (auto& c : out) c.canonicalize();
  return out;
}

/// Exact quotient a / b of ordinary polynomials; throws if b does not divide a.
inline std::vector<mpq_class> poly_exact_div(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
  if (b.empty()) throw std::domain_error("poly_exact_div: division by zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("poly_exact_div: not divisible");
  const std::size_t db = b.size() - 1;
  std::vector<mpq_class> q(a.size() - db);
  const bool monic = b.back() == 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class c = a[k + db];
    if (!monic) c /= b.back();
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k + i] -= c * b[i];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (sgn(a[i]) != 0) throw std::logic_error("poly_exact_div: not divisible");
  return q;
}

}  // namespace qdilog
