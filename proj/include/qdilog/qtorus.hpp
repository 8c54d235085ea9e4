#pragma once

// Quantum dilogarithms and the identities they satisfy, evaluated as
// truncated series with QRat coefficients.

#include <optional>
#include <string>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/qrat.hpp"
#include "qdilog/qseries.hpp"
#include "qdilog/quiver_data.hpp"

namespace qdilog {

using Series = QSeries<QRat>;

inline SkewForm skew_from_quiver(const Quiver& q) {
  if (q.has_loops()) throw DomainError("loop", "skew form: quiver has a loop");
  const int n = q.size();
  std::vector<int> m(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i * n + j)] = q.arrows(i, j) - q.arrows(j, i);
  return SkewForm(n, std::move(m));
}

/// q^{n^2/2} / ((q^n - 1)(q^n - q)...(q^n - q^{n-1}))
inline QRat dilog_coefficient(int n) {
  HalfLaurent den(1);
  for (int k = 0; k < n; ++k) den *= HalfLaurent::monomial(1, 2 * n) - HalfLaurent::monomial(1, 2 * k);
  return QRat(HalfLaurent::monomial(1, n * n), den);
}

/// [n]! = prod_{k=1}^{n} (q^k - 1)/(q - 1)
inline QRat q_factorial(int n) {
  QRat r(1);
  for (int k = 1; k <= n; ++k) r *= QRat::q_power_minus_one(k) / QRat::q_power_minus_one(1);
  return r;
}

namespace detail {

inline void check_dilog_args(const SkewForm& form, const QRat& c, const ExpVec& alpha) {
  form.check(alpha);
  if (c.is_zero()) throw DomainError("zero_argument", "dilogarithm of the zero monomial");
  if (!nonnegative(alpha) || total_degree(alpha) == 0)
    throw DomainError("bad_exponent", "dilogarithm exponent must be nonzero and nonnegative");
}

template <class CoeffAt>
Series power_sum(const SkewForm& form, const QRat& c, const ExpVec& alpha, int D, CoeffAt coeff_at) {
  Series s = Series::unit(form, D);
  const int step = total_degree(alpha);
  QRat cn(1);
  for (int n = 1; n * step <= D; ++n) {
    cn *= c;
    // (y^alpha)^n = y^{n alpha}: lambda(alpha, alpha) = 0.
    s.accumulate(scaled(alpha, n), cn * coeff_at(n));
  }
  return s;
}

}  // namespace detail

/// E(c y^alpha) truncated at total degree D.
inline Series dilog(const SkewForm& form, const QRat& c, const ExpVec& alpha, int D) {
  detail::check_dilog_args(form, c, alpha);
  return detail::power_sum(form, c, alpha, D, dilog_coefficient);
}

/// exp_q(c y^alpha) = sum (c y^alpha)^n / [n]!
inline Series quantum_exp(const SkewForm& form, const QRat& c, const ExpVec& alpha, int D) {
  detail::check_dilog_args(form, c, alpha);
  return detail::power_sum(form, c, alpha, D, [](int n) { return q_factorial(n).inverse(); });
}

/// One factor E(c y^alpha)^sign of an ordered product.
struct WordFactor {
  int sign = 1;
  QRat c = QRat(1);
  ExpVec alpha;
};

/// Ordered product, evaluated left to right.
inline Series eval_word(const SkewForm& form, const std::vector<WordFactor>& word, int D) {
  Series acc = Series::unit(form, D);
  for (const auto& f : word) {
    if (f.sign != 1 && f.sign != -1) throw std::invalid_argument("eval_word: sign must be +1 or -1");
    Series e = dilog(form, f.c, f.alpha, D);
    acc *= f.sign == 1 ? e : e.inverse();
  }
  return acc;
}

/// Outcome of comparing two sides of an identity.
struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::optional<SeriesDifference<QRat>> difference;

  explicit operator bool() const { return pass; }
};

inline IdentityCheck compare_series(std::string name, const Series& lhs, const Series& rhs) {
  IdentityCheck r{std::move(name), false, lhs.first_difference(rhs)};
  r.pass = !r.difference.has_value();
  return r;
}

inline SkewForm a2_form() { return SkewForm(2, {0, 1, -1, 0}); }
inline SkewForm kronecker_form() { return SkewForm(2, {0, 2, -2, 0}); }

/// E(y1) E(y2) = E(y2) E(y^{(1,1)}) E(y1) on the A2 form; note
/// q^{-1/2} y1 y2 = y^{(1,1)}.
inline IdentityCheck pentagon_check(int D) {
  const SkewForm f = a2_form();
  Series lhs = eval_word(f, {{1, 1, {1, 0}}, {1, 1, {0, 1}}}, D);
  Series rhs = eval_word(f, {{1, 1, {0, 1}}, {1, 1, {1, 1}}, {1, 1, {1, 0}}}, D);
  return compare_series("pentagon", lhs, rhs);
}

/// (1 + c y^alpha)
inline Series binomial(const SkewForm& form, const QRat& c, const ExpVec& alpha, int D) {
  Series s = Series::unit(form, D);
  s.accumulate(alpha, c);
  return s;
}

/// E(y)(1 + q^{1/2} y) = E(q y), one variable.
inline IdentityCheck shift_identity_check(int D) {
  const SkewForm f(1);
  Series lhs = dilog(f, 1, {1}, D) * binomial(f, QRat::vpow(1), {1}, D);
  Series rhs = dilog(f, QRat::vpow(2), {1}, D);
  return compare_series("shift E(y)(1+q^{1/2}y)=E(qy)", lhs, rhs);
}

/// E(q^m y) E(y)^{-1} against prod_{j=1}^m (1 + q^{-1/2+j} y) for m >= 0,
/// or prod_{j=1}^{|m|} (1 + q^{-|m|-1/2+j} y)^{-1} for m < 0.
inline IdentityCheck conj_factor_check(int m, int D) {
  const SkewForm f(1);
  Series lhs = dilog(f, QRat::vpow(2 * m), {1}, D) * dilog(f, 1, {1}, D).inverse();
  Series rhs = Series::unit(f, D);
  const int a = m < 0 ? -m : m;
  for (int j = 1; j <= a; ++j) {
    if (m >= 0) {
      rhs *= binomial(f, QRat::vpow(2 * j - 1), {1}, D);
    } else {
      rhs *= binomial(f, QRat::vpow(-2 * a - 1 + 2 * j), {1}, D).inverse();
    }
  }
  return compare_series("conjugation factor m=" + std::to_string(m), lhs, rhs);
}

/// The Laurent identity behind the involutivity of mutation:
///   prod_{j=1}^m (1 + q^{-1/2+j} z) = q^{m^2/2} z^m prod_{j=1}^m (1 + q^{-m-1/2+j} z^{-1})
/// in one commuting variable z.  Both sides are finite, so with D = 2m the
/// comparison is exact.
inline IdentityCheck twist_involution_check(int m) {
  if (m < 0) throw std::invalid_argument("twist_involution_check: m must be nonnegative");
  const SkewForm f(1);
  const int D = 2 * m;
  Series lhs = Series::unit(f, D);
  Series rhs = Series::monomial(f, D, QRat::vpow(m * m), {m});
  for (int j = 1; j <= m; ++j) {
    lhs *= binomial(f, QRat::vpow(2 * j - 1), {1}, D);
    // 1 + c z^{-1} = z^{-1} (c + z): offset -1, cone part c + z.
    rhs *= Series::from_cone(f, D, {-1}, {{{0}, QRat::vpow(-2 * m - 1 + 2 * j)}, {{1}, 1}});
  }
  return compare_series("twist involution m=" + std::to_string(m), lhs, rhs);
}

namespace detail {

inline void check_mutation_vertex(const Quiver& q, int k) {
  if (k < 0 || k >= q.size()) throw DomainError("bad_vertex", "vertex " + std::to_string(k + 1) + " out of range");
  if (q.arrows(k, k) > 0) throw DomainError("loop", "loop at the mutation vertex");
  if (q.has_two_cycle_at(k)) throw DomainError("two_cycle", "2-cycle through the mutation vertex");
}

}  // namespace detail

/// Image of the generator y'_i under the monomial map attached to mutation
/// at k: y_k^{-1} for i = k, y_i without arrows i -> k, and
/// q^{-m^2/2} y_i y_k^m for m arrows i -> k.  Returned normalized against
/// the basis monomial y^exponent.
inline MonomialProduct phi_plus_image(const Quiver& q, int k, int i) {
  detail::check_mutation_vertex(q, k);
  const int n = q.size();
  if (i < 0 || i >= n) throw DomainError("bad_vertex", "vertex out of range");
  if (i == k) return {0, scaled(unit_vec(n, k), -1)};
  const int m = q.arrows(i, k);
  if (m == 0) return {0, unit_vec(n, i)};
  const SkewForm form = skew_from_quiver(q);
  MonomialProduct p = monomial_mul(form, unit_vec(n, i), scaled(unit_vec(n, k), m));
  p.power -= m * m;
  return p;
}

/// Ad(E(y_k)) applied to phi_+(y'_i), via the closed three-case formula
/// (r arrows k -> i, s arrows i -> k).
inline Series fg_generator_image(const Quiver& q, int k, int i, int D) {
  detail::check_mutation_vertex(q, k);
  const SkewForm form = skew_from_quiver(q);
  const int n = q.size();
  const ExpVec ek = unit_vec(n, k);
  if (i == k) return Series::monomial(form, D, 1, scaled(ek, -1));
  const ExpVec ei = unit_vec(n, i);
  const int r = q.arrows(k, i);
  const int s = q.arrows(i, k);
  if (r > 0 && s > 0) throw DomainError("two_cycle", "2-cycle between the mutation vertex and vertex " + std::to_string(i + 1));
  Series out = Series::monomial(form, D, 1, ei);
  if (r > 0) {
    for (int j = 1; j <= r; ++j) out *= binomial(form, QRat::vpow(2 * j - 1), ek, D);
  } else if (s > 0) {
    // y_i y_k^s q^{-s^2/2} = q^{-s^2/2} q^{lambda(e_i, s e_k)/2} y^{e_i + s e_k}
    MonomialProduct p = monomial_mul(form, ei, scaled(ek, s));
    out = Series::monomial(form, D, QRat::vpow(p.power - s * s), p.exponent);
    for (int j = 1; j <= s; ++j) out *= binomial(form, QRat::vpow(1 - 2 * j), ek, D).inverse();
  }
  return out;
}

/// Largest truncation at which the displayed Kronecker factors are all that
/// can contribute.
inline constexpr int kKroneckerMaxDegree = 5;

/// E(y1)E(y2) against
///   E(0,1)E(1,2)E(2,3) * E(1,1)^4 E(2,2)^{-2} * E(3,2)E(2,1)E(1,0)
/// on the Kronecker form.  Factors of degree > D do not contribute.
inline IdentityCheck kronecker_identity(int D) {
  if (D > kKroneckerMaxDegree)
    throw DomainError("undetermined",
                      "kronecker: truncation " + std::to_string(D) +
                          " exceeds 5; factors elided from the displayed product (E(3,3), E(3,4), E(4,3), ...) "
                          "would contribute and are not determined");
  if (D < 0) throw std::invalid_argument("kronecker: negative truncation");
  const SkewForm f = kronecker_form();
  Series lhs = eval_word(f, {{1, 1, {1, 0}}, {1, 1, {0, 1}}}, D);
  std::vector<WordFactor> word;
  auto add = [&](int a, int b, int sign = 1) {
    if (a + b <= D) word.push_back({sign, 1, {a, b}});
  };
  for (int a = 0; a + (a + 1) <= D; ++a) add(a, a + 1);
  for (int t = 0; t < 4; ++t) add(1, 1);
  for (int t = 0; t < 2; ++t) add(2, 2, -1);
  for (int b = D; b >= 0; --b)
    if (b + 1 + b <= D) add(b + 1, b);
  Series rhs = eval_word(f, word, D);
  return compare_series("kronecker D=" + std::to_string(D), lhs, rhs);
}

}  // namespace qdilog
