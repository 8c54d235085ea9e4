#pragma once

// Coefficients after specializing q to an integer: elements a + b*v of
// Q[v]/(v^2 - q).  When q is a perfect square v is rational and b is folded
// into a, so representations stay unique.

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "qdilog/errors.hpp"
#include "qdilog/qrat.hpp"

namespace qdilog {

class SpecValue {
 public:
  SpecValue() = default;
  SpecValue(mpq_class a, mpq_class b, mpz_class q) : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
    if (q_ <= 0) throw std::invalid_argument("SpecValue: q must be positive");
    if (mpz_perfect_square_p(q_.get_mpz_t())) {
      root_ = sqrt(q_);
      a_ += b_ * root_;
      b_ = 0;
    }
  }
  SpecValue(long c, const mpz_class& q) : SpecValue(mpq_class(c), mpq_class(0), q) {}

  /// Image of a QRat under q^{1/2} -> sqrt(q).
  static SpecValue from_qrat(const QRat& f, const mpz_class& q) {
    SpecValue n = eval(f.num(), q);
    SpecValue d = eval(f.den(), q);
    if (d.is_zero()) throw DomainError("pole", "specialization: denominator vanishes at q = " + q.get_str());
    return n / d;
  }

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& root_part() const { return b_; }
  const mpz_class& q() const { return q_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  /// v^k in the same ring.
  SpecValue vpow(int k) const {
    SpecValue v(mpq_class(0), mpq_class(1), q_);
    SpecValue r(1, q_);
    if (k < 0) {
      v = SpecValue(1, q_) / v;
      k = -k;
    }
    for (int i = 0; i < k; ++i) r = r * v;
    return r;
  }

  SpecValue operator-() const { return raw(-a_, -b_); }
  friend SpecValue operator+(const SpecValue& x, const SpecValue& y) { return x.raw(x.a_ + y.a_, x.b_ + y.b_); }
  friend SpecValue operator-(const SpecValue& x, const SpecValue& y) { return x + (-y); }
  friend SpecValue operator*(const SpecValue& x, const SpecValue& y) {
    return x.raw(x.a_ * y.a_ + x.b_ * y.b_ * mpq_class(x.q_), x.a_ * y.b_ + x.b_ * y.a_);
  }
  SpecValue inverse() const {
    // (a + b v)^{-1} = (a - b v) / (a^2 - q b^2); the norm is nonzero unless
    // a = b = 0, as v is irrational whenever b is kept.
    mpq_class norm = a_ * a_ - b_ * b_ * mpq_class(q_);
    if (sgn(norm) == 0) throw DomainError("division_by_zero", "SpecValue: division by zero");
    return raw(a_ / norm, -b_ / norm);
  }
  friend SpecValue operator/(const SpecValue& x, const SpecValue& y) { return x * y.inverse(); }
  SpecValue& operator+=(const SpecValue& o) { return *this = *this + o; }
  SpecValue& operator*=(const SpecValue& o) { return *this = *this * o; }

  friend bool operator==(const SpecValue& x, const SpecValue& y) {
    return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const {
    if (sgn(b_) == 0) return a_.get_str();
    std::string s = sgn(a_) != 0 ? a_.get_str() + " + " : "";
    return s + "(" + b_.get_str() + ")*sqrt(" + q_.get_str() + ")";
  }

 private:
  SpecValue raw(mpq_class a, mpq_class b) const {
    SpecValue r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.q_ = q_;
    r.root_ = root_;
    return r;
  }

  static SpecValue eval(const HalfLaurent& p, const mpz_class& q) {
    SpecValue acc(0, q);
    if (p.is_zero()) return acc;
    SpecValue one(1, q);
    for (int k = p.low(); k <= p.high(); ++k) {
      if (sgn(p[k]) == 0) continue;
      acc += SpecValue(p[k], 0, q) * one.vpow(k);
    }
    return acc;
  }

  mpq_class a_ = 0;
  mpq_class b_ = 0;
  mpz_class q_ = 1;
  mpz_class root_ = 0;
};

}  // namespace qdilog
