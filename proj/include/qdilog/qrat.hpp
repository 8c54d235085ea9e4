#pragma once

// The coefficient field Q(q^{1/2}) in canonical fraction form.

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qdilog/errors.hpp"
#include "qdilog/laurent.hpp"

namespace qdilog {

/// Element of Q(v), v = q^{1/2}, stored as numerator / denominator where the
/// denominator is an ordinary polynomial with nonzero constant term and
/// leading coefficient 1, coprime to the numerator.  Powers of v live in the
/// numerator, so structural equality is field equality.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(const HalfLaurent& num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)

  /// Normalizes an arbitrary fraction num / den.
  QRat(HalfLaurent num, HalfLaurent den) { assign(std::move(num), std::move(den)); }

  /// v^k = q^{k/2}
  static QRat vpow(int k) { return QRat(HalfLaurent::monomial(1, k)); }
  /// q^k - 1 written in v
  static QRat q_power_minus_one(int k) { return QRat(HalfLaurent::monomial(1, 2 * k) - HalfLaurent(1)); }

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_[0] == 1; }

  QRat operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QRat operator+(const QRat& a, const QRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return QRat(a.num_ + b.num_, a.den_);
    const auto g = poly_gcd(a.den_.coeffs(), b.den_.coeffs());
    if (g.size() == 1) {
      QRat r;
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      r.den_ = a.den_ * b.den_;
      if (r.num_.is_zero()) r.den_ = HalfLaurent(1);
      return r;
    }
    // Henrici: only the common factor g can cancel against the new numerator.
    HalfLaurent da(0, poly_exact_div(a.den_.coeffs(), g));
    HalfLaurent db(0, poly_exact_div(b.den_.coeffs(), g));
    HalfLaurent t = a.num_ * db + b.num_ * da;
    if (t.is_zero()) return {};
    const auto g2 = poly_gcd(t.coeffs(), g);
    HalfLaurent rest(0, poly_exact_div(g, g2));
    QRat r;
    r.num_ = g2.size() == 1 ? t : HalfLaurent(t.low(), poly_exact_div(t.coeffs(), g2));
    r.den_ = da * db * rest;
    r.normalize_lead();
    return r;
  }
  friend QRat operator-(const QRat& a, const QRat& b) { return a + (-b); }

  friend QRat operator*(const QRat& a, const QRat& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) return QRat(a.num_ * b.num_);
    // Cross-cancel; a and b are already reduced individually.
    auto g1 = poly_gcd(a.num_.coeffs(), b.den_.coeffs());
    auto g2 = poly_gcd(b.num_.coeffs(), a.den_.coeffs());
    auto cut = [](const HalfLaurent& p, const std::vector<mpq_class>& g) {
      return g.size() == 1 ? p : HalfLaurent(p.low(), poly_exact_div(p.coeffs(), g));
    };
    QRat r;
    r.num_ = cut(a.num_, g1) * cut(b.num_, g2);
    r.den_ = cut(a.den_, g2) * cut(b.den_, g1);
    r.normalize_lead();
    return r;
  }

  QRat inverse() const {
    if (is_zero()) throw DomainError("division_by_zero", "QRat: division by zero");
    return QRat(den_, num_);
  }
  friend QRat operator/(const QRat& a, const QRat& b) { return a * b.inverse(); }

  QRat& operator+=(const QRat& o) { return *this = *this + o; }
  QRat& operator-=(const QRat& o) { return *this = *this - o; }
  QRat& operator*=(const QRat& o) { return *this = *this * o; }
  QRat& operator/=(const QRat& o) { return *this = *this / o; }

  QRat pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    QRat r(1), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const QRat& a, const QRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Exact value at v = t, i.e. q = t^2.
  mpq_class specialize(const mpq_class& t) const {
    mpq_class d = den_.evaluate(t);
    if (sgn(d) == 0) throw DomainError("pole", "QRat: denominator vanishes at v = " + t.get_str());
    if (num_.low() < 0 && sgn(t) == 0) throw DomainError("pole", "QRat: negative power of v at v = 0");
    return num_.evaluate(t) / d;
  }

  /// Renders as "N" or "N/(D)" with N, D written as polynomials in v.
  std::string to_string() const {
    if (den_.is_constant()) return poly_text(num_);
    std::string n = poly_text(num_);
    if (num_.coeffs().size() > 1 || n.front() == '-') n = "(" + n + ")";
    return n + "/(" + poly_text(den_) + ")";
  }

  static QRat parse(std::string_view text);

 private:
  void assign(HalfLaurent num, HalfLaurent den) {
    if (den.is_zero()) throw DomainError("division_by_zero", "QRat: zero denominator");
    if (num.is_zero()) {
      num_ = {};
      den_ = HalfLaurent(1);
      return;
    }
    const int shift = den.low();
    num = num.shifted(-shift);
    den = den.shifted(-shift);
    const auto g = poly_gcd(num.coeffs(), den.coeffs());
    if (g.size() > 1) {
      num = HalfLaurent(num.low(), poly_exact_div(num.coeffs(), g));
      den = HalfLaurent(0, poly_exact_div(den.coeffs(), g));
    }
    num_ = std::move(num);
    den_ = std::move(den);
    normalize_lead();
  }

  void normalize_lead() {
    if (num_.is_zero()) {
      den_ = HalfLaurent(1);
      return;
    }
    mpq_class lead = den_.leading_coeff();
    if (lead != 1) {
      mpq_class inv = 1 / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  static std::string poly_text(const HalfLaurent& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = p.high(); k >= p.low(); --k) {
      mpq_class c = p[k];
      if (sgn(c) == 0) continue;
      if (sgn(c) < 0) {
        out << (first ? "-" : " - ");
        c = -c;
      } else if (!first) {
        out << " + ";
      }
      first = false;
      if (k == 0) {
        out << c.get_str();
        continue;
      }
      if (c != 1) out << c.get_str() << "*";
      out << "v";
      if (k != 1) out << "^" << k;
    }
    return out.str();
  }

  HalfLaurent num_;
  HalfLaurent den_;
};

namespace detail {

// Recursive descent over QRat:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ['^' ['-'] digits]
//   atom   := digits | 'v' | 'q' | '(' expr ')'
// with q = v^2.
class QRatParser {
 public:
  explicit QRatParser(std::string_view s) : s_(s) {}

  QRat parse_all() {
    QRat x = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return x;
  }

 private:
  QRat expr() {
    skip_ws();
    if (peek() == '+') ++pos_;
    QRat acc = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      acc = c == '+' ? acc + term() : acc - term();
    }
  }

  QRat term() {
    QRat acc = unary();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return acc;
      ++pos_;
      acc = c == '*' ? acc * unary() : acc / unary();
    }
  }

  QRat unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  QRat power() {
    QRat base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    const std::string d = digits();
    if (d.empty()) fail("expected exponent");
    if (d.size() > 4) fail("exponent too large");
    int e = std::stoi(d);
    QRat r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return sign < 0 ? r.inverse() : r;
  }

  QRat atom() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return QRat(mpq_class(digits()));
    if (c == 'v' || c == 'q') {
      ++pos_;
      return QRat::vpow(c == 'v' ? 1 : 2);
    }
    if (c == '(') {
      ++pos_;
      QRat x = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return x;
    }
    fail("expected a term");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("QRat text '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QRat QRat::parse(std::string_view text) { return detail::QRatParser(text).parse_all(); }

inline std::ostream& operator<<(std::ostream& os, const QRat& x) { return os << x.to_string(); }

}  // namespace qdilog
