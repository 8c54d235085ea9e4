#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qdilog/qrat.hpp"
#include "qdilog/spec_value.hpp"

using namespace qdilog;

namespace {

// Independent oracle: dense polynomials in v over Q with nonnegative
// exponents, schoolbook arithmetic and Euclid over Q.
using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly rem(Poly a, const Poly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = b;
    b = r;
  }
  return a;
}

// num/den of a QRat as polynomials, clearing negative powers of v.
std::pair<Poly, Poly> as_fraction(const QRat& x) {
  const int shift = x.num().is_zero() ? 0 : std::min(0, x.num().low());
  Poly n, d;
  if (!x.num().is_zero())
    for (int k = shift; k <= x.num().high(); ++k) n.push_back(x.num()[k]);
  for (int k = shift; k <= x.den().high(); ++k) d.push_back(x.den()[k]);
  trim(n);
  trim(d);
  return {n, d};
}

// a/b == c/d by cross multiplication.
bool same_fraction(const std::pair<Poly, Poly>& x, const std::pair<Poly, Poly>& y) {
  Poly l = mul(x.first, y.second), r = mul(y.first, x.second);
  return l == r;
}

Poly poly_of(std::initializer_list<long> coeffs) {
  Poly p;
  for (long c : coeffs) p.emplace_back(c);
  trim(p);
  return p;
}

QRat random_qrat(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3), deg(0, 3), low(-2, 2);
  auto poly = [&] {
    std::vector<mpq_class> v;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i) v.emplace_back(c(rng));
    return HalfLaurent(low(rng), v);
  };
  HalfLaurent den = poly();
  while (den.is_zero()) den = poly();
  return QRat(poly(), den);
}

void expect_canonical(const QRat& x) {
  const HalfLaurent& d = x.den();
  ASSERT_FALSE(d.is_zero());
  EXPECT_EQ(d.low(), 0);
  EXPECT_NE(sgn(d[0]), 0);
  EXPECT_EQ(d.leading_coeff(), 1);
  if (!x.num().is_zero()) {
    // den has a nonzero constant term, so v^low in the numerator is no common factor
    Poly n(x.num().coeffs().begin(), x.num().coeffs().end());
    Poly dd(d.coeffs().begin(), d.coeffs().end());
    Poly g = gcd(n, dd);
    EXPECT_EQ(g.size(), 1u) << "common factor left in " << x.to_string();
  }
}

}  // namespace

TEST(QRat, HalfPowersMultiply) { EXPECT_EQ(QRat::vpow(1) * QRat::vpow(1), QRat::vpow(2)); }

TEST(QRat, InverseOfQMinusOne) {
  const QRat a = QRat::q_power_minus_one(1);
  EXPECT_EQ(a.inverse() * a, QRat(1));
}

TEST(QRat, SumAgainstCrossMultiplicationOracle) {
  const QRat x = QRat::vpow(1) / QRat::q_power_minus_one(1);
  const QRat s = x + x;
  // 2v/(v^2-1)
  std::pair<Poly, Poly> want{poly_of({0, 2}), poly_of({-1, 0, 1})};
  EXPECT_TRUE(same_fraction(as_fraction(s), want));
  // v/(v^2-1) + v/(v^2-1) by cross multiplication, unreduced
  auto [n, d] = as_fraction(x);
  std::pair<Poly, Poly> raw{add(mul(n, d), mul(n, d)), mul(d, d)};
  EXPECT_TRUE(same_fraction(as_fraction(s), raw));
  expect_canonical(s);
}

TEST(QRat, DivisionByZeroThrows) {
  EXPECT_THROW(QRat(1) / QRat(0), DomainError);
  EXPECT_THROW(QRat(0).inverse(), DomainError);
}

TEST(QRat, Specialize) {
  const QRat f = QRat::vpow(1) / QRat::q_power_minus_one(1);
  EXPECT_EQ(f.specialize(2), mpq_class(2, 3));
  EXPECT_EQ(QRat(1).specialize(7), 1);
  const QRat g = QRat::q_power_minus_one(2) / QRat::q_power_minus_one(1);
  EXPECT_EQ(g.specialize(3), 10);
}

TEST(QRat, SpecializeAtPoleThrows) {
  const QRat f = QRat::vpow(1) / QRat::q_power_minus_one(1);
  try {
    f.specialize(1);
    FAIL() << "expected a pole";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "pole");
  }
  EXPECT_THROW(f.specialize(-1), DomainError);
}

TEST(QRat, FieldAxiomsOnRandomSamples) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const QRat a = random_qrat(rng), b = random_qrat(rng), c = random_qrat(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), QRat(1));
    EXPECT_EQ(a - a, QRat(0));
    expect_canonical(a * b + c);
    expect_canonical(a - b);
  }
}

TEST(QRat, ProductMatchesOracle) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const QRat a = random_qrat(rng), b = random_qrat(rng);
    auto [an, ad] = as_fraction(a);
    auto [bn, bd] = as_fraction(b);
    EXPECT_TRUE(same_fraction(as_fraction(a * b), {mul(an, bn), mul(ad, bd)}));
    EXPECT_TRUE(same_fraction(as_fraction(a + b), {add(mul(an, bd), mul(bn, ad)), mul(ad, bd)}));
  }
}

TEST(QRat, SpecializationIsMultiplicative) {
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const QRat a = random_qrat(rng), b = random_qrat(rng);
    for (mpq_class t : {mpq_class(2), mpq_class(3), mpq_class(1, 2), mpq_class(-5, 3)}) {
      try {
        const mpq_class sa = a.specialize(t), sb = b.specialize(t);
        EXPECT_EQ((a * b).specialize(t), sa * sb);
        EXPECT_EQ((a + b).specialize(t), sa + sb);
        ++checked;
      } catch (const DomainError&) {
        // a pole at t: nothing to compare
      }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(QRat, CanonicalizationIsIdempotent) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const QRat a = random_qrat(rng);
    const QRat again(a.num(), a.den());
    EXPECT_EQ(again, a);
    EXPECT_EQ(again.num().coeffs(), a.num().coeffs());
    EXPECT_EQ(again.num().low(), a.num().low());
  }
}

TEST(QRat, EqualityIsStructural) {
  // (v^2 - 1)/(v - 1) reduces to v + 1
  const QRat a(HalfLaurent(0, {-1, 0, 1}), HalfLaurent(0, {-1, 1}));
  EXPECT_EQ(a, QRat(HalfLaurent(0, {1, 1})));
  // negative powers in the denominator move to the numerator
  const QRat b(HalfLaurent(1), HalfLaurent::monomial(1, 3));
  EXPECT_EQ(b, QRat::vpow(-3));
  EXPECT_EQ(b.den(), HalfLaurent(1));
}

TEST(QRat, TextRoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const QRat a = random_qrat(rng);
    EXPECT_EQ(QRat::parse(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ((QRat::vpow(1) / QRat::q_power_minus_one(1)).to_string(), "v/(v^2 - 1)");
  EXPECT_EQ(QRat::vpow(-1).to_string(), "v^-1");
  EXPECT_EQ(QRat::parse("-3/2*v^-1 + 4"), QRat(4) - QRat(mpq_class(3, 2)) * QRat::vpow(-1));
}

TEST(QRat, ParseAcceptsFactoredForms) {
  const QRat q = QRat::vpow(2);
  EXPECT_EQ(QRat::parse("v^3/(q-1)^2"), QRat::vpow(3) / ((q - QRat(1)) * (q - QRat(1))));
  EXPECT_EQ(QRat::parse("(v + 1)*(v - 1)"), q - QRat(1));
  EXPECT_EQ(QRat::parse("q^-1 * 2/3"), QRat(mpq_class(2, 3)) / q);
  EXPECT_EQ(QRat::parse("-(v)^2 + q"), QRat(0));
  EXPECT_EQ(QRat::parse(" 7 "), QRat(7));
}

TEST(QRat, ParseRejectsGarbage) {
  EXPECT_THROW(QRat::parse("v^"), ParseError);
  EXPECT_THROW(QRat::parse("x + 1"), ParseError);
  EXPECT_THROW(QRat::parse("(v + 1"), ParseError);
  EXPECT_THROW(QRat::parse("v v"), ParseError);
  EXPECT_THROW(QRat::parse(""), ParseError);
  EXPECT_THROW(QRat::parse("1/(0)"), DomainError);
}

TEST(SpecValue, FromQRatMatchesRationalSpecialization) {
  // q a perfect square: v is rational and matches QRat::specialize.
  const QRat f = QRat::vpow(1) / QRat::q_power_minus_one(1);
  const SpecValue s = SpecValue::from_qrat(f, 4);
  EXPECT_EQ(sgn(s.root_part()), 0);
  EXPECT_EQ(s.rational_part(), mpq_class(2, 3));
}

TEST(SpecValue, OddPowerKeepsSquareRoot) {
  // v/(v^2 - 1) at q = 2 is sqrt(2)
  const QRat f = QRat::vpow(1) / QRat::q_power_minus_one(1);
  const SpecValue s = SpecValue::from_qrat(f, 2);
  EXPECT_EQ(s.rational_part(), 0);
  EXPECT_EQ(s.root_part(), 1);
  EXPECT_EQ(s * s, SpecValue(2, 2));
  EXPECT_EQ(SpecValue(1, 2).vpow(2), SpecValue(2, 2));
  EXPECT_EQ(SpecValue(1, 2).vpow(-2), SpecValue(mpq_class(1, 2), 0, 2));
}

TEST(SpecValue, IsARingMap) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const QRat a = random_qrat(rng), b = random_qrat(rng);
    for (long q : {2L, 3L, 8L}) {
      try {
        const SpecValue sa = SpecValue::from_qrat(a, q), sb = SpecValue::from_qrat(b, q);
        EXPECT_EQ(SpecValue::from_qrat(a * b, q), sa * sb);
        EXPECT_EQ(SpecValue::from_qrat(a + b, q), sa + sb);
        ++checked;
      } catch (const DomainError&) {
      }
    }
  }
  EXPECT_GT(checked, 200);
}
