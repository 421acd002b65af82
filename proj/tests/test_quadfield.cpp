#include <gtest/gtest.h>

#include <set>

#include "gcoh/quadfield.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

QuadElement q(long a_num, long a_den, long b_num, long b_den, std::int64_t D) {
  return {Rational(a_num, a_den), Rational(b_num, b_den), D};
}

}  // namespace

TEST(Arith, ParseRational) {
  EXPECT_EQ(parse_rational("3/-4"), Rational(-3) / 4);
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3) / 4);
  EXPECT_EQ(parse_rational("17"), Rational(17));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
  EXPECT_THROW(parse_rational("1/"), DomainError);
}

TEST(Arith, ToRationalIsExact) {
  EXPECT_EQ(to_rational(0.375), Rational(3) / 8);
  EXPECT_EQ(to_rational(-2.0), Rational(-2));
  EXPECT_EQ(to_double(to_rational(0.1)), 0.1);
}

TEST(Arith, PrimalityAgainstSieve) {
  auto primes = primes_up_to(5000);
  std::set<std::uint64_t> set(primes.begin(), primes.end());
  for (std::uint64_t n = 0; n <= 5000; ++n) EXPECT_EQ(is_prime(n), set.count(n) == 1) << n;
  EXPECT_TRUE(is_prime(1000000007ULL));
  EXPECT_FALSE(is_prime(1000000007ULL * 3ULL));
}

TEST(Arith, SqrtModPrime) {
  for (auto p : primes_up_to(2000)) {
    if (p == 2) continue;
    for (std::int64_t a = 1; a < 40; ++a) {
      if (legendre(a, p) != 1) continue;
      auto r = sqrt_mod_prime(static_cast<std::uint64_t>(a) % p, p);
      EXPECT_EQ(mul_mod(r, r, p), static_cast<std::uint64_t>(a) % p);
    }
  }
}

TEST(QuadElement, AddExamples) {
  EXPECT_EQ(q(1, 2, 1, 2, 5) + q(1, 2, -1, 2, 5), QuadElement::from_rational(1, 5));
  QuadElement x = q(3, 7, -2, 5, 3);
  EXPECT_EQ(x + QuadElement::from_rational(0, 3), x);
  EXPECT_EQ(q(1, 1, 1, 1, 2) + q(2, 1, 3, 1, 2), q(3, 1, 4, 1, 2));
}

TEST(QuadElement, MulExamples) {
  QuadElement phi = q(1, 2, 1, 2, 5);
  EXPECT_EQ(phi * phi, q(3, 2, 1, 2, 5));
  EXPECT_EQ(phi * phi, phi + Rational(1));
  EXPECT_EQ(q(1, 1, 1, 1, 2) * q(-1, 1, 1, 1, 2), QuadElement::from_rational(1, 2));
  QuadElement i = QuadElement::sqrt_of(-1);
  EXPECT_EQ(i * i, QuadElement::from_rational(-1, -1));
}

TEST(QuadElement, NormExamples) {
  EXPECT_EQ(q(1, 2, 1, 2, 5).norm(), Rational(-1));
  EXPECT_EQ(q(1, 1, 1, 1, 2).norm(), Rational(-1));
  EXPECT_EQ(q(3, 1, 1, 1, -2).norm(), Rational(11));
}

TEST(QuadElement, MismatchedFieldsAreDomainErrors) {
  EXPECT_THROW(QuadElement::sqrt_of(2) + QuadElement::sqrt_of(3), DomainError);
  EXPECT_THROW(QuadElement::sqrt_of(2) * QuadElement::sqrt_of(5), DomainError);
}

TEST(QuadElement, InvalidSeedsRejected) {
  EXPECT_THROW(QuadElement::sqrt_of(1), DomainError);
  EXPECT_THROW(QuadElement::sqrt_of(0), DomainError);
  EXPECT_THROW(QuadElement::sqrt_of(12), DomainError);
  EXPECT_NO_THROW(QuadElement::sqrt_of(-1));
}

TEST(QuadElement, NormIsMultiplicative) {
  for (int trial = 0; trial < 500; ++trial) {
    std::int64_t D = oracle::pick(oracle::squarefree_range(-30, 30));
    if (D == 1) continue;
    auto r = [] { return Rational(oracle::uniform(-20, 20), oracle::uniform(1, 9)); };
    QuadElement x(r(), r(), D), y(r(), r(), D);
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
  }
}

TEST(QuadElement, FloorMatchesFloatingPointOnModerateValues) {
  for (int trial = 0; trial < 2000; ++trial) {
    std::int64_t D = oracle::pick(oracle::squarefree_range(2, 60));
    QuadElement x(Rational(oracle::uniform(-500, 500), oracle::uniform(1, 30)),
                  Rational(oracle::uniform(-500, 500), oracle::uniform(1, 30)), D);
    double v = x.to_double();
    if (std::abs(v - std::round(v)) < 1e-9) continue;
    EXPECT_EQ(x.floor(), Integer(static_cast<long long>(std::floor(v)))) << x.to_string();
    EXPECT_EQ(x.sign(), v > 0 ? 1 : -1);
  }
}

TEST(Omega, Examples) {
  EXPECT_EQ(omega_of(5), q(1, 2, 1, 2, 5));
  EXPECT_EQ(omega_of(2), QuadElement::sqrt_of(2));
  EXPECT_EQ(omega_of(7), QuadElement::sqrt_of(7));
  EXPECT_THROW(omega_of(1), DomainError);
  EXPECT_THROW(omega_of(-3), DomainError);
  EXPECT_THROW(omega_of(8), DomainError);
}

TEST(Omega, SatisfiesMonicIntegerQuadratic) {
  for (std::int64_t D : oracle::squarefree_range(2, 200)) {
    QuadElement w = omega_of(D);
    QuadElement value = D % 4 == 1 ? w * w - w - Rational((D - 1) / 4) : w * w - Rational(D);
    EXPECT_TRUE(value.is_zero()) << D;
    EXPECT_TRUE(w.is_algebraic_integer());
  }
}

TEST(FundamentalUnit, Examples) {
  auto u5 = fundamental_unit(5);
  EXPECT_EQ(u5.epsilon, q(1, 2, 1, 2, 5));
  EXPECT_EQ(u5.norm, -1);
  auto u2 = fundamental_unit(2);
  EXPECT_EQ(u2.epsilon, q(1, 1, 1, 1, 2));
  EXPECT_EQ(u2.norm, -1);
  auto u3 = fundamental_unit(3);
  EXPECT_EQ(u3.epsilon, q(2, 1, 1, 1, 3));
  EXPECT_EQ(u3.norm, 1);
}

TEST(FundamentalUnit, AgreesWithExhaustivePellSearch) {
  for (std::int64_t D : oracle::squarefree_range(2, 100)) {
    auto expected = oracle::smallest_unit(D);
    const bool half = D % 4 == 1;
    QuadElement eps(Rational(expected.x, half ? 2 : 1), Rational(expected.y, half ? 2 : 1), D);
    auto got = fundamental_unit(D);
    EXPECT_EQ(got.epsilon, eps) << "D=" << D << " got " << got.epsilon.to_string();
    EXPECT_EQ(got.norm, expected.sign) << D;
  }
}

TEST(FundamentalUnit, HasUnitNormAndIntegerCoordinates) {
  for (std::int64_t D : oracle::squarefree_range(2, 100)) {
    auto u = fundamental_unit(D);
    EXPECT_EQ(abs(u.epsilon.norm()), Rational(1));
    EXPECT_TRUE(u.epsilon > QuadElement::from_rational(1, D));
    // epsilon = x + y*omega with integral x, y
    QuadElement w = omega_of(D);
    Rational y = u.epsilon.b() / w.b();
    Rational x = (u.epsilon - w * y).a();
    EXPECT_TRUE(is_integral(x) && is_integral(y)) << D;
  }
}

namespace {

// Coordinates of eps*1 and eps*omega in {1, omega}: integral with det +-1.
bool unit_basis_change_is_unimodular(std::int64_t D) {
  QuadElement w = omega_of(D);
  QuadElement e = fundamental_unit(D).epsilon;
  auto coords = [&](const QuadElement& z) {
    Rational y = z.b() / w.b();
    Rational x = z.a() - y * w.a();
    return std::make_pair(x, y);
  };
  auto [a, c] = coords(e);
  auto [b, d] = coords(e * w);
  if (!is_integral(a) || !is_integral(b) || !is_integral(c) || !is_integral(d)) return false;
  Rational det = a * d - b * c;
  return det == 1 || det == -1;
}

}  // namespace

TEST(UnitStability, Examples) {
  for (std::int64_t D : {5, 2, 13}) {
    EXPECT_TRUE(unit_basis_change_is_unimodular(D));
    EXPECT_TRUE(unit_stability_check(D)) << D;
  }
}

TEST(UnitStability, HoldsForAllSquarefreeUpTo100) {
  for (std::int64_t D : oracle::squarefree_range(2, 100)) {
    EXPECT_EQ(unit_stability_check(D), unit_basis_change_is_unimodular(D)) << D;
    EXPECT_TRUE(unit_stability_check(D)) << D;
  }
}

TEST(UnitStability, NonUnitFails) {
  RealModule ring = integer_ring_module(5);
  EXPECT_FALSE(module_equal(ring.scaled_by(QuadElement::sqrt_of(5)), ring));
}
