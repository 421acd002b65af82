#include <gtest/gtest.h>

#include "gcoh/lfunction.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

// sum_{n<=N} n^{-2} plus the midpoint of the tail bracket [1/(N+1), 1/N].
double zeta2_direct(std::uint64_t N) {
  double sum = 0, carry = 0;
  for (std::uint64_t n = N; n >= 1; --n) {  // small terms first
    double term = 1.0 / (static_cast<double>(n) * static_cast<double>(n)) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  const double tail_lo = 1.0 / static_cast<double>(N + 1), tail_hi = 1.0 / static_cast<double>(N);
  return sum + 0.5 * (tail_lo + tail_hi);
}

CurveQ random_curve() {
  while (true) {
    try {
      return CurveQ(oracle::uniform(-20, 20), oracle::uniform(-20, 20));
    } catch (const DomainError&) {
    }
  }
}

bool bit_equal(Complex a, Complex b) { return a.real() == b.real() && a.imag() == b.imag(); }

}  // namespace

TEST(LocalPolynomial, Validation) {
  EXPECT_THROW(LocalPolynomial(5, {}), DomainError);
  EXPECT_THROW(LocalPolynomial(5, {2, 1}), DomainError);
  EXPECT_THROW(LocalPolynomial(5, {1, 1, 1, 1}), DomainError);
  LocalPolynomial f(3, {1, -1});
  EXPECT_NEAR(f.evaluate(2.0).real(), 1.0 - 1.0 / 9.0, 1e-15);
}

TEST(Zeta, Examples) {
  EXPECT_NEAR(zeta_partial(2.0, 2).value.real(), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(zeta_partial(3.0, 3).value.real(), (8.0 / 7.0) * (27.0 / 26.0), 1e-15);
  EXPECT_THROW(zeta_partial(1.0, 100), ConvergenceDomainError);
  EXPECT_THROW(zeta_partial(Complex(0.5, 14.1), 100), ConvergenceDomainError);
}

TEST(Zeta, EulerProductMatchesDirectSeries) {
  const double reference = zeta2_direct(1000000);
  EXPECT_NEAR(reference, 1.6449340668482264, 1e-11);
  const double value = zeta_partial(2.0, 100000).value.real();
  EXPECT_LT(std::abs(value / reference - 1.0), 1e-5);
  EXPECT_LT(value, reference);  // partial Euler products increase to zeta(2)
}

TEST(Zeta, ComplexArgumentIsConjugateSymmetric) {
  auto a = zeta_partial(Complex(2.5, 3.0), 500).value;
  auto b = zeta_partial(Complex(2.5, -3.0), 500).value;
  EXPECT_NEAR(a.real(), b.real(), 1e-13);
  EXPECT_NEAR(a.imag(), -b.imag(), 1e-13);
}

TEST(MotivicL, Examples) {
  CurveQ c(-1, 0);
  auto e = motivic_l1_partial(c, 3.0, 5);
  ASSERT_EQ(e.factors.size(), 2u);
  EXPECT_EQ(e.factors[0].p, 3u);
  EXPECT_EQ(e.factors[1].p, 5u);
  double expected = 1.0 / (1.0 + std::pow(3.0, -5)) / (1.0 + 2.0 * std::pow(5.0, -3) + std::pow(5.0, -5));
  EXPECT_NEAR(e.value.real(), expected, 1e-15);
  EXPECT_EQ(motivic_l1_partial(c, 3.0, 2).value, Complex(1.0, 0.0));
  EXPECT_THROW(motivic_l1_partial(c, 1.5, 100), ConvergenceDomainError);
}

TEST(MotivicL, FactorsAreCharacteristicPolynomialsOfFrobenius) {
  for (int trial = 0; trial < 10; ++trial) {
    CurveQ c = random_curve();
    const Complex s(2.0, 0.7);
    auto e = motivic_l1_partial(c, s, 300);
    for (const auto& f : e.factors) {
      auto h = frobenius_matrices(c, f.p).h1;
      Complex t = std::pow(static_cast<double>(f.p), -s);
      auto d = [&](std::size_t i, std::size_t j) { return h(i, j).convert_to<double>(); };
      Complex det = (1.0 - d(0, 0) * t) * (1.0 - d(1, 1) * t) - d(0, 1) * d(1, 0) * t * t;
      EXPECT_NEAR(std::abs(det - f.evaluate(s)), 0.0, 1e-14);
      EXPECT_TRUE(f.roots_on_critical_circle());
    }
  }
}

TEST(MotivicL, RootsHaveModulusInverseSqrtP) {
  for (int trial = 0; trial < 10; ++trial) {
    CurveQ c = random_curve();
    for (const auto& f : motivic_l1_partial(c, 2.0, 400).factors) {
      double a = static_cast<double>(-f.coefficients[1]), p = static_cast<double>(f.p);
      // p t^2 - a t + 1: complex conjugate (or double) roots since a^2 <= 4p
      Complex disc = Complex(a * a - 4 * p, 0);
      Complex root = (a + std::sqrt(disc)) / (2 * p);
      EXPECT_NEAR(std::abs(root), 1.0 / std::sqrt(p), 1e-12);
    }
  }
}

TEST(EulerProduct, RecomputeIsBitExact) {
  for (int trial = 0; trial < 10; ++trial) {
    CurveQ c = random_curve();
    Complex s(oracle::uniform(16, 40) / 10.0, oracle::uniform(-50, 50) / 10.0);
    auto e = motivic_l1_partial(c, s, 2000);
    EXPECT_TRUE(bit_equal(e.recompute(), e.value));
    auto z = zeta_partial(s, 2000);
    EXPECT_TRUE(bit_equal(z.recompute(), z.value));
    for (std::size_t i = 1; i < e.factors.size(); ++i) EXPECT_LT(e.factors[i - 1].p, e.factors[i].p);
  }
}

TEST(EulerProduct, TruncationEnvelope) {
  for (int trial = 0; trial < 20; ++trial) {
    CurveQ c = random_curve();
    for (double s : {2.0, 3.0}) {
      std::uint64_t p1 = static_cast<std::uint64_t>(oracle::uniform(10, 500));
      std::uint64_t p2 = p1 + static_cast<std::uint64_t>(oracle::uniform(1, 2000));
      double diff = std::abs(motivic_l1_partial(c, s, p2).value - motivic_l1_partial(c, s, p1).value);
      double envelope = 0;
      for (auto p : primes_up_to(p2))
        if (p > p1) envelope += 3.0 * std::pow(static_cast<double>(p), -s + 0.5);
      EXPECT_LE(diff, envelope) << c.to_string() << " s=" << s << " " << p1 << ".." << p2;
    }
  }
}

TEST(AutomorphicL, Examples) {
  for (double re : {1.5, 2.5, 4.0}) {
    Complex s(re, 1.0);
    EXPECT_TRUE(bit_equal(automorphic_l_partial(1, 0, s, 300).value, zeta_partial(s, 300).value));
  }
  EXPECT_TRUE(bit_equal(automorphic_l_partial(1, 2, 3.0, 100).value, zeta_partial(2.0, 100).value));
  EXPECT_TRUE(bit_equal(automorphic_l_partial(1, 1, 3.0, 100).value, motivic_l1_partial(CurveQ(-1, 0), 3.0, 100).value));
  EXPECT_THROW(automorphic_l_partial(1, 2, 2.0, 100), ConvergenceDomainError);
  EXPECT_THROW(automorphic_l_partial(1, 1, 1.4, 100), ConvergenceDomainError);
  EXPECT_THROW(automorphic_l_partial(1, 3, 3.0, 100), DomainError);
}

TEST(AutomorphicL, DegreeOneAgreesWithMotivicForAllTableCurves) {
  for (int D : {1, 2, 3}) {
    Complex s(2.2, -1.3);
    EXPECT_TRUE(bit_equal(automorphic_l_partial(D, 1, s, 1000).value, motivic_l1_partial(cm_curve_for(D), s, 1000).value)) << D;
  }
}

TEST(LocalFactorMatch, Examples) {
  for (int D : {1, 2, 3}) {
    auto report = local_factor_match(D, 1000);
    EXPECT_TRUE(report.mismatches.empty()) << D;
    EXPECT_GT(report.rows.size(), 150u);
  }
  CurveQ c = cm_curve_for(3);
  auto corrupted = compare_local_factors(3, 1000, point_count_traces(c), [](std::uint64_t p) {
    return p == 331 ? hecke_ap_cm(3, p) + 1 : hecke_ap_cm(3, p);
  });
  ASSERT_EQ(corrupted.mismatches.size(), 1u);
  EXPECT_EQ(corrupted.mismatches[0], 331u);
}

TEST(Proposition3, Examples) {
  EXPECT_LT(proposition3_check(1, 3.0, 500), 1e-12);
  EXPECT_LT(proposition3_check(3, 2.5, 500), 1e-12);
  EXPECT_LT(proposition3_check(2, Complex(3.0, 2.0), 500), 1e-12);
  EXPECT_THROW(proposition3_check(1, 2.0, 500), ConvergenceDomainError);
}
