#pragma once

// Partial Euler products: Riemann zeta, the Hasse-Weil L-function of a curve,
// the automorphic L-functions of the CM table, and their comparison.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcoh/ap_cache.hpp"
#include "gcoh/elliptic.hpp"
#include "gcoh/hecke_cm.hpp"

namespace gcoh {

using Complex = std::complex<double>;

/// 1 + c1 t + c2 t^2, evaluated at t = p^{-s}.
struct LocalPolynomial {
  std::uint64_t p = 0;
  std::vector<std::int64_t> coefficients{1};

  LocalPolynomial() = default;
  LocalPolynomial(std::uint64_t prime, std::vector<std::int64_t> coeffs) : p(prime), coefficients(std::move(coeffs)) {
    if (coefficients.empty() || coefficients.size() > 3 || coefficients[0] != 1) {
      throw DomainError("local polynomial must have constant term 1 and degree <= 2");
    }
  }

  Complex evaluate(Complex s) const {
    const Complex t = std::pow(static_cast<double>(p), -s);
    Complex value = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) value = value * t + static_cast<double>(coefficients[k]);
    return value;
  }

  /// Roots of 1 - a t + p t^2 have modulus p^{-1/2} iff a^2 <= 4p.
  bool roots_on_critical_circle() const {
    if (coefficients.size() != 3) return false;
    Integer a = coefficients[1], c = coefficients[2];
    return c == Integer(p) && a * a <= 4 * Integer(p);
  }
};

/// prod over factors of P(p^{-s})^{-1}, folded in ascending p.
struct EulerProductApprox {
  Complex s;
  std::uint64_t prime_bound = 0;
  std::vector<LocalPolynomial> factors;
  Complex value{1.0, 0.0};

  Complex recompute() const {
    Complex v{1.0, 0.0};
    for (const auto& f : factors) v /= f.evaluate(s);
    return v;
  }
};

namespace detail {

inline void require_half_plane(Complex s, double abscissa, const char* what) {
  if (!(s.real() > abscissa)) {
    throw ConvergenceDomainError(std::string(what) + " needs Re s > " + std::to_string(abscissa) +
                                 ", got Re s = " + std::to_string(s.real()));
  }
}

inline EulerProductApprox fold(Complex s, std::uint64_t bound, std::vector<LocalPolynomial> factors) {
  EulerProductApprox e{s, bound, std::move(factors), {1.0, 0.0}};
  e.value = e.recompute();
  return e;
}

}  // namespace detail

inline LocalPolynomial curve_factor(std::uint64_t p, std::int64_t ap) {
  return {p, {1, -ap, static_cast<std::int64_t>(p)}};
}

/// prod_{p <= P} (1 - p^{-s})^{-1}
inline EulerProductApprox zeta_partial(Complex s, std::uint64_t bound) {
  detail::require_half_plane(s, 1.0, "zeta_partial");
  std::vector<LocalPolynomial> factors;
  for (auto p : primes_up_to(bound)) factors.push_back({p, {1, -1}});
  return detail::fold(s, bound, std::move(factors));
}

/// Source of Frobenius traces at good primes.
using TraceSource = std::function<std::int64_t(std::uint64_t)>;

inline TraceSource point_count_traces(const CurveQ& c, ApCache* cache = nullptr) {
  return [c, cache](std::uint64_t p) {
    return cache ? cache->trace(c, p).a_p : trace_of_frobenius(c, p).a_p;
  };
}

/// prod over good p <= P of (1 - a_p p^{-s} + p^{1-2s})^{-1}.
inline EulerProductApprox l1_partial(const CurveQ& c, Complex s, std::uint64_t bound, const TraceSource& traces) {
  detail::require_half_plane(s, 1.5, "degree-one L-function");
  std::vector<LocalPolynomial> factors;
  for (auto p : primes_up_to(bound)) {
    if (!c.is_good_prime(p)) continue;
    factors.push_back(curve_factor(p, traces(p)));
  }
  return detail::fold(s, bound, std::move(factors));
}

inline EulerProductApprox motivic_l1_partial(const CurveQ& c, Complex s, std::uint64_t bound, ApCache* cache = nullptr) {
  return l1_partial(c, s, bound, point_count_traces(c, cache));
}

/// i = 0: zeta(s); i = 2: zeta(s-1); i = 1: Hecke-character traces.
inline EulerProductApprox automorphic_l_partial(int D, int i, Complex s, std::uint64_t bound) {
  switch (i) {
    case 0:
      return zeta_partial(s, bound);
    case 2:
      detail::require_half_plane(s, 2.0, "L(s, pi_2)");
      return zeta_partial(s - 1.0, bound);
    case 1: {
      const CurveQ curve = cm_curve_for(D);
      return l1_partial(curve, s, bound, [D](std::uint64_t p) { return hecke_ap_cm(D, p); });
    }
    default:
      throw DomainError("automorphic degree must be 0, 1 or 2");
  }
}

struct FactorComparison {
  std::uint64_t p = 0;
  std::int64_t motivic_trace = 0;
  std::int64_t automorphic_trace = 0;
  std::int64_t motivic_det = 0;
  std::int64_t automorphic_det = 0;
  bool match() const { return motivic_trace == automorphic_trace && motivic_det == automorphic_det; }
};

struct MatchReport {
  int D = 0;
  std::uint64_t bound = 0;
  std::vector<FactorComparison> rows;
  std::vector<std::uint64_t> mismatches;
};

/// (trace, det) of the companion matrix of Frobenius against the Hecke
/// eigenvalue data, at every good p <= P.
inline MatchReport compare_local_factors(int D, std::uint64_t bound, const TraceSource& motivic,
                                         const TraceSource& automorphic) {
  const CurveQ curve = cm_curve_for(D);
  MatchReport report{D, bound, {}, {}};
  for (auto p : primes_up_to(bound)) {
    if (!curve.is_good_prime(p)) continue;
    auto sp = static_cast<std::int64_t>(p);
    std::int64_t a = motivic(p);
    // companion matrix [[0,-p],[1,a]] has trace a and det p; the Hecke
    // eigenvalue psi(P) has norm p
    FactorComparison row{p, a, automorphic(p), sp, sp};
    if (!row.match()) report.mismatches.push_back(p);
    report.rows.push_back(row);
  }
  return report;
}

inline MatchReport local_factor_match(int D, std::uint64_t bound, ApCache* cache = nullptr) {
  const CurveQ curve = cm_curve_for(D);
  return compare_local_factors(D, bound, point_count_traces(curve, cache),
                               [D](std::uint64_t p) { return hecke_ap_cm(D, p); });
}

/// |motivic / automorphic - 1| with
///   motivic     = L1(s) / (zeta(s) zeta(s-1))       from point counts,
///   automorphic = L(s,pi1) / (L(s,pi0) L(s,pi2))   from the Hecke route.
inline double proposition3_check(int D, Complex s, std::uint64_t bound, ApCache* cache = nullptr) {
  detail::require_half_plane(s, 2.0, "proposition3_check");
  const CurveQ curve = cm_curve_for(D);
  Complex motivic = motivic_l1_partial(curve, s, bound, cache).value /
                    (zeta_partial(s, bound).value * zeta_partial(s - 1.0, bound).value);
  Complex automorphic = automorphic_l_partial(D, 1, s, bound).value /
                        (automorphic_l_partial(D, 0, s, bound).value * automorphic_l_partial(D, 2, s, bound).value);
  return std::abs(motivic / automorphic - 1.0);
}

}  // namespace gcoh
