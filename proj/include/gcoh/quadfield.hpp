#pragma once

// Real quadratic fields: ring-of-integers generator, fundamental unit, and
// the unit's action on Z + Z*omega.

#include <cstdint>
#include <string>

#include "gcoh/contfrac.hpp"
#include "gcoh/quad_element.hpp"
#include "gcoh/real_module.hpp"

namespace gcoh {

struct FundamentalUnitResult {
  QuadElement epsilon;
  int norm = 0;  // +1 or -1
};

/// Smallest unit > 1 of Z[omega], read off the convergents p/q of omega:
/// the first p - q*omega of norm +-1 is the inverse of epsilon up to sign.
inline FundamentalUnitResult fundamental_unit(std::int64_t D) {
  const QuadElement omega = omega_of(D);
  const PeriodicCF cf = expand(omega);
  // one full period past the preperiod suffices; two guards the norm +1 case
  const std::size_t scan = cf.preperiod.size() + 2 * cf.period.size() + 1;
  for (const auto& c : convergents(cf, scan)) {
    QuadElement small = omega * Rational(-c.q) + Rational(c.p);
    Rational n = small.norm();
    if (n != 1 && n != -1) continue;
    if (small.sign() < 0) small = -small;
    QuadElement epsilon = small.inverse();
    if (epsilon.sign() <= 0 || !(epsilon > QuadElement::from_rational(Rational(1), D))) continue;
    return {epsilon, n == 1 ? 1 : -1};
  }
  throw DomainError("no unit found among convergents of omega for D=" + std::to_string(D));
}

/// Z + Z*omega for the real field Q(sqrt(D)).
inline RealModule integer_ring_module(std::int64_t D) {
  return RealModule(D, {QuadElement::from_rational(Rational(1), D), omega_of(D)});
}

/// epsilon * (Z + Z*omega) == Z + Z*omega.
inline bool unit_stability_check(std::int64_t D) {
  const RealModule ring = integer_ring_module(D);
  const FundamentalUnitResult unit = fundamental_unit(D);
  return module_equal(ring.scaled_by(unit.epsilon), ring);
}

}  // namespace gcoh
