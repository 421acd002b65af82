#pragma once

// Trace cohomology of the CM curves, K0 of the automorphic AF-algebra at the
// infinite place, and the coherence (containment) test between them.

#include <cstdint>
#include <string>
#include <vector>

#include "gcoh/bratteli.hpp"
#include "gcoh/elliptic.hpp"
#include "gcoh/quadfield.hpp"
#include "gcoh/real_module.hpp"

namespace gcoh {

/// Modules H^0, ..., H^{2n}.
struct TraceCohomology {
  std::vector<RealModule> modules;

  std::size_t degree_count() const { return modules.size(); }
  bool well_formed() const {
    return modules.size() % 2 == 1 && modules.front().rank() == 1 && modules.back().rank() == 1;
  }
};

/// Z + Z*omega(D).
inline RealModule k0_automorphic(std::int64_t D) { return integer_ring_module(D); }

/// [Z, Z + Z*omega(D), Z] for a table curve with D > 1.
inline TraceCohomology trace_cohomology_ecm(int D) {
  cm_curve_for(D);  // throws for discriminants outside the table
  if (D <= 1) throw UnsupportedError("trace cohomology needs a real field Q(sqrt(D)), D > 1");
  RealModule z = RealModule::rational({Rational(1)});
  return {{z, integer_ring_module(D), z}};
}

/// Every H^i is contained in K0.
inline bool g_coherence_check(const TraceCohomology& H, const RealModule& K0) {
  for (const auto& m : H.modules)
    if (!module_contains(K0, m)) return false;
  return true;
}

/// K0 of the Effros-Shen diagram of frac(omega) equals Z + Z*omega.
inline bool effros_shen_coherence(std::int64_t D) {
  const QuadElement omega = omega_of(D);
  DimensionGroup g = stationary_k0(effros_shen(omega - Rational(omega.floor())));
  if (!g.real_embedding) return false;
  return module_equal(*g.real_embedding, k0_automorphic(D));
}

}  // namespace gcoh
