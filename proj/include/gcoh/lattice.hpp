#pragma once

// Hermite normal form for sublattices of Z^2.

#include <optional>
#include <utility>
#include <vector>

#include "gcoh/arith.hpp"

namespace gcoh {

using IntVec2 = std::pair<Integer, Integer>;

/// Z-basis of the lattice spanned by a set of integer vectors (x, y):
///   pivot = (x2, y2) with y2 > 0, present iff some vector has y != 0;
///   axis  = g >= 0 such that the vectors with y = 0 are exactly g*Z*(1,0).
/// When both exist, 0 <= x2 < g. The form is unique per lattice.
struct Hnf2 {
  std::optional<IntVec2> pivot;
  Integer axis = 0;

  int rank() const { return (pivot ? 1 : 0) + (axis != 0 ? 1 : 0); }
  bool operator==(const Hnf2&) const = default;

  /// Integer coordinates of v in the basis [axis, pivot], if v is in the lattice.
  std::optional<IntVec2> coordinates(const IntVec2& v) const {
    Integer along_pivot = 0;
    Integer rest = v.first;
    if (v.second != 0) {
      if (!pivot || v.second % pivot->second != 0) return std::nullopt;
      along_pivot = v.second / pivot->second;
      rest -= along_pivot * pivot->first;
    }
    if (rest == 0) return IntVec2{0, along_pivot};
    if (axis == 0 || rest % axis != 0) return std::nullopt;
    return IntVec2{rest / axis, along_pivot};
  }
};

inline Hnf2 hnf2(std::vector<IntVec2> vectors) {
  using boost::multiprecision::abs;
  // Euclid on the second coordinate until one vector carries it.
  while (true) {
    std::size_t best = vectors.size();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].second == 0) continue;
      ++nonzero;
      if (best == vectors.size() || abs(vectors[i].second) < abs(vectors[best].second)) best = i;
    }
    if (nonzero <= 1) break;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (i == best || vectors[i].second == 0) continue;
      Integer q = vectors[i].second / vectors[best].second;
      vectors[i].first -= q * vectors[best].first;
      vectors[i].second -= q * vectors[best].second;
    }
  }
  Hnf2 out;
  for (const auto& v : vectors) {
    if (v.second != 0) {
      out.pivot = v.second < 0 ? IntVec2{-v.first, -v.second} : v;
    } else {
      out.axis = boost::multiprecision::gcd(out.axis, abs(v.first));
    }
  }
  if (out.pivot && out.axis != 0) out.pivot->first = floor_mod(out.pivot->first, out.axis);
  return out;
}

}  // namespace gcoh
