#pragma once

// Group algebra decompositions, profinite towers of cyclic groups, and the
// restricted-product assembly over primes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcoh/bratteli.hpp"
#include "gcoh/isomorphism.hpp"

namespace gcoh {

/// Degrees of the irreducible representations of a finite group, i.e. the
/// block sizes of C[G] = M_{n1}(C) + ... + M_{nh}(C).
struct RepDegreeProfile {
  std::string group_label;
  Integer order;
  std::vector<std::uint64_t> degrees;

  Integer sum_of_squares() const {
    Integer total = 0;
    for (auto d : degrees) total += Integer(d) * d;
    return total;
  }
  bool burnside_holds() const { return sum_of_squares() == order; }
};

inline RepDegreeProfile cyclic_profile(std::uint64_t n) {
  if (n < 1) throw DomainError("cyclic group order must be >= 1");
  return {"Z/" + std::to_string(n), Integer(n), std::vector<std::uint64_t>(n, 1)};
}

/// Character degrees of SL2(F_p), p odd: 1, p, (p+1) x (p-3)/2,
/// (p-1) x (p-1)/2, and the four half-degree characters.
inline RepDegreeProfile sl2_degree_profile(std::uint64_t p) {
  if (p == 2) throw UnsupportedError("sl2_degree_profile: p = 2 is not supported");
  if (!is_prime(p)) throw DomainError("sl2_degree_profile needs an odd prime, got " + std::to_string(p));
  std::vector<std::uint64_t> degrees{1, p};
  degrees.insert(degrees.end(), (p - 3) / 2, p + 1);
  degrees.insert(degrees.end(), (p - 1) / 2, p - 1);
  degrees.insert(degrees.end(), 2, (p + 1) / 2);
  degrees.insert(degrees.end(), 2, (p - 1) / 2);
  std::sort(degrees.begin(), degrees.end());
  Integer order = Integer(p) * (Integer(p) * p - 1);
  return {"SL2(F_" + std::to_string(p) + ")", order, std::move(degrees)};
}

/// C[Z/p^0] -> C[Z/p] -> C[Z/p^2] -> ... by pullback along reduction mod p^i.
struct ProfiniteTower {
  std::uint64_t prime = 0;
  std::vector<RepDegreeProfile> levels;
  std::vector<SparseIntMatrix> connecting;  // shape (blocks at i+1) x (blocks at i)

  std::size_t depth() const { return connecting.size(); }

  BratteliDiagram diagram() const {
    std::vector<MatrixAlgebraList> lv;
    for (const auto& level : levels) {
      IntVector sizes;
      for (auto d : level.degrees) sizes.emplace_back(d);
      lv.emplace_back(std::move(sizes));
    }
    std::vector<IntMatrix> mults;
    for (const auto& C : connecting) mults.push_back(C.to_dense());
    return {std::move(lv), std::move(mults)};
  }

  /// Every connecting matrix has column sums p and row sums 1.
  bool pullback_invariants_hold() const {
    for (const auto& C : connecting) {
      std::vector<std::int64_t> row(C.rows(), 0), col(C.cols(), 0);
      for (const auto& [k, v] : C.entries()) {
        row[k.first] += v;
        col[k.second] += v;
      }
      for (auto x : col)
        if (x != static_cast<std::int64_t>(prime)) return false;
      for (auto x : row)
        if (x != 1) return false;
    }
    return true;
  }
};

inline ProfiniteTower cyclic_tower(std::uint64_t p, std::size_t depth) {
  if (!is_prime(p)) throw DomainError("cyclic_tower needs a prime, got " + std::to_string(p));
  if (depth < 1) throw DomainError("cyclic_tower depth must be >= 1");
  ProfiniteTower t;
  t.prime = p;
  std::uint64_t size = 1;
  for (std::size_t i = 0; i <= depth; ++i) {
    t.levels.push_back(cyclic_profile(size));
    if (i < depth) {
      // character r mod p^(i+1) restricts to r mod p^i
      SparseIntMatrix C(size * p, size);
      for (std::uint64_t r = 0; r < size * p; ++r) C.set(r, r % size, 1);
      t.connecting.push_back(std::move(C));
    }
    size *= p;
  }
  return t;
}

/// Levels [1, window+1] of the tower are isomorphic, up to block permutation
/// at every level, to levels [0, window] with each block replaced by p copies.
inline bool self_similarity_check(const ProfiniteTower& t, std::size_t window) {
  if (t.depth() < window + 1) throw DomainError("tower too shallow for the requested window");
  LayeredGraph shifted;
  LayeredGraph copies;
  const std::uint64_t p = t.prime;
  shifted.level_sizes.push_back(t.connecting[0].rows());
  copies.level_sizes.push_back(p * t.connecting[0].cols());
  for (std::size_t i = 0; i < window; ++i) {
    shifted.edges.push_back(LayeredGraph::edges_of(t.connecting[i + 1]));
    shifted.level_sizes.push_back(t.connecting[i + 1].rows());
    const SparseIntMatrix& C = t.connecting[i];
    std::vector<LayeredGraph::Edge> dup;
    for (std::uint64_t c = 0; c < p; ++c)
      for (const auto& e : LayeredGraph::edges_of(C))
        dup.push_back({c * C.cols() + e.from, c * C.rows() + e.to, e.multiplicity});
    copies.edges.push_back(std::move(dup));
    copies.level_sizes.push_back(p * C.rows());
  }
  return find_layered_isomorphism(copies, shifted).has_value();
}

/// Descriptor of the restricted product over primes: one tower per
/// unramified p <= bound plus the factor at the infinite place.
struct RestrictedProductSpec {
  std::set<std::uint64_t> ramified;
  std::uint64_t prime_bound = 0;
  std::size_t factor_depth = 2;
  std::map<std::uint64_t, BratteliDiagram> factors;
  StationaryDiagram infinite_factor;
};

inline RestrictedProductSpec assemble_restricted_product(const std::set<std::uint64_t>& ramified,
                                                         std::uint64_t prime_bound,
                                                         const StationaryDiagram& infinite_seed,
                                                         std::size_t factor_depth = 2) {
  for (auto q : ramified)
    if (!is_prime(q)) throw DomainError("ramified set contains the non-prime " + std::to_string(q));
  RestrictedProductSpec spec{ramified, prime_bound, factor_depth, {}, infinite_seed};
  for (auto p : primes_up_to(prime_bound)) {
    if (ramified.count(p) != 0) continue;
    ProfiniteTower tower = cyclic_tower(p, factor_depth);
    if (!tower.pullback_invariants_hold()) throw DomainError("tower invariants failed at p=" + std::to_string(p));
    spec.factors.emplace(p, tower.diagram());
  }
  if (!is_primitive(spec.infinite_factor.B)) throw DomainError("infinite-place factor is not primitive");
  return spec;
}

}  // namespace gcoh
