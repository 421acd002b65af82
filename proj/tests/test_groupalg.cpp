#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "gcoh/groupalg.hpp"
#include "oracles.hpp"

using namespace gcoh;

namespace {

// SL2(F_p) by brute force: elements, conjugacy class count, commutator subgroup order.
struct Sl2Brute {
  using M = std::array<int, 4>;  // a b c d
  int p;
  std::vector<M> elements;

  explicit Sl2Brute(int prime) : p(prime) {
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        for (int c = 0; c < p; ++c)
          for (int d = 0; d < p; ++d)
            if (((a * d - b * c) % p + p) % p == 1) elements.push_back({a, b, c, d});
  }

  M mul(const M& x, const M& y) const {
    return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p};
  }
  M inv(const M& x) const { return {x[3], (p - x[1]) % p, (p - x[2]) % p, x[0]}; }

  std::size_t class_count() const {
    std::set<M> seen;
    std::size_t classes = 0;
    for (const auto& x : elements) {
      if (seen.count(x)) continue;
      ++classes;
      for (const auto& g : elements) seen.insert(mul(mul(g, x), inv(g)));
    }
    return classes;
  }

  std::size_t commutator_subgroup_order() const {
    std::set<M> group;
    for (const auto& x : elements)
      for (const auto& y : elements) group.insert(mul(mul(x, y), mul(inv(x), inv(y))));
    // close under products
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<M> current(group.begin(), group.end());
      for (const auto& x : current)
        for (const auto& y : current)
          if (group.insert(mul(x, y)).second) grew = true;
    }
    return group.size();
  }
};

std::vector<std::uint64_t> degrees(std::initializer_list<std::uint64_t> xs) { return xs; }

// Exhaustive search over per-level permutations; sizes must stay tiny.
bool brute_isomorphic(const LayeredGraph& a, const LayeredGraph& b, LevelPermutations& perm, std::size_t level) {
  if (level == a.level_sizes.size()) return detail::verify_isomorphism(a, b, perm);
  std::vector<std::size_t> p(a.level_sizes[level]);
  std::iota(p.begin(), p.end(), 0);
  do {
    perm[level] = p;
    if (brute_isomorphic(a, b, perm, level + 1)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool brute_isomorphic(const LayeredGraph& a, const LayeredGraph& b) {
  if (a.level_sizes != b.level_sizes) return false;
  LevelPermutations perm(a.level_sizes.size());
  return brute_isomorphic(a, b, perm, 0);
}

LayeredGraph random_graph(const std::vector<std::size_t>& sizes, int density) {
  LayeredGraph g;
  g.level_sizes = sizes;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    std::vector<LayeredGraph::Edge> es;
    for (std::size_t f = 0; f < sizes[i]; ++f)
      for (std::size_t t = 0; t < sizes[i + 1]; ++t)
        if (oracle::uniform(0, 9) < density) es.push_back({f, t, oracle::uniform(1, 2)});
    g.edges.push_back(std::move(es));
  }
  return g;
}

LayeredGraph permuted(const LayeredGraph& g, const LevelPermutations& perm) {
  LayeredGraph out;
  out.level_sizes = g.level_sizes;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    std::vector<LayeredGraph::Edge> es;
    for (const auto& e : g.edges[i]) es.push_back({perm[i][e.from], perm[i + 1][e.to], e.multiplicity});
    std::shuffle(es.begin(), es.end(), oracle::rng());
    out.edges.push_back(std::move(es));
  }
  return out;
}

LevelPermutations random_permutations(const std::vector<std::size_t>& sizes) {
  LevelPermutations perm;
  for (auto n : sizes) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), oracle::rng());
    perm.push_back(std::move(p));
  }
  return perm;
}

}  // namespace

TEST(CyclicProfile, Examples) {
  EXPECT_EQ(cyclic_profile(4).degrees, degrees({1, 1, 1, 1}));
  EXPECT_EQ(cyclic_profile(1).degrees, degrees({1}));
  auto nine = cyclic_profile(9);
  EXPECT_EQ(nine.degrees.size(), 9u);
  EXPECT_EQ(nine.sum_of_squares(), 9);
  EXPECT_TRUE(nine.burnside_holds());
  EXPECT_THROW(cyclic_profile(0), DomainError);
}

TEST(Sl2, Examples) {
  auto five = sl2_degree_profile(5);
  EXPECT_EQ(five.degrees, degrees({1, 2, 2, 3, 3, 4, 4, 5, 6}));
  EXPECT_EQ(five.order, 120);
  auto seven = sl2_degree_profile(7);
  EXPECT_EQ(seven.order, 336);
  EXPECT_EQ(seven.sum_of_squares(), 336);
  EXPECT_EQ(sl2_degree_profile(13).degrees.size(), 17u);
  EXPECT_THROW(sl2_degree_profile(2), UnsupportedError);
  EXPECT_THROW(sl2_degree_profile(9), DomainError);
}

TEST(Sl2, MatchesBruteForceGroupData) {
  for (int p : {3, 5, 7}) {
    Sl2Brute g(p);
    auto profile = sl2_degree_profile(p);
    EXPECT_EQ(Integer(g.elements.size()), profile.order) << p;
    EXPECT_EQ(g.class_count(), profile.degrees.size()) << p;
    // linear characters = |G / [G,G]|
    std::size_t linear = std::count(profile.degrees.begin(), profile.degrees.end(), 1u);
    EXPECT_EQ(linear, g.elements.size() / g.commutator_subgroup_order()) << p;
  }
}

TEST(Sl2, BurnsideAndClassCountForOddPrimes) {
  for (auto p : primes_up_to(200)) {
    if (p == 2) continue;
    auto profile = sl2_degree_profile(p);
    EXPECT_TRUE(profile.burnside_holds()) << p;
    EXPECT_EQ(profile.degrees.size(), p + 4) << p;
  }
}

TEST(CyclicTower, Examples) {
  auto t = cyclic_tower(2, 2);
  ASSERT_EQ(t.connecting.size(), 2u);
  EXPECT_EQ(t.levels[1].degrees.size(), 2u);
  EXPECT_EQ(t.levels[2].degrees.size(), 4u);
  const IntMatrix C = t.connecting[1].to_dense();
  EXPECT_EQ(C.rows(), 4u);
  EXPECT_EQ(C.cols(), 2u);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(C(0, j) + C(1, j) + C(2, j) + C(3, j), 2);

  auto t3 = cyclic_tower(3, 1);
  EXPECT_EQ(t3.connecting[0].to_dense(), (IntMatrix{{1}, {1}, {1}}));

  auto t5 = cyclic_tower(5, 3);
  for (std::size_t i = 0; i <= 3; ++i) EXPECT_EQ(Integer(t5.levels[i].degrees.size()), pow(Integer(5), i));
}

TEST(CyclicTower, PullbackInvariantsAndUnitality) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    auto t = cyclic_tower(p, 3);
    EXPECT_TRUE(t.pullback_invariants_hold());
    BratteliDiagram d = t.diagram();
    EXPECT_TRUE(d.is_unital());  // pullback preserves the constant function 1
    for (const auto& level : t.levels) EXPECT_TRUE(level.burnside_holds());
  }
  auto broken = cyclic_tower(3, 2);
  broken.connecting[1].set(0, 0, 0);
  EXPECT_FALSE(broken.pullback_invariants_hold());
}

TEST(SelfSimilarity, Examples) {
  EXPECT_TRUE(self_similarity_check(cyclic_tower(2, 4), 2));
  EXPECT_TRUE(self_similarity_check(cyclic_tower(3, 4), 2));
  auto corrupted = cyclic_tower(2, 4);
  corrupted.connecting[1].set(0, 0, 0);
  corrupted.connecting[1].set(0, 1, 1);
  EXPECT_FALSE(self_similarity_check(corrupted, 2));
  EXPECT_THROW(self_similarity_check(cyclic_tower(2, 2), 2), DomainError);
}

TEST(SelfSimilarity, HoldsForSmallPrimesAndWindows) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (std::size_t w = 1; w <= 3; ++w) EXPECT_TRUE(self_similarity_check(cyclic_tower(p, w + 1), w)) << p << " " << w;
}

TEST(LayeredIsomorphism, FindsHiddenPermutations) {
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> sizes{static_cast<std::size_t>(oracle::uniform(1, 5)),
                                   static_cast<std::size_t>(oracle::uniform(1, 6)),
                                   static_cast<std::size_t>(oracle::uniform(1, 6))};
    LayeredGraph g = random_graph(sizes, static_cast<int>(oracle::uniform(2, 7)));
    LayeredGraph h = permuted(g, random_permutations(sizes));
    auto found = find_layered_isomorphism(g, h);
    ASSERT_TRUE(found);
    EXPECT_TRUE(detail::verify_isomorphism(g, h, *found));
  }
}

TEST(LayeredIsomorphism, AgreesWithExhaustiveSearch) {
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::size_t> sizes{static_cast<std::size_t>(oracle::uniform(1, 3)),
                                   static_cast<std::size_t>(oracle::uniform(1, 4)),
                                   static_cast<std::size_t>(oracle::uniform(1, 4))};
    LayeredGraph g = random_graph(sizes, 5);
    LayeredGraph h = oracle::uniform(0, 1) ? permuted(g, random_permutations(sizes)) : random_graph(sizes, 5);
    bool expected = brute_isomorphic(g, h);
    (expected ? positives : negatives)++;
    auto found = find_layered_isomorphism(g, h);
    EXPECT_EQ(found.has_value(), expected);
    if (found) {
      EXPECT_TRUE(detail::verify_isomorphism(g, h, *found));
    }
  }
  EXPECT_GT(positives, 20);
  EXPECT_GT(negatives, 20);
}

TEST(RestrictedProduct, Examples) {
  StationaryDiagram golden(IntMatrix{{1, 1}, {1, 0}}, MatrixAlgebraList(IntVector{Integer(1), Integer(1)}));
  auto keys = [](const RestrictedProductSpec& s) {
    std::vector<std::uint64_t> out;
    for (const auto& [p, _] : s.factors) out.push_back(p);
    return out;
  };
  EXPECT_EQ(keys(assemble_restricted_product({2}, 7, golden)), degrees({3, 5, 7}));
  EXPECT_EQ(keys(assemble_restricted_product({}, 3, golden)), degrees({2, 3}));
  auto empty = assemble_restricted_product({2, 3}, 3, golden);
  EXPECT_TRUE(empty.factors.empty());
  EXPECT_EQ(empty.infinite_factor, golden);
  EXPECT_THROW(assemble_restricted_product({4}, 7, golden), DomainError);
  StationaryDiagram flat(IntMatrix{{2, 0}, {0, 2}}, MatrixAlgebraList(IntVector{Integer(1), Integer(1)}));
  EXPECT_THROW(assemble_restricted_product({}, 7, flat), DomainError);
}

TEST(RestrictedProduct, FactorsAreCyclicTowers) {
  StationaryDiagram golden(IntMatrix{{1, 1}, {1, 0}}, MatrixAlgebraList(IntVector{Integer(1), Integer(1)}));
  auto spec = assemble_restricted_product({5}, 30, golden, 2);
  for (const auto& [p, d] : spec.factors) {
    EXPECT_NE(p, 5u);
    EXPECT_EQ(d.depth(), 2u);
    EXPECT_EQ(d.multiplicities(), cyclic_tower(p, 2).diagram().multiplicities());
  }
  EXPECT_EQ(spec.factors.size(), primes_up_to(30).size() - 1);
}
