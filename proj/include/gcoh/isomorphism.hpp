#pragma once

// Isomorphism of layered multigraphs (Bratteli diagram windows) up to a
// permutation of the vertices inside each level.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "gcoh/matrix.hpp"

namespace gcoh {

struct LayeredGraph {
  struct Edge {
    std::size_t from;  // vertex at level i
    std::size_t to;    // vertex at level i+1
    std::int64_t multiplicity;
  };

  std::vector<std::size_t> level_sizes;
  std::vector<std::vector<Edge>> edges;  // edges[i] joins level i to level i+1

  /// Edges of a multiplicity matrix of shape (next level) x (this level).
  static std::vector<Edge> edges_of(const IntMatrix& C) {
    std::vector<Edge> out;
    for (std::size_t r = 0; r < C.rows(); ++r)
      for (std::size_t c = 0; c < C.cols(); ++c)
        if (C(r, c) != 0) out.push_back({c, r, C(r, c).convert_to<std::int64_t>()});
    return out;
  }

  static std::vector<Edge> edges_of(const SparseIntMatrix& C) {
    std::vector<Edge> out;
    for (const auto& [k, v] : C.entries()) out.push_back({k.second, k.first, v});
    return out;
  }

  /// Every vertex below level 0 has exactly one incoming edge.
  bool is_forest() const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::vector<int> parents(level_sizes[i + 1], 0);
      for (const auto& e : edges[i]) ++parents[e.to];
      for (int n : parents)
        if (n != 1) return false;
    }
    return true;
  }
};

/// perm[level][vertex of A] = vertex of B.
using LevelPermutations = std::vector<std::vector<std::size_t>>;

namespace detail {

inline bool verify_isomorphism(const LayeredGraph& a, const LayeredGraph& b, const LevelPermutations& perm) {
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].size() != b.edges[i].size()) return false;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> target;
    for (const auto& e : b.edges[i]) target[{e.from, e.to}] += e.multiplicity;
    for (const auto& e : a.edges[i]) {
      auto it = target.find({perm[i][e.from], perm[i + 1][e.to]});
      if (it == target.end() || it->second != e.multiplicity) return false;
    }
  }
  return true;
}

// Rooted-forest isomorphism by bottom-up canonical signatures (AHU).
inline std::optional<LevelPermutations> forest_isomorphism(const LayeredGraph& a, const LayeredGraph& b) {
  const std::size_t levels = a.level_sizes.size();
  using Child = std::pair<int, std::int64_t>;  // (signature, multiplicity)
  std::map<std::pair<std::size_t, std::vector<Child>>, int> intern;

  struct Tree {
    std::vector<std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>> children;
    std::vector<std::vector<int>> sig;
  };
  auto build = [&](const LayeredGraph& g) {
    Tree t;
    t.children.resize(levels);
    t.sig.resize(levels);
    for (std::size_t i = 0; i < levels; ++i) {
      t.children[i].resize(g.level_sizes[i]);
      t.sig[i].assign(g.level_sizes[i], 0);
    }
    for (std::size_t i = 0; i + 1 < levels; ++i)
      for (const auto& e : g.edges[i]) t.children[i][e.from].emplace_back(e.to, e.multiplicity);
    for (std::size_t i = levels; i-- > 0;) {
      for (std::size_t v = 0; v < g.level_sizes[i]; ++v) {
        std::vector<Child> key;
        for (const auto& [c, m] : t.children[i][v]) key.emplace_back(t.sig[i + 1][c], m);
        std::sort(key.begin(), key.end());
        auto [it, inserted] = intern.try_emplace({i, std::move(key)}, static_cast<int>(intern.size()));
        t.sig[i][v] = it->second;
      }
    }
    return t;
  };
  Tree ta = build(a);
  Tree tb = build(b);

  LevelPermutations perm(levels);
  for (std::size_t i = 0; i < levels; ++i) perm[i].assign(a.level_sizes[i], 0);

  auto sorted_by_sig = [](std::vector<std::tuple<int, std::int64_t, std::size_t>> items) {
    std::sort(items.begin(), items.end());
    return items;
  };
  auto pair_up = [&](std::size_t level, const std::vector<std::tuple<int, std::int64_t, std::size_t>>& xs,
                     const std::vector<std::tuple<int, std::int64_t, std::size_t>>& ys,
                     std::vector<std::pair<std::size_t, std::size_t>>& out) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (std::get<0>(xs[k]) != std::get<0>(ys[k]) || std::get<1>(xs[k]) != std::get<1>(ys[k])) return false;
      perm[level][std::get<2>(xs[k])] = std::get<2>(ys[k]);
      out.emplace_back(std::get<2>(xs[k]), std::get<2>(ys[k]));
    }
    return true;
  };

  std::vector<std::tuple<int, std::int64_t, std::size_t>> ra, rb;
  for (std::size_t v = 0; v < a.level_sizes[0]; ++v) ra.emplace_back(ta.sig[0][v], 0, v);
  for (std::size_t v = 0; v < b.level_sizes[0]; ++v) rb.emplace_back(tb.sig[0][v], 0, v);
  std::vector<std::pair<std::size_t, std::size_t>> frontier;
  if (!pair_up(0, sorted_by_sig(ra), sorted_by_sig(rb), frontier)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < levels; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [u, v] : frontier) {
      std::vector<std::tuple<int, std::int64_t, std::size_t>> ca, cb;
      for (const auto& [c, m] : ta.children[i][u]) ca.emplace_back(ta.sig[i + 1][c], m, c);
      for (const auto& [c, m] : tb.children[i][v]) cb.emplace_back(tb.sig[i + 1][c], m, c);
      if (!pair_up(i + 1, sorted_by_sig(ca), sorted_by_sig(cb), next)) return std::nullopt;
    }
    frontier = std::move(next);
  }
  if (!verify_isomorphism(a, b, perm)) return std::nullopt;
  return perm;
}

// General case: colour refinement with individualization and backtracking,
// run on the disjoint union so colours are comparable across graphs.
class RefinementSearch {
 public:
  RefinementSearch(const LayeredGraph& a, const LayeredGraph& b) : a_(a), b_(b) {
    for (std::size_t i = 0; i < a.level_sizes.size(); ++i) {
      offset_a_.push_back(n_);
      n_ += a.level_sizes[i];
    }
    for (std::size_t i = 0; i < b.level_sizes.size(); ++i) {
      offset_b_.push_back(n_);
      n_ += b.level_sizes[i];
    }
    split_ = offset_b_.empty() ? n_ : offset_b_[0];
    adjacency_.resize(n_);
    auto add = [&](const LayeredGraph& g, const std::vector<std::size_t>& off) {
      for (std::size_t i = 0; i < g.edges.size(); ++i)
        for (const auto& e : g.edges[i]) {
          adjacency_[off[i] + e.from].push_back({off[i + 1] + e.to, e.multiplicity, 1});
          adjacency_[off[i + 1] + e.to].push_back({off[i] + e.from, e.multiplicity, -1});
        }
    };
    add(a, offset_a_);
    add(b, offset_b_);
  }

  std::optional<LevelPermutations> run() {
    std::vector<int> colour(n_);
    for (std::size_t i = 0; i < offset_a_.size(); ++i) {
      for (std::size_t v = 0; v < a_.level_sizes[i]; ++v) colour[offset_a_[i] + v] = static_cast<int>(i);
      for (std::size_t v = 0; v < b_.level_sizes[i]; ++v) colour[offset_b_[i] + v] = static_cast<int>(i);
    }
    return search(std::move(colour));
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t multiplicity;
    int direction;
  };

  void refine(std::vector<int>& colour) const {
    std::size_t classes = 0;
    while (true) {
      std::map<std::pair<int, std::vector<std::tuple<int, std::int64_t, int>>>, int> ids;
      std::vector<int> next(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<std::tuple<int, std::int64_t, int>> around;
        for (const auto& arc : adjacency_[v]) around.emplace_back(colour[arc.to], arc.multiplicity, arc.direction);
        std::sort(around.begin(), around.end());
        auto [it, inserted] = ids.try_emplace({colour[v], std::move(around)}, static_cast<int>(ids.size()));
        next[v] = it->second;
      }
      colour = std::move(next);
      if (ids.size() == classes) return;
      classes = ids.size();
    }
  }

  bool balanced(const std::vector<int>& colour) const {
    std::map<int, long> count;
    for (std::size_t v = 0; v < n_; ++v) count[colour[v]] += v < split_ ? 1 : -1;
    for (const auto& [c, k] : count)
      if (k != 0) return false;
    return true;
  }

  std::optional<LevelPermutations> search(std::vector<int> colour) const {
    refine(colour);
    if (!balanced(colour)) return std::nullopt;
    std::map<int, std::vector<std::size_t>> in_a, in_b;
    for (std::size_t v = 0; v < n_; ++v) (v < split_ ? in_a : in_b)[colour[v]].push_back(v);
    const std::vector<std::size_t>* cell = nullptr;
    int cell_colour = 0;
    for (const auto& [c, members] : in_a)
      if (members.size() > 1 && (!cell || members.size() < cell->size())) {
        cell = &members;
        cell_colour = c;
      }
    if (!cell) {
      LevelPermutations perm(offset_a_.size());
      for (std::size_t i = 0; i < offset_a_.size(); ++i) {
        perm[i].resize(a_.level_sizes[i]);
        for (std::size_t v = 0; v < a_.level_sizes[i]; ++v)
          perm[i][v] = in_b[colour[offset_a_[i] + v]].front() - offset_b_[i];
      }
      if (verify_isomorphism(a_, b_, perm)) return perm;
      return std::nullopt;
    }
    const int fresh = static_cast<int>(n_) + 1;
    for (std::size_t target : in_b[cell_colour]) {
      std::vector<int> trial = colour;
      trial[cell->front()] = fresh;
      trial[target] = fresh;
      if (auto found = search(std::move(trial))) return found;
    }
    return std::nullopt;
  }

  const LayeredGraph& a_;
  const LayeredGraph& b_;
  std::size_t n_ = 0;
  std::size_t split_ = 0;
  std::vector<std::size_t> offset_a_, offset_b_;
  std::vector<std::vector<Arc>> adjacency_;
};

}  // namespace detail

/// Level-preserving isomorphism a -> b respecting edge multiplicities.
inline std::optional<LevelPermutations> find_layered_isomorphism(const LayeredGraph& a, const LayeredGraph& b) {
  if (a.level_sizes != b.level_sizes || a.edges.size() != b.edges.size()) return std::nullopt;
  if (a.edges.size() + 1 != a.level_sizes.size()) throw DomainError("layered graph has inconsistent levels");
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].size() != b.edges[i].size()) return std::nullopt;
  const bool fa = a.is_forest(), fb = b.is_forest();
  if (fa != fb) return std::nullopt;
  if (fa) return detail::forest_isomorphism(a, b);
  return detail::RefinementSearch(a, b).run();
}

}  // namespace gcoh
