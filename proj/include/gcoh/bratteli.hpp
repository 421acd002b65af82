#pragma once

// Bratteli diagrams of AF-algebras, their dimension groups, and the real
// embedding of K0 for 2x2 stationary diagrams.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "gcoh/contfrac.hpp"
#include "gcoh/matrix.hpp"
#include "gcoh/real_module.hpp"

namespace gcoh {

/// Block sizes (n1, ..., nk) of M_{n1} + ... + M_{nk}.
class MatrixAlgebraList {
 public:
  explicit MatrixAlgebraList(IntVector sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw DomainError("matrix algebra list must be nonempty");
    for (const auto& n : sizes_)
      if (n < 1) throw DomainError("matrix block sizes must be >= 1");
  }

  const IntVector& sizes() const { return sizes_; }
  std::size_t block_count() const { return sizes_.size(); }
  Integer total_dimension() const {
    Integer total = 0;
    for (const auto& n : sizes_) total += n;
    return total;
  }

  bool operator==(const MatrixAlgebraList&) const = default;

 private:
  IntVector sizes_;
};

/// levels[0] -> levels[1] -> ... with partial multiplicity matrices;
/// multiplicities[i] has shape (blocks at level i+1) x (blocks at level i).
class BratteliDiagram {
 public:
  BratteliDiagram(std::vector<MatrixAlgebraList> levels, std::vector<IntMatrix> multiplicities)
      : levels_(std::move(levels)), multiplicities_(std::move(multiplicities)) {
    if (levels_.empty()) throw DomainError("Bratteli diagram needs at least one level");
    if (multiplicities_.size() + 1 != levels_.size())
      throw DomainError("need exactly one multiplicity matrix between consecutive levels");
    unital_ = true;
    for (std::size_t i = 0; i < multiplicities_.size(); ++i) {
      const IntMatrix& B = multiplicities_[i];
      if (B.rows() != levels_[i + 1].block_count() || B.cols() != levels_[i].block_count())
        throw DomainError("multiplicity matrix " + std::to_string(i) + " has the wrong shape");
      if (!B.all_nonnegative()) throw DomainError("multiplicities must be nonnegative");
      IntVector image = B * levels_[i].sizes();
      for (std::size_t j = 0; j < image.size(); ++j) {
        const Integer& target = levels_[i + 1].sizes()[j];
        if (image[j] > target) throw DomainError("embedding exceeds the block size at level " + std::to_string(i + 1));
        if (image[j] != target) unital_ = false;
      }
    }
  }

  const std::vector<MatrixAlgebraList>& levels() const { return levels_; }
  const std::vector<IntMatrix>& multiplicities() const { return multiplicities_; }
  std::size_t depth() const { return multiplicities_.size(); }
  bool is_unital() const { return unital_; }

 private:
  std::vector<MatrixAlgebraList> levels_;
  std::vector<IntMatrix> multiplicities_;
  bool unital_ = true;
};

/// B_{n-1} ... B_0 v, with n = depth by default.
inline IntVector propagate_dimensions(const BratteliDiagram& d, const IntVector& v,
                                      std::optional<std::size_t> levels = std::nullopt) {
  const std::size_t n = levels.value_or(d.depth());
  if (n > d.depth()) throw DomainError("diagram has only " + std::to_string(d.depth()) + " embeddings");
  if (v.size() != d.levels().front().block_count()) throw DomainError("vector length does not match level 0");
  for (const auto& x : v)
    if (x < 0) throw DomainError("dimension vectors must be nonnegative");
  IntVector out = v;
  for (std::size_t i = 0; i < n; ++i) out = d.multiplicities()[i] * out;
  return out;
}

/// Merge each run of `step` consecutive embeddings into their product.
inline BratteliDiagram telescope(const BratteliDiagram& d, std::size_t step) {
  if (step == 0 || d.depth() % step != 0) throw DomainError("telescoping step must divide the depth");
  std::vector<MatrixAlgebraList> levels{d.levels().front()};
  std::vector<IntMatrix> mults;
  for (std::size_t i = 0; i < d.depth(); i += step) {
    IntMatrix product = d.multiplicities()[i];
    for (std::size_t j = 1; j < step; ++j) product = d.multiplicities()[i + j] * product;
    mults.push_back(std::move(product));
    levels.push_back(d.levels()[i + step]);
  }
  return {std::move(levels), std::move(mults)};
}

/// C -> M_p -> M_{p^2} -> ...
inline BratteliDiagram uhf_diagram(std::uint64_t p, std::size_t depth) {
  if (!is_prime(p)) throw DomainError("UHF diagram needs a prime, got " + std::to_string(p));
  if (depth < 1) throw DomainError("UHF diagram depth must be >= 1");
  std::vector<MatrixAlgebraList> levels;
  std::vector<IntMatrix> mults;
  Integer size = 1;
  for (std::size_t i = 0; i <= depth; ++i) {
    levels.emplace_back(IntVector{size});
    size *= p;
    if (i < depth) mults.push_back(IntMatrix{{static_cast<long long>(p)}});
  }
  return {std::move(levels), std::move(mults)};
}

/// x in Z[1/p], i.e. the reduced denominator of x is a power of p.
inline bool uhf_k0_membership(std::uint64_t p, const Rational& x) {
  Integer d = denominator(x);
  while (d % p == 0) d /= p;
  return d == 1;
}

/// K0 of an AF-algebra: the inductive system (Z^{k_i}, B_i), plus a real
/// embedding when one is available.
struct DimensionGroup {
  std::vector<IntMatrix> presentation;
  std::size_t rank = 0;  // rank of the last stage
  std::optional<RealModule> real_embedding;
  std::optional<QuadElement> shift_multiplier;  // Perron eigenvalue for stationary diagrams

  /// Rank-one presentations: x lies in the image of some finite stage,
  /// i.e. x * (m_0 ... m_{n-1}) is an integer for some n.
  bool contains_at_finite_stage(const Rational& x) const {
    Integer scale = 1;
    for (std::size_t n = 0;; ++n) {
      if (is_integral(x * scale)) return true;
      if (n == presentation.size()) return false;
      const IntMatrix& B = presentation[n];
      if (B.rows() != 1 || B.cols() != 1) throw UnsupportedError("finite-stage membership needs a rank-one presentation");
      scale *= B(0, 0);
    }
  }
};

inline DimensionGroup dimension_group(const BratteliDiagram& d) {
  return {d.multiplicities(), d.levels().back().block_count(), std::nullopt, std::nullopt};
}

/// Constant multiplicity matrix B repeated forever after a seed level.
struct StationaryDiagram {
  IntMatrix B;
  MatrixAlgebraList seed;
  std::size_t period_length = 1;  // partial quotients folded into B (1 when not from a continued fraction)
  std::optional<std::int64_t> field;  // square-free D of the Perron eigenvalue, when known

  StationaryDiagram(IntMatrix matrix, MatrixAlgebraList seed_sizes, std::size_t period = 1,
                    std::optional<std::int64_t> field_hint = std::nullopt)
      : B(std::move(matrix)), seed(std::move(seed_sizes)), period_length(period), field(field_hint) {
    if (!B.is_square()) throw DomainError("stationary multiplicity matrix must be square");
    if (!B.all_nonnegative()) throw DomainError("multiplicities must be nonnegative");
    if (B.rows() != seed.block_count()) throw DomainError("seed size does not match the matrix");
    if (period_length == 0) throw DomainError("period length must be positive");
  }

  /// First `levels` embeddings as an ordinary diagram; block sizes follow the seed.
  BratteliDiagram unroll(std::size_t levels) const {
    std::vector<MatrixAlgebraList> lv{seed};
    std::vector<IntMatrix> mults;
    IntVector sizes = seed.sizes();
    for (std::size_t i = 0; i < levels; ++i) {
      sizes = B * sizes;
      lv.emplace_back(sizes);
      mults.push_back(B);
    }
    return {std::move(lv), std::move(mults)};
  }

  bool operator==(const StationaryDiagram&) const = default;
};

/// Effros-Shen diagram of a continued fraction [a0; a1, a2, ...]: blocks
/// [[a,1],[1,0]] per partial quotient after a0, B = M_{a_L} ... M_{a_1} over
/// the period, and the preperiod folded into the seed dimension vector.
inline StationaryDiagram effros_shen(const PeriodicCF& cf) {
  if (cf.period.empty()) throw DomainError("effros_shen needs a nonempty period");
  auto block = [](const Integer& a) {
    if (a < 1) throw DomainError("partial quotients after the first must be positive");
    IntMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = 1;
    m(1, 0) = 1;
    return m;
  };
  IntVector seed{Integer(1), Integer(0)};
  for (std::size_t k = 1; k < cf.preperiod.size(); ++k) seed = block(cf.preperiod[k]) * seed;
  IntMatrix B = IntMatrix::identity(2);
  for (const auto& a : cf.period) B = block(a) * B;
  // a purely periodic tail leaves a zero in the seed; shifting by one period
  // changes K0 only by the unit lambda
  if (seed[1] == 0) seed = B * seed;
  return {B, MatrixAlgebraList(seed), cf.period.size()};
}

/// Effros-Shen diagram of frac(theta) for a real quadratic irrational theta.
inline StationaryDiagram effros_shen(const QuadElement& theta) {
  if (theta.D() <= 0 || theta.is_rational()) throw DomainError("effros_shen needs a real quadratic irrational");
  StationaryDiagram s = effros_shen(expand(theta - Rational(theta.floor())));
  s.field = theta.D();
  return s;
}

/// Perron-Frobenius data of a primitive stationary matrix.
struct PfData {
  std::optional<QuadElement> eigenvalue;        // exact, 2x2 with irrational eigenvalue
  std::vector<QuadElement> left_eigenvector;    // exact, normalized with last entry 1
  Rational lower, upper;                        // certified bracket: lower <= lambda <= upper
  std::vector<double> left_eigenvector_numeric;  // positive, sums to 1

  bool exact() const { return eigenvalue.has_value(); }
};

inline bool is_primitive(const IntMatrix& B) {
  if (!B.is_square() || B.rows() == 0 || !B.all_nonnegative()) return false;
  const std::size_t n = B.rows();
  // Wielandt: primitive iff B^(n^2 - 2n + 2) > 0; track the zero pattern only
  IntMatrix pattern(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pattern(i, j) = B(i, j) > 0 ? 1 : 0;
  IntMatrix power = pattern;
  const std::size_t bound = n * n - 2 * n + 2;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (power.all_positive()) return true;
    power = power * pattern;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) power(i, j) = power(i, j) > 0 ? 1 : 0;
  }
  return power.all_positive();
}

namespace detail {

// n = f^2 * core with core square-free. Trial division stops at `limit`; the
// leftover cofactor is certified only when it is 1, a square, or too small to
// hold a repeated prime above the limit.
inline std::pair<Integer, std::int64_t> split_square(const Integer& n, std::uint64_t limit = 1000000) {
  Integer f = 1;
  Integer core = 1;
  Integer rest = n;
  for (std::uint64_t d = 2; d <= limit && Integer(d) * d <= rest; ++d) {
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    for (int k = 0; k + 1 < e; k += 2) f *= d;
    if (e % 2 == 1) core *= d;
  }
  if (is_square(rest)) {
    f *= isqrt(rest);
  } else {
    Integer L(limit);
    if (rest >= L * L * L) throw UnsupportedError("cannot certify the square-free part of " + to_string(n));
    core *= rest;
  }
  if (core > std::numeric_limits<std::int64_t>::max()) throw UnsupportedError("quadratic field discriminant too large");
  return {f, core.convert_to<std::int64_t>()};
}

}  // namespace detail

inline PfData pf_data(const StationaryDiagram& s) {
  const IntMatrix& B = s.B;
  if (!is_primitive(B)) throw DomainError("pf_data: matrix " + B.to_string() + " is not primitive");
  const std::size_t n = B.rows();
  PfData out;

  // left power iteration: t <- t B / |t B|
  std::vector<double> t(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += t[i] * B(i, j).convert_to<double>();
    double sum = 0;
    for (double x : next) sum += x;
    for (double& x : next) x /= sum;
    t = std::move(next);
  }
  out.left_eigenvector_numeric = t;

  // Collatz-Wielandt bracket evaluated exactly at the rational vector t
  std::vector<Rational> tr;
  for (double x : t) {
    if (!(x > 0)) throw DomainError("pf_data: power iteration lost positivity");
    tr.push_back(to_rational(x));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < n; ++i) col += tr[i] * Rational(B(i, j));
    Rational ratio = col / tr[j];
    if (j == 0 || ratio < out.lower) out.lower = ratio;
    if (j == 0 || ratio > out.upper) out.upper = ratio;
  }

  if (n == 2) {
    Integer tr2 = B.trace();
    Integer det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    Integer disc = tr2 * tr2 - 4 * det;
    Integer f;
    std::int64_t core = 0;
    if (s.field) {
      if (disc % *s.field != 0 || !is_square(disc / *s.field))
        throw DomainError("pf_data: eigenvalue of " + B.to_string() + " is not in Q(sqrt(" + std::to_string(*s.field) + "))");
      f = isqrt(disc / *s.field);
      core = *s.field;
    } else {
      std::tie(f, core) = detail::split_square(disc);
    }
    if (core != 1) {
      QuadElement lambda(Rational(tr2, 2), Rational(f, 2), core);
      // t B = lambda t, second column: t0 b01 + t1 b11 = lambda t1
      QuadElement t0 = (lambda - Rational(B(1, 1))) / Rational(B(0, 1));
      out.eigenvalue = lambda;
      out.left_eigenvector = {t0, QuadElement::from_rational(Rational(1), core)};
    }
  }
  return out;
}

/// Dimension group of a stationary diagram. For 2x2 primitive B with
/// quadratic Perron eigenvalue the real embedding is Z*t0 + Z*t1 with t the
/// left eigenvector scaled so that t . seed = 1.
inline DimensionGroup stationary_k0(const StationaryDiagram& s) {
  const std::size_t n = s.B.rows();
  if (s.B == IntMatrix::identity(n)) return {{s.B}, n, std::nullopt, std::nullopt};
  if (n != 2) throw UnsupportedError("real embedding is only implemented for 2x2 stationary diagrams");
  PfData pf = pf_data(s);
  if (!pf.exact()) throw UnsupportedError("Perron eigenvalue " + s.B.to_string() + " is rational; no quadratic embedding");
  const std::int64_t D = pf.eigenvalue->D();
  QuadElement mass = pf.left_eigenvector[0] * Rational(s.seed.sizes()[0]) +
                     pf.left_eigenvector[1] * Rational(s.seed.sizes()[1]);
  RealModule embedding(D, {pf.left_eigenvector[0] / mass, pf.left_eigenvector[1] / mass});
  return {{s.B}, n, std::move(embedding), pf.eigenvalue};
}

/// lambda * M == M.
inline bool shift_action_check(const QuadElement& lambda, const RealModule& M) {
  return module_equal(M.scaled_by(lambda), M);
}

inline bool shift_action_check(const StationaryDiagram& s) {
  DimensionGroup g = stationary_k0(s);
  if (!g.real_embedding || !g.shift_multiplier) throw UnsupportedError("no real embedding to act on");
  return shift_action_check(*g.shift_multiplier, *g.real_embedding);
}

}  // namespace gcoh
