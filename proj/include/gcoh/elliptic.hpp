#pragma once

// Elliptic curves y^2 = x^3 + a4 x + a6 over Q and their reductions mod p.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcoh/arith.hpp"
#include "gcoh/matrix.hpp"

namespace gcoh {

class CurveQ {
 public:
  CurveQ(std::int64_t a4, std::int64_t a6, std::optional<int> cm_discriminant = std::nullopt)
      : a4_(a4), a6_(a6), cm_(cm_discriminant) {
    if (discriminant() == 0) {
      throw DomainError("singular cubic y^2 = x^3 + " + std::to_string(a4) + "x + " + std::to_string(a6));
    }
  }

  std::int64_t a4() const { return a4_; }
  std::int64_t a6() const { return a6_; }
  std::optional<int> cm_discriminant() const { return cm_; }

  /// -16 (4 a4^3 + 27 a6^2)
  Integer discriminant() const {
    Integer a4 = a4_, a6 = a6_;
    return -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6);
  }

  /// Odd primes not dividing the discriminant; p = 2 is always excluded.
  bool is_good_prime(std::uint64_t p) const { return p > 2 && is_prime(p) && discriminant() % p != 0; }

  std::string to_string() const {
    return "y^2 = x^3 + (" + std::to_string(a4_) + ")x + (" + std::to_string(a6_) + ")";
  }

  /// x^3 + a4 x + a6 reduced mod p, in [0, p).
  std::uint64_t rhs_mod(std::uint64_t x, std::uint64_t p) const {
    std::uint64_t a4 = reduce(a4_, p), a6 = reduce(a6_, p);
    std::uint64_t x2 = mul_mod(x, x, p);
    return (mul_mod(x2, x, p) + mul_mod(a4, x, p) + a6) % p;
  }

  static std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
    auto m = static_cast<std::int64_t>(p);
    std::int64_t r = v % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }

 private:
  std::int64_t a4_;
  std::int64_t a6_;
  std::optional<int> cm_;
};

inline Integer discriminant(const CurveQ& c) { return c.discriminant(); }

namespace detail {

inline void require_good(const CurveQ& c, std::uint64_t p) {
  if (!c.is_good_prime(p)) {
    throw BadReductionError("p=" + std::to_string(p) + " is not a good odd prime for " + c.to_string());
  }
}

}  // namespace detail

/// |E(F_p)| = p + 1 + sum_x (f(x)/p), point at infinity included.
inline std::uint64_t count_points_fp(const CurveQ& c, std::uint64_t p) {
  detail::require_good(c, p);
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= (p - 1) / 2; ++y) chi[mul_mod(y, y, p)] = 1;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) sum += chi[c.rhs_mod(x, p)];
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

struct FrobeniusData {
  std::uint64_t p = 0;
  bool good = false;
  std::int64_t a_p = 0;  // meaningful only when good
};

/// a_p = p + 1 - |E(F_p)|; bad primes come back with good = false.
inline FrobeniusData trace_of_frobenius(const CurveQ& c, std::uint64_t p) {
  if (!c.is_good_prime(p)) return {p, false, 0};
  auto a = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(count_points_fp(c, p));
  if (a * a > 4 * static_cast<std::int64_t>(p)) {
    throw std::logic_error("Hasse bound violated at p=" + std::to_string(p) + " for " + c.to_string());
  }
  return {p, true, a};
}

/// Power sums s_r = alpha^r + beta^r of the Frobenius roots, s_0 = 2, s_1 = a.
inline Integer frobenius_power_sum(std::int64_t a, std::uint64_t p, unsigned r) {
  Integer prev2 = 2, prev = a;
  if (r == 0) return prev2;
  for (unsigned k = 2; k <= r; ++k) {
    Integer next = Integer(a) * prev - Integer(p) * prev2;
    prev2 = prev;
    prev = next;
  }
  return prev;
}

/// |E(F_{p^r})| = p^r + 1 - s_r.
inline Integer count_points_extension(const CurveQ& c, std::uint64_t p, unsigned r) {
  if (r < 1 || r > 3) throw DomainError("extension degree must be 1, 2 or 3");
  detail::require_good(c, p);
  FrobeniusData fr = trace_of_frobenius(c, p);
  return boost::multiprecision::pow(Integer(p), r) + 1 - frobenius_power_sum(fr.a_p, p, r);
}

/// |E(F_{p^2})| by enumerating F_{p^2} = F_p[t]/(t^2 - n), n the smallest
/// non-residue: tally y^2 over all y, then sum the tallies at f(x).
inline std::uint64_t count_points_fp2_enumerate(const CurveQ& c, std::uint64_t p) {
  detail::require_good(c, p);
  if (p > 5000) throw UnsupportedError("F_{p^2} enumeration is limited to p <= 5000");
  std::uint64_t n = 2;
  while (legendre(static_cast<std::int64_t>(n), p) != -1) ++n;
  struct Fp2 {
    std::uint64_t u, v;
  };
  auto mul = [&](Fp2 x, Fp2 y) {
    return Fp2{(mul_mod(x.u, y.u, p) + mul_mod(n, mul_mod(x.v, y.v, p), p)) % p,
               (mul_mod(x.u, y.v, p) + mul_mod(x.v, y.u, p)) % p};
  };
  auto add = [&](Fp2 x, Fp2 y) { return Fp2{(x.u + y.u) % p, (x.v + y.v) % p}; };
  std::vector<std::uint32_t> square_count(p * p, 0);
  for (std::uint64_t u = 0; u < p; ++u)
    for (std::uint64_t v = 0; v < p; ++v) {
      Fp2 s = mul({u, v}, {u, v});
      ++square_count[s.u * p + s.v];
    }
  const Fp2 a4{CurveQ::reduce(c.a4(), p), 0}, a6{CurveQ::reduce(c.a6(), p), 0};
  std::uint64_t total = 1;  // point at infinity
  for (std::uint64_t u = 0; u < p; ++u)
    for (std::uint64_t v = 0; v < p; ++v) {
      Fp2 x{u, v};
      Fp2 f = add(add(mul(mul(x, x), x), mul(a4, x)), a6);
      total += square_count[f.u * p + f.v];
    }
  return total;
}

/// Power series log f(t) through t^order for a polynomial with f(0) = 1.
inline std::vector<Rational> series_log(const std::vector<Integer>& f, std::size_t order) {
  if (f.empty() || f[0] != 1) throw DomainError("series_log needs constant term 1");
  auto coeff = [&](std::size_t k) { return k < f.size() ? Rational(f[k]) : Rational(0); };
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = Rational(n) * coeff(n);
    for (std::size_t k = 1; k < n; ++k) acc -= Rational(k) * c[k] * coeff(n - k);
    c[n] = acc / Rational(n);
  }
  return c;
}

/// Z_p(t) = (1 - a_p t + p t^2) / ((1 - t)(1 - p t)).
struct LocalZeta {
  std::uint64_t p = 0;
  std::vector<Integer> numerator;    // 1, -a_p, p
  std::vector<Integer> denominator;  // 1, -(p+1), p

  /// Coefficients of log Z_p(t); the t^r coefficient should be |E(F_{p^r})| / r.
  std::vector<Rational> log_series(std::size_t order) const {
    auto num = series_log(numerator, order);
    auto den = series_log(denominator, order);
    for (std::size_t k = 0; k <= order; ++k) num[k] -= den[k];
    return num;
  }
};

inline LocalZeta weil_zeta_local(const CurveQ& c, std::uint64_t p) {
  detail::require_good(c, p);
  FrobeniusData fr = trace_of_frobenius(c, p);
  return {p, {Integer(1), Integer(-fr.a_p), Integer(p)}, {Integer(1), -Integer(p + 1), Integer(p)}};
}

/// Frobenius acting on H^0, H^1, H^2 of the reduction.
struct FrobeniusMatrices {
  IntMatrix h0;
  IntMatrix h1;
  IntMatrix h2;

  /// tr h0 - tr h1 + tr h2
  Integer lefschetz_sum() const { return h0.trace() - h1.trace() + h2.trace(); }
};

inline FrobeniusMatrices frobenius_matrices(const CurveQ& c, std::uint64_t p) {
  detail::require_good(c, p);
  FrobeniusData fr = trace_of_frobenius(c, p);
  auto sp = static_cast<long long>(p);
  FrobeniusMatrices m{IntMatrix{{1}}, IntMatrix{{0, -sp}, {1, fr.a_p}}, IntMatrix{{sp}}};
  if (m.lefschetz_sum() != Integer(count_points_fp(c, p))) {
    throw std::logic_error("Lefschetz identity failed at p=" + std::to_string(p));
  }
  return m;
}

// ---- CM table ----

struct CmTableEntry {
  int D;  // CM by an order of Q(sqrt(-D))
  std::int64_t a4;
  std::int64_t a6;
};

/// j = 1728, j = 8000, j = 0. The D = 2 entry is y^2 = x^3 + 4x^2 + 2x moved
/// to short form (x -> x - 4/3, then scaled by 6 and reduced by u = 2).
inline const std::vector<CmTableEntry>& cm_table() {
  static const std::vector<CmTableEntry> table{{1, -1, 0}, {2, -270, 1512}, {3, 0, 1}};
  return table;
}

inline CurveQ cm_curve_for(int D) {
  std::string supported;
  for (const auto& e : cm_table()) {
    if (e.D == D) return CurveQ(e.a4, e.a6, e.D);
    supported += (supported.empty() ? "" : ", ") + std::to_string(e.D);
  }
  throw UnsupportedError("no CM curve for D=" + std::to_string(D) + "; supported: " + supported);
}

}  // namespace gcoh
