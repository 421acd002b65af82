#pragma once

// Periodic continued fractions of real quadratic irrationals.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "gcoh/quad_element.hpp"

namespace gcoh {

/// theta = [preperiod; period, period, ...].
///
/// The integer part a0 always opens the preperiod, so the period starts at
/// index >= 1 even for purely periodic numbers such as the golden ratio.
struct PeriodicCF {
  std::vector<Integer> preperiod;
  std::vector<Integer> period;

  /// k-th partial quotient of the infinite expansion.
  const Integer& quotient(std::size_t k) const {
    if (k < preperiod.size()) return preperiod[k];
    return period[(k - preperiod.size()) % period.size()];
  }

  bool operator==(const PeriodicCF&) const = default;
};

struct Convergent {
  Integer p;
  Integer q;
  std::size_t index = 0;
};

namespace detail {

// Shortest block whose repetition reproduces the period.
inline std::vector<Integer> minimal_rotation_block(const std::vector<Integer>& period) {
  const std::size_t n = period.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool repeats = true;
    for (std::size_t i = len; i < n && repeats; ++i) repeats = period[i] == period[i - len];
    if (repeats) return {period.begin(), period.begin() + static_cast<std::ptrdiff_t>(len)};
  }
  return period;
}

}  // namespace detail

/// Exact floor-and-invert expansion; stops at the first repeated complete quotient.
inline PeriodicCF expand(const QuadElement& theta) {
  if (theta.D() <= 0) throw DomainError("continued fractions need a real quadratic field");
  if (theta.is_rational()) throw DomainError("expand: " + theta.to_string() + " is rational");

  std::vector<Integer> quotients;
  Integer a0 = theta.floor();
  quotients.push_back(a0);
  QuadElement x = (theta - Rational(a0)).inverse();

  std::map<std::pair<Rational, Rational>, std::size_t> seen;
  while (true) {
    auto key = std::make_pair(x.a(), x.b());
    if (auto it = seen.find(key); it != seen.end()) {
      PeriodicCF cf;
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      cf.preperiod.assign(quotients.begin(), quotients.begin() + start);
      cf.period = detail::minimal_rotation_block({quotients.begin() + start, quotients.end()});
      return cf;
    }
    seen.emplace(std::move(key), quotients.size());
    Integer ak = x.floor();
    quotients.push_back(ak);
    x = (x - Rational(ak)).inverse();
  }
}

/// First n convergents p_k/q_k.
inline std::vector<Convergent> convergents(const PeriodicCF& cf, std::size_t n) {
  if (n == 0) throw DomainError("convergents: n must be at least 1");
  std::vector<Convergent> out;
  out.reserve(n);
  Integer p_prev = 1, p_prev2 = 0;
  Integer q_prev = 0, q_prev2 = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Integer& a = cf.quotient(k);
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    out.push_back({p, q, k});
    p_prev2 = std::exchange(p_prev, p);
    q_prev2 = std::exchange(q_prev, q);
  }
  return out;
}

}  // namespace gcoh
