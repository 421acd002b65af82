#pragma once

// Frobenius traces of the CM table curves computed from the Hecke character
// of the CM field, without counting points: a_p = 0 at inert p, and
// a_p = Tr psi(P) at split p, where psi(P) is the normalized generator of a
// prime P above p.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/elliptic.hpp"
#include "gcoh/lattice.hpp"
#include "gcoh/quad_element.hpp"

namespace gcoh {

/// Solution (x, y) of x^2 + d y^2 = m for prime m (Cornacchia), with
/// m = 4p for the modified variant (d = 3 mod 4). nullopt when none exists.
inline std::optional<std::pair<std::int64_t, std::int64_t>> cornacchia(std::uint64_t d, std::uint64_t p,
                                                                       bool times_four = false) {
  if (p < 3 || !is_prime(p) || (d > 1 && p % d == 0)) return std::nullopt;
  if (legendre(-static_cast<std::int64_t>(d), p) != 1) return std::nullopt;
  std::uint64_t r = sqrt_mod_prime(CurveQ::reduce(-static_cast<std::int64_t>(d), p), p);
  std::uint64_t modulus = p;
  if (times_four) {
    // need r^2 = -d mod 4p, r = d mod 2
    if (r % 2 != d % 2) r = p - r;
    modulus = 4 * p;
  } else if (2 * r <= p) {
    r = p - r;
  }
  std::uint64_t a = times_four ? 2 * p : p, b = r;
  const auto limit = static_cast<std::uint64_t>(isqrt(Integer(modulus)));
  while (b > limit) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  std::uint64_t rest = modulus - b * b;
  if (rest % d != 0) return std::nullopt;
  Integer y2 = rest / d;
  if (!is_square(y2)) return std::nullopt;
  return std::make_pair(static_cast<std::int64_t>(b), isqrt(y2).convert_to<std::int64_t>());
}

/// Ring of integers of Q(sqrt(-D)) for D in {1, 2, 3}, with residues modulo
/// a fixed ideal f.
class ImaginaryOrder {
 public:
  ImaginaryOrder(int D, const QuadElement& modulus) : D_(D), modulus_(modulus) {
    if (D != 1 && D != 2 && D != 3) throw UnsupportedError("imaginary order only for D in {1,2,3}");
    std::vector<IntVec2> gens{coordinates(modulus_), coordinates(modulus_ * basis_element())};
    lattice_ = hnf2(gens);
    if (lattice_.rank() != 2) throw DomainError("modulus must be nonzero");
  }

  int D() const { return D_; }
  std::int64_t seed() const { return -D_; }

  /// Integral basis {1, w}: w = (1 + sqrt(-3))/2 for D = 3, sqrt(-D) otherwise.
  QuadElement basis_element() const {
    if (D_ == 3) return {Rational(1, 2), Rational(1, 2), -3};
    return QuadElement::sqrt_of(-D_);
  }

  QuadElement one() const { return QuadElement::from_rational(Rational(1), -D_); }

  std::vector<QuadElement> units() const {
    std::vector<QuadElement> out{one(), -one()};
    if (D_ == 1) {
      out.push_back(QuadElement::sqrt_of(-1));
      out.push_back(-QuadElement::sqrt_of(-1));
    } else if (D_ == 3) {
      QuadElement zeta(Rational(-1, 2), Rational(1, 2), -3);  // primitive cube root of unity
      for (const auto& z : {zeta, zeta * zeta}) {
        out.push_back(z);
        out.push_back(-z);
      }
    }
    return out;
  }

  /// Coordinates (u, v) with x = u + v w; x must be an algebraic integer.
  IntVec2 coordinates(const QuadElement& x) const {
    Rational u = x.a(), v = x.b();
    if (D_ == 3) {
      v = 2 * x.b();
      u = x.a() - x.b();
    }
    if (!is_integral(u) || !is_integral(v)) throw DomainError(x.to_string() + " is not integral");
    return {numerator(u), numerator(v)};
  }

  QuadElement from_coordinates(const IntVec2& c) const {
    return one() * Rational(c.first) + basis_element() * Rational(c.second);
  }

  /// Canonical representative of x mod f.
  IntVec2 residue(const QuadElement& x) const {
    IntVec2 c = coordinates(x);
    const IntVec2& pivot = *lattice_.pivot;
    Integer k = floor_div(c.second, pivot.second);
    c.first -= k * pivot.first;
    c.second -= k * pivot.second;
    c.first = floor_mod(c.first, lattice_.axis);
    return c;
  }

  /// All residues mod f, in a fixed order.
  std::vector<IntVec2> residues() const {
    std::vector<IntVec2> out;
    for (Integer v = 0; v < lattice_.pivot->second; ++v)
      for (Integer u = 0; u < lattice_.axis; ++u) out.emplace_back(u, v);
    return out;
  }

 private:
  int D_;
  QuadElement modulus_;
  Hnf2 lattice_;
};

/// Hecke character psi(P) = pi / eps(pi mod f) for a homomorphism
/// eps: (O/f)^* -> O^* restricting to the identity on units.
class CmHeckeCharacter {
 public:
  /// Enumerates all admissible eps, keeps those commuting with complex
  /// conjugation, and keeps the one matching the point count at the smallest
  /// good split prime. Throws CalibrationError unless exactly one survives.
  static CmHeckeCharacter calibrated(int D) {
    CmHeckeCharacter psi(D);
    const CurveQ curve = cm_curve_for(D);
    std::uint64_t p0 = 0;
    for (std::uint64_t p = 3; p0 == 0; p += 2) {
      if (curve.is_good_prime(p) && psi.is_split(p)) p0 = p;
      if (p > 100000) throw CalibrationError("no good split prime found for D=" + std::to_string(D));
    }
    const std::int64_t target = trace_of_frobenius(curve, p0).a_p;
    const QuadElement pi = psi.prime_element(p0);
    std::vector<std::map<std::size_t, std::size_t>> matching;
    for (const auto& eps : psi.candidates_) {
      if (psi.trace_with(eps, pi) == target) matching.push_back(eps);
    }
    if (matching.size() != 1) {
      throw CalibrationError("D=" + std::to_string(D) + ": " + std::to_string(matching.size()) +
                             " character normalizations match a_p at p=" + std::to_string(p0) + " (of " +
                             std::to_string(psi.candidates_.size()) + " admissible)");
    }
    psi.chosen_ = matching.front();
    psi.calibration_prime_ = p0;
    return psi;
  }

  int D() const { return order_.D(); }
  std::size_t admissible_count() const { return candidates_.size(); }
  std::uint64_t calibration_prime() const { return calibration_prime_; }

  bool is_split(std::uint64_t p) const {
    return p > 2 && p % static_cast<std::uint64_t>(order_.D()) != 0 &&
           legendre(-static_cast<std::int64_t>(order_.D()), p) == 1;
  }

  /// An element of norm p from the norm form of O, for split p.
  QuadElement prime_element(std::uint64_t p) const {
    const int D = order_.D();
    if (D == 3) {
      auto sol = cornacchia(3, p, true);
      if (!sol) throw DomainError("4p = x^2 + 3y^2 has no solution for p=" + std::to_string(p));
      return {Rational(sol->first, 2), Rational(sol->second, 2), -3};
    }
    auto sol = cornacchia(static_cast<std::uint64_t>(D), p);
    if (!sol) throw DomainError("norm form has no solution for p=" + std::to_string(p));
    return {Rational(sol->first), Rational(sol->second), -D};
  }

  /// Tr psi(P) for split p, 0 for inert p.
  std::int64_t eigenvalue(std::uint64_t p) const {
    if (!is_prime(p) || p == 2) throw DomainError("eigenvalue needs an odd prime");
    if (!is_split(p)) return 0;
    return trace_with(chosen_, prime_element(p));
  }

 private:
  explicit CmHeckeCharacter(int D) : order_(D, conductor(D)) {
    residues_ = order_.residues();
    for (std::size_t i = 0; i < residues_.size(); ++i) index_.emplace(residues_[i], i);
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      for (std::size_t j = 0; j < residues_.size(); ++j) {
        if (residue_index(element(i) * element(j)) == residue_index(order_.one())) {
          invertible_.push_back(i);
          break;
        }
      }
    }
    units_ = order_.units();
    enumerate_candidates();
  }

  // Conductors of the Hecke characters of the table curves:
  // (1+i)^3, sqrt(-2)^5, 2 sqrt(-3).
  static QuadElement conductor(int D) {
    switch (D) {
      case 1:
        return {Rational(-2), Rational(2), -1};
      case 2:
        return {Rational(0), Rational(4), -2};
      case 3:
        return {Rational(0), Rational(2), -3};
      default:
        throw UnsupportedError("no Hecke character data for D=" + std::to_string(D));
    }
  }

  QuadElement element(std::size_t i) const { return order_.from_coordinates(residues_[i]); }
  std::size_t residue_index(const QuadElement& x) const { return index_.at(order_.residue(x)); }

  std::size_t unit_index(const QuadElement& u) const {
    for (std::size_t k = 0; k < units_.size(); ++k)
      if (units_[k] == u) return k;
    throw std::logic_error("not a unit: " + u.to_string());
  }

  // eps as a map residue index -> unit index
  void enumerate_candidates() {
    std::map<std::size_t, std::size_t> unit_residue;
    for (std::size_t k = 0; k < units_.size(); ++k) {
      auto [it, inserted] = unit_residue.emplace(residue_index(units_[k]), k);
      if (!inserted) throw CalibrationError("units do not inject modulo the conductor");
    }
    // greedy generating set of (O/f)^*
    std::vector<std::size_t> gens;
    std::vector<bool> reached(residues_.size(), false);
    const std::size_t identity = residue_index(order_.one());
    auto close = [&]() {
      std::vector<std::size_t> stack;
      for (std::size_t i = 0; i < residues_.size(); ++i)
        if (reached[i]) stack.push_back(i);
      while (!stack.empty()) {
        std::size_t h = stack.back();
        stack.pop_back();
        for (std::size_t g : gens) {
          std::size_t hg = residue_index(element(h) * element(g));
          if (!reached[hg]) {
            reached[hg] = true;
            stack.push_back(hg);
          }
        }
      }
    };
    reached[identity] = true;
    for (std::size_t g : invertible_) {
      if (reached[g]) continue;
      gens.push_back(g);
      close();
    }

    std::vector<std::size_t> assignment(gens.size(), 0);
    while (true) {
      if (auto eps = extend(gens, assignment, identity, unit_residue)) candidates_.push_back(std::move(*eps));
      std::size_t k = 0;
      while (k < assignment.size() && ++assignment[k] == units_.size()) assignment[k++] = 0;
      if (k == assignment.size()) break;
    }
  }

  std::optional<std::map<std::size_t, std::size_t>> extend(const std::vector<std::size_t>& gens,
                                                           const std::vector<std::size_t>& values,
                                                           std::size_t identity,
                                                           const std::map<std::size_t, std::size_t>& unit_residue) const {
    std::map<std::size_t, std::size_t> eps{{identity, unit_index(order_.one())}};
    std::vector<std::size_t> stack{identity};
    while (!stack.empty()) {
      std::size_t h = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < gens.size(); ++j) {
        std::size_t hg = residue_index(element(h) * element(gens[j]));
        std::size_t value = unit_index(units_[eps.at(h)] * units_[values[j]]);
        auto [it, inserted] = eps.emplace(hg, value);
        if (inserted) {
          stack.push_back(hg);
        } else if (it->second != value) {
          return std::nullopt;
        }
      }
    }
    // identity on units, compatible with complex conjugation
    for (const auto& [res, k] : unit_residue)
      if (eps.at(res) != k) return std::nullopt;
    for (const auto& [res, k] : eps) {
      std::size_t conj_res = residue_index(element(res).conjugate());
      if (units_[eps.at(conj_res)] != units_[k].conjugate()) return std::nullopt;
    }
    return eps;
  }

  std::int64_t trace_with(const std::map<std::size_t, std::size_t>& eps, const QuadElement& pi) const {
    QuadElement psi = pi / units_[eps.at(residue_index(pi))];
    Rational t = psi.trace();
    if (!is_integral(t)) throw std::logic_error("non-integral trace");
    return numerator(t).convert_to<std::int64_t>();
  }

  ImaginaryOrder order_;
  std::vector<IntVec2> residues_;
  std::map<IntVec2, std::size_t> index_;
  std::vector<std::size_t> invertible_;
  std::vector<QuadElement> units_;
  std::vector<std::map<std::size_t, std::size_t>> candidates_;
  std::map<std::size_t, std::size_t> chosen_;
  std::uint64_t calibration_prime_ = 0;
};

/// For p = a^2 + b^2 with a odd: a_p = 2a, sign fixed by a + b = 1 mod 4.
inline std::int64_t gaussian_ap(std::uint64_t p) {
  if (p % 4 == 3) return 0;
  auto sol = cornacchia(1, p);
  if (!sol) throw DomainError("p=" + std::to_string(p) + " is not a sum of two squares");
  auto [a, b] = *sol;
  if (a % 2 == 0) std::swap(a, b);
  if (((a + b) % 4 + 4) % 4 != 1) a = -a;
  return 2 * a;
}

namespace detail {

inline const CmHeckeCharacter& calibrated_character(int D) {
  switch (D) {
    case 2: {
      static const CmHeckeCharacter psi = CmHeckeCharacter::calibrated(2);
      return psi;
    }
    case 3: {
      static const CmHeckeCharacter psi = CmHeckeCharacter::calibrated(3);
      return psi;
    }
    default:
      throw UnsupportedError("no calibrated character for D=" + std::to_string(D));
  }
}

}  // namespace detail

/// Automorphic-side a_p of cm_curve_for(D), independent of point counting
/// (apart from the one calibration prime for D = 2, 3).
inline std::int64_t hecke_ap_cm(int D, std::uint64_t p) {
  const CurveQ curve = cm_curve_for(D);
  if (!curve.is_good_prime(p)) throw BadReductionError("p=" + std::to_string(p) + " is bad for " + curve.to_string());
  if (D == 1) return gaussian_ap(p);
  return detail::calibrated_character(D).eigenvalue(p);
}

}  // namespace gcoh
