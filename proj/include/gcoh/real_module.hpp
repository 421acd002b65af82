#pragma once

// Finitely generated subgroups of R with generators in Q or Q(sqrt(D)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcoh/lattice.hpp"
#include "gcoh/quad_element.hpp"

namespace gcoh {

/// Z-module Z*g1 + ... + Z*gk inside Q(sqrt(D)) (or inside Q).
///
/// The stored generators are a canonical Z-basis: an optional positive
/// rational g1 followed by an optional element g2 with positive sqrt(D)
/// coordinate, reduced so that 0 <= rational part of g2 < g1.
class RealModule {
 public:
  /// Module generated by rationals only.
  static RealModule rational(const std::vector<Rational>& generators) {
    std::vector<QuadCoords> coords;
    for (const auto& g : generators) coords.push_back({g, Rational(0)});
    return RealModule(std::nullopt, coords);
  }

  RealModule(std::int64_t D, const std::vector<QuadElement>& generators) : D_(D) {
    QuadElement::validate_seed(D);
    if (D <= 0) throw DomainError("RealModule needs a real quadratic field");
    std::vector<QuadCoords> coords;
    for (const auto& g : generators) {
      if (g.D() != D) throw DomainError("generator " + g.to_string() + " is not in Q(sqrt(" + std::to_string(D) + "))");
      coords.push_back({g.a(), g.b()});
    }
    canonicalize(coords);
  }

  /// Ambient field seed, or nullopt for the "rational" marker.
  std::optional<std::int64_t> declared_field() const { return D_; }

  /// Field actually needed by the generators (nullopt when all are rational).
  std::optional<std::int64_t> effective_field() const {
    if (basis_.pivot) return D_;
    return std::nullopt;
  }

  int rank() const { return basis_.rank(); }

  /// Canonical basis as (rational part, sqrt(D) part) pairs.
  std::vector<std::pair<Rational, Rational>> basis() const {
    std::vector<std::pair<Rational, Rational>> out;
    if (basis_.axis != 0) out.emplace_back(Rational(basis_.axis) / scale_, Rational(0));
    if (basis_.pivot) out.emplace_back(Rational(basis_.pivot->first) / scale_, Rational(basis_.pivot->second) / scale_);
    return out;
  }

  /// Canonical basis as field elements; needs a declared quadratic field.
  std::vector<QuadElement> generators() const {
    if (!D_) throw DomainError("rational module has no quadratic field to express generators in");
    std::vector<QuadElement> out;
    for (const auto& [a, b] : basis()) out.emplace_back(a, b, *D_);
    return out;
  }

  /// Exact coordinates of (a, b) in the canonical basis, if they are integers.
  std::optional<IntVec2> integer_coordinates(const Rational& a, const Rational& b) const {
    Rational sa = a * scale_, sb = b * scale_;
    if (!is_integral(sa) || !is_integral(sb)) return std::nullopt;
    return basis_.coordinates({numerator(sa), numerator(sb)});
  }

  /// Same canonical basis (independent of mutual containment).
  bool same_canonical_form(const RealModule& other) const { return basis() == other.basis(); }

  /// Module generated by x * g over the generators g.
  RealModule scaled_by(const QuadElement& x) const {
    if (!D_ && !x.is_rational()) {
      return RealModule(x.D(), scaled_generators(x));
    }
    if (D_ && x.D() != *D_) {
      if (x.is_rational()) return RealModule(*D_, scaled_generators(QuadElement::from_rational(x.a(), *D_)));
      throw DomainError("scaling factor lives in a different quadratic field");
    }
    if (!D_) {
      std::vector<Rational> gens;
      for (const auto& [a, b] : basis()) gens.push_back(a * x.a());
      return rational(gens);
    }
    return RealModule(*D_, scaled_generators(x));
  }

  std::string to_string() const {
    auto gens = basis();
    if (gens.empty()) return "0";
    std::string out;
    for (const auto& [a, b] : gens) {
      if (!out.empty()) out += " + ";
      std::string g = D_ ? QuadElement(a, b, *D_).to_string() : gcoh::to_string(a);
      out += g == "1" ? "Z" : "Z*(" + g + ")";
    }
    return out;
  }

 private:
  struct QuadCoords {
    Rational a;
    Rational b;
  };

  RealModule(std::optional<std::int64_t> D, const std::vector<QuadCoords>& coords) : D_(D) { canonicalize(coords); }

  std::vector<QuadElement> scaled_generators(const QuadElement& x) const {
    std::vector<QuadElement> out;
    for (const auto& [a, b] : basis()) out.push_back(QuadElement(a, b, x.D()) * x);
    return out;
  }

  void canonicalize(const std::vector<QuadCoords>& coords) {
    Integer common = 1;
    for (const auto& c : coords) {
      common = boost::multiprecision::lcm(common, denominator(c.a));
      common = boost::multiprecision::lcm(common, denominator(c.b));
    }
    std::vector<IntVec2> vectors;
    for (const auto& c : coords) vectors.emplace_back(numerator(c.a * common), numerator(c.b * common));
    basis_ = hnf2(std::move(vectors));
    scale_ = Rational(common);
  }

  std::optional<std::int64_t> D_;
  Hnf2 basis_;
  Rational scale_{1};
};

/// True iff N is a submodule of M. Throws DomainError when both modules need
/// irrational generators from different quadratic fields.
inline bool module_contains(const RealModule& M, const RealModule& N) {
  auto fm = M.effective_field();
  auto fn = N.effective_field();
  if (fm && fn && *fm != *fn) {
    throw DomainError("incomparable ambient fields Q(sqrt(" + std::to_string(*fm) + ")) and Q(sqrt(" +
                      std::to_string(*fn) + "))");
  }
  for (const auto& [a, b] : N.basis()) {
    if (!M.integer_coordinates(a, b)) return false;
  }
  return true;
}

inline bool module_equal(const RealModule& M, const RealModule& N) {
  return module_contains(M, N) && module_contains(N, M);
}

}  // namespace gcoh
