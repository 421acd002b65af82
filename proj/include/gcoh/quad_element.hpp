#pragma once

#include <cstdint>
#include <string>

#include "gcoh/arith.hpp"

namespace gcoh {

/// Exact element a + b*sqrt(D) of Q(sqrt(D)), D square-free and not 0 or 1.
///
/// For D > 0 the real embedding sends sqrt(D) to the positive root; order
/// comparisons and floor() use that embedding.
class QuadElement {
 public:
  QuadElement(Rational a, Rational b, std::int64_t D) : a_(std::move(a)), b_(std::move(b)), D_(D) {
    validate_seed(D_);
  }

  static QuadElement from_rational(Rational a, std::int64_t D) { return {std::move(a), Rational(0), D}; }
  static QuadElement sqrt_of(std::int64_t D) { return {Rational(0), Rational(1), D}; }

  static void validate_seed(std::int64_t D) {
    if (D == 0 || D == 1) throw DomainError("quadratic field seed must not be 0 or 1");
    if (!is_squarefree(D)) throw DomainError("quadratic field seed " + std::to_string(D) + " is not square-free");
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t D() const { return D_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadElement conjugate() const { return {a_, -b_, D_}; }
  Rational norm() const { return a_ * a_ - b_ * b_ * D_; }
  Rational trace() const { return 2 * a_; }

  /// Algebraic integer test: trace and norm both in Z.
  bool is_algebraic_integer() const { return is_integral(trace()) && is_integral(norm()); }

  QuadElement operator-() const { return {-a_, -b_, D_}; }

  QuadElement operator+(const QuadElement& y) const {
    check_same_field(y);
    return {a_ + y.a_, b_ + y.b_, D_};
  }
  QuadElement operator-(const QuadElement& y) const {
    check_same_field(y);
    return {a_ - y.a_, b_ - y.b_, D_};
  }
  QuadElement operator*(const QuadElement& y) const {
    check_same_field(y);
    return {a_ * y.a_ + b_ * y.b_ * D_, a_ * y.b_ + y.a_ * b_, D_};
  }
  QuadElement operator/(const QuadElement& y) const {
    check_same_field(y);
    Rational n = y.norm();
    if (n == 0) throw DomainError("division by zero in Q(sqrt(" + std::to_string(D_) + "))");
    QuadElement num = *this * y.conjugate();
    return {num.a_ / n, num.b_ / n, D_};
  }

  QuadElement operator+(const Rational& r) const { return {a_ + r, b_, D_}; }
  QuadElement operator-(const Rational& r) const { return {a_ - r, b_, D_}; }
  QuadElement operator*(const Rational& r) const { return {a_ * r, b_ * r, D_}; }
  QuadElement operator/(const Rational& r) const {
    if (r == 0) throw DomainError("division by zero");
    return {a_ / r, b_ / r, D_};
  }

  QuadElement inverse() const { return from_rational(Rational(1), D_) / *this; }

  bool operator==(const QuadElement& y) const { return D_ == y.D_ && a_ == y.a_ && b_ == y.b_; }
  bool operator!=(const QuadElement& y) const { return !(*this == y); }

  /// Sign under the real embedding; D must be positive.
  int sign() const {
    require_real();
    int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
    int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 D (never equal, sqrt(D) is irrational)
    return a_ * a_ > b_ * b_ * D_ ? sa : sb;
  }

  bool operator<(const QuadElement& y) const { return (*this - y).sign() < 0; }
  bool operator>(const QuadElement& y) const { return (*this - y).sign() > 0; }

  /// Exact floor under the real embedding.
  Integer floor() const {
    require_real();
    Integer base = gcoh::floor(a_);
    if (b_ != 0) {
      Integer n = numerator(b_);
      Integer d = denominator(b_);
      Integer root = isqrt(n * n * D_);
      // |b| sqrt(D) = sqrt(n^2 D) / d is irrational
      base += n > 0 ? root / d : -(root / d) - 1;
    }
    if ((*this - Rational(base + 1)).sign() >= 0) ++base;
    return base;
  }

  double to_double() const {
    double value = gcoh::to_double(a_);
    if (b_ != 0) {
      if (D_ < 0) throw DomainError("element of an imaginary field has no real value");
      value += gcoh::to_double(b_) * std::sqrt(static_cast<double>(D_));
    }
    return value;
  }

  std::string to_string() const {
    std::string root = "sqrt(" + std::to_string(D_) + ")";
    if (b_ == 0) return gcoh::to_string(a_);
    std::string irr = b_ == 1 ? root : (b_ == -1 ? "-" + root : gcoh::to_string(b_) + "*" + root);
    if (a_ == 0) return irr;
    return gcoh::to_string(a_) + (b_ > 0 ? "+" : "") + irr;
  }

 private:
  void check_same_field(const QuadElement& y) const {
    if (D_ != y.D_) {
      throw DomainError("mismatched quadratic fields: D=" + std::to_string(D_) + " vs D=" + std::to_string(y.D_));
    }
  }
  void require_real() const {
    if (D_ < 0) throw DomainError("imaginary quadratic field has no real embedding");
  }

  Rational a_;
  Rational b_;
  std::int64_t D_;
};

inline QuadElement q_add(const QuadElement& x, const QuadElement& y) { return x + y; }
inline QuadElement q_mul(const QuadElement& x, const QuadElement& y) { return x * y; }
inline Rational q_norm(const QuadElement& x) { return x.norm(); }

/// Generator of the ring of integers of a real quadratic field:
/// (1+sqrt(D))/2 when D = 1 mod 4, sqrt(D) otherwise.
inline QuadElement omega_of(std::int64_t D) {
  if (D <= 1) throw DomainError("omega_of requires D > 1, got " + std::to_string(D));
  QuadElement::validate_seed(D);
  if (D % 4 == 1) return {Rational(1, 2), Rational(1, 2), D};
  return QuadElement::sqrt_of(D);
}

}  // namespace gcoh
