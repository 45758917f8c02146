#pragma once

#include <cstdint>

#include "charp/poly.hpp"

namespace charp {

/// Rational function num/den over F_p in normal form: gcd(num, den) = 1 and
/// den monic in graded-lex order. Zero is 0/1. Two rational functions are
/// equal iff their normal forms are identical.
class RatFunc {
 public:
  explicit RatFunc(Ring ring) : num_(ring), den_(MultiPoly::constant(ring, 1)) {}
  RatFunc(MultiPoly poly);  // NOLINT(google-explicit-constructor)

  static RatFunc constant(Ring ring, std::int64_t c) { return RatFunc(MultiPoly::constant(ring, c)); }
  static RatFunc variable(Ring ring, unsigned var) { return RatFunc(MultiPoly::variable(ring, var)); }
  /// Normalizes num/den; throws ZeroDenominator when den == 0.
  static RatFunc fraction(const MultiPoly& num, const MultiPoly& den);
  /// num/den for operands already known to be coprime; only rescales den.
  static RatFunc coprime(const MultiPoly& num, const MultiPoly& den);

  const Ring& ring() const noexcept { return num_.ring(); }
  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& rhs);
  RatFunc& operator-=(const RatFunc& rhs);
  RatFunc& operator*=(const RatFunc& rhs);
  RatFunc& operator/=(const RatFunc& rhs);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  RatFunc scaled(Coeff c) const;
  /// Throws InverseOfZero on zero.
  RatFunc inverse() const;
  RatFunc pow(std::uint64_t e) const;
  /// f^p, computed as num^p / den^p without any gcd.
  RatFunc frobenius() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  RatFunc(MultiPoly num, MultiPoly den, bool /*normalized*/) : num_(std::move(num)), den_(std::move(den)) {}

  MultiPoly num_;
  MultiPoly den_;
};

/// Normal form of num/den (the explicit ratfunc_normalize operation).
RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den);

RatFunc partial_derivative(const RatFunc& f, unsigned var);

/// g with g^p = f; throws NotAPthPower.
RatFunc p_th_root(const RatFunc& f);

/// F / Q^p in normal form, cancelling only factors of Q.
RatFunc over_pth_power(const MultiPoly& numerator, const MultiPoly& q);

}  // namespace charp
