#pragma once

#include <utility>
#include <vector>

#include "charp/ratfunc.hpp"

namespace charp {

/// Scalar 1-form sum_i coeff(i) dx_{i+1}.
class OneForm {
 public:
  explicit OneForm(Ring ring) : ring_(ring), coeffs_(ring.nvars(), RatFunc(ring)) {}
  /// Throws IndexOutOfRange unless coeffs.size() == nvars.
  OneForm(Ring ring, std::vector<RatFunc> coeffs);

  /// f dx_{var+1}.
  static OneForm basis(Ring ring, unsigned var, RatFunc f);

  const Ring& ring() const noexcept { return ring_; }
  const RatFunc& coeff(unsigned i) const { return coeffs_.at(i); }
  const std::vector<RatFunc>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept;

  OneForm operator-() const;
  OneForm& operator+=(const OneForm& rhs);
  OneForm& operator-=(const OneForm& rhs);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const RatFunc& f, const OneForm& w);

  friend bool operator==(const OneForm&, const OneForm&) = default;

 private:
  Ring ring_;
  std::vector<RatFunc> coeffs_;
};

/// Scalar 2-form sum_{i<j} coeff(i,j) dx_{i+1} ^ dx_{j+1}; only the strict
/// upper triangle is stored.
class TwoForm {
 public:
  explicit TwoForm(Ring ring);

  const Ring& ring() const noexcept { return ring_; }
  /// Coefficient of dx_i ^ dx_j for i < j; throws IndexOutOfRange otherwise.
  const RatFunc& coeff(unsigned i, unsigned j) const { return coeffs_.at(slot(i, j)); }
  void set(unsigned i, unsigned j, RatFunc value) { coeffs_.at(slot(i, j)) = std::move(value); }
  /// Adds sign * f * dx_a ^ dx_b for any a != b.
  void accumulate(unsigned a, unsigned b, const RatFunc& f);
  bool is_zero() const noexcept;

  TwoForm operator-() const;
  TwoForm& operator+=(const TwoForm& rhs);
  TwoForm& operator-=(const TwoForm& rhs);
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator*(const RatFunc& f, const TwoForm& w);

  friend bool operator==(const TwoForm&, const TwoForm&) = default;

 private:
  std::size_t slot(unsigned i, unsigned j) const;

  Ring ring_;
  std::vector<RatFunc> coeffs_;
};

OneForm d_function(const RatFunc& f);
TwoForm d_oneform(const OneForm& w);
TwoForm wedge(const OneForm& a, const OneForm& b);
bool is_closed(const OneForm& w);
/// df / f; throws ZeroArgument for f == 0.
OneForm dlog_function(const RatFunc& f);

/// Applies the substitution x_j -> x_j^p to every coefficient (equal to the
/// coefficient-wise p-th power over F_p).
OneForm frobenius_coefficients(const OneForm& w);

}  // namespace charp
