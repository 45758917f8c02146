#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "charp/field.hpp"

namespace charp {

/// Exponent vector. Slots at or beyond the ring's variable count stay zero.
struct Monomial {
  static constexpr std::uint32_t kMaxExponent = 1u << 24;

  std::array<std::uint32_t, Ring::kMaxVars> exps{};

  static Monomial unit(unsigned var, std::uint32_t power = 1) {
    Monomial m;
    m.exps[var] = power;
    return m;
  }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  bool is_one() const noexcept { return degree() == 0; }
  bool divides(const Monomial& other) const noexcept {
    for (unsigned i = 0; i < exps.size(); ++i)
      if (exps[i] > other.exps[i]) return false;
    return true;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Product of monomials; throws ExponentOverflow past kMaxExponent.
Monomial operator*(const Monomial& a, const Monomial& b);
/// Quotient a / b; requires b.divides(a).
Monomial operator/(const Monomial& a, const Monomial& b);

/// Graded lexicographic order with x1 > x2 > ... ; true when a comes first.
bool grlex_greater(const Monomial& a, const Monomial& b) noexcept;

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex_greater(a, b); }
};

struct Term {
  Monomial mono;
  Coeff coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over F_p. Terms are kept sorted in
/// descending graded-lex order, with distinct monomials and no zero
/// coefficients, so structural equality is mathematical equality.
class MultiPoly {
 public:
  explicit MultiPoly(Ring ring) : ring_(ring) {}

  static MultiPoly constant(Ring ring, std::int64_t c);
  /// x_{var+1}; throws IndexOutOfRange when var >= nvars.
  static MultiPoly variable(Ring ring, unsigned var);
  static MultiPoly monomial(Ring ring, const Monomial& m, Coeff c = 1);
  /// Canonicalizes arbitrary term lists (sorts, merges, drops zeros).
  static MultiPoly from_terms(Ring ring, std::vector<Term> terms);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const noexcept { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Constant term (0 for the zero polynomial).
  Coeff constant_coeff() const noexcept;

  /// Leading term in graded-lex order; the polynomial must be nonzero.
  const Term& leading_term() const;
  Coeff leading_coeff() const { return leading_term().coeff; }

  std::uint64_t total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  std::uint32_t degree_in(unsigned var) const noexcept;
  /// Bit i is set iff x_{i+1} occurs.
  unsigned variable_mask() const noexcept;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(Coeff c) const;
  MultiPoly times_monomial(const Monomial& m, Coeff c = 1) const;
  /// Divides by the leading coefficient; zero stays zero.
  MultiPoly monic() const;
  MultiPoly pow(std::uint64_t e) const;
  /// f^p. Over F_p this is the substitution x_j -> x_j^p.
  MultiPoly frobenius() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

/// Deterministic total order for sorting: degree, then term count, then
/// the term sequence.
bool canonical_less(const MultiPoly& a, const MultiPoly& b);

/// d f / d x_{var+1}; throws IndexOutOfRange when var >= nvars.
MultiPoly partial_derivative(const MultiPoly& f, unsigned var);

/// Exact quotient a / b, or nullopt when b does not divide a.
/// Throws ZeroDivisor when b == 0.
std::optional<MultiPoly> divide_if_exact(const MultiPoly& a, const MultiPoly& b);
/// Exact quotient; throws DivisionNotExact or ZeroDivisor.
MultiPoly divexact(const MultiPoly& a, const MultiPoly& b);

/// Decomposition f = sum over slots s in {0..p-1}^n of g_s^p * x^s.
/// Only nonzero components are returned.
std::map<Monomial, MultiPoly> p_basis_decompose(const MultiPoly& f);
/// The single component g_slot of p_basis_decompose.
MultiPoly p_basis_component(const MultiPoly& f, const Monomial& slot);

bool is_pth_power(const MultiPoly& f) noexcept;
/// g with g^p = f; throws NotAPthPower when some exponent is not divisible by p.
MultiPoly p_th_root(const MultiPoly& f);

}  // namespace charp
