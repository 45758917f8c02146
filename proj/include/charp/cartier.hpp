#pragma once

#include <optional>
#include <vector>

#include "charp/forms.hpp"

namespace charp {

/// Zariski chart of affine space: the complement of the zero loci of the
/// inverted generators. Generators are stored monic; the caller asserts
/// irreducibility, the constructor checks they are nonconstant and pairwise
/// non-associate.
class Chart {
 public:
  static constexpr std::size_t kMaxSearchGenerators = 6;

  explicit Chart(Ring ring) : ring_(ring) {}
  /// Throws InvalidChart on constant or repeated generators.
  Chart(Ring ring, std::vector<MultiPoly> generators);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<MultiPoly>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  Ring ring_;
  std::vector<MultiPoly> generators_;
};

/// A form written as sum_i numerators[i] / q^p dx_i with polynomial numerators.
struct ClearedForm {
  MultiPoly q;
  std::vector<MultiPoly> numerators;
};

/// Clears all denominators of w to a single p-th power q^p.
ClearedForm clear_to_pth_power(const OneForm& w);

/// Cartier operator on a closed 1-form; throws NotClosed. The result is
/// returned in the coordinates of w (the Frobenius twist is trivial over F_p).
OneForm cartier(const OneForm& w);
/// Cartier extraction without the closedness check, for callers that
/// already established it.
OneForm cartier_unchecked(const OneForm& w);

/// Right inverse of the Cartier operator: g dx_i -> g^p x_i^(p-1) dx_i.
OneForm gamma(const OneForm& eta);

/// f with df = w, for closed w with C(w) = 0. Throws NotClosed or NotExact.
RatFunc antiderivative(const OneForm& w);

/// One-variable check of C via C(a dx) = (-d^(p-1) a)^(1/p) dx, computed on
/// numerators cleared with the plain denominator. Throws IndexOutOfRange
/// unless n = 1 and NotAPthPower if the identity fails (never on valid input).
OneForm cartier_1var_oracle(const OneForm& w);

struct LogWitness {
  RatFunc f;
  std::vector<unsigned> exponents;  // one per chart generator, each in [0, p)
};

/// Exhaustive search for exponents m in {0..p-1}^k with
/// dlog(prod q_j^m_j) = w. No precondition checks.
std::optional<LogWitness> search_log_witness(const OneForm& w, const Chart& chart);

/// Unit f on the chart with dlog(f) = w. Throws NotClosed, NotCartierFixed,
/// InvalidChart (more than kMaxSearchGenerators generators) or
/// NoWitnessOnChart.
RatFunc log_witness(const OneForm& w, const Chart& chart);

}  // namespace charp
