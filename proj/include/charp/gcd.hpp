#pragma once

#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Monic greatest common divisor over F_p, computed exactly by recursive
/// primitive remainder sequences. gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
/// Monic least common multiple; zero if either argument is zero.
MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

/// Monic gcd of the coefficients of f viewed as a polynomial in x_{var+1}.
MultiPoly content_in(const MultiPoly& f, unsigned var);

struct SquarefreeFactor {
  MultiPoly factor;
  unsigned multiplicity;
};

/// f = lc(f) * prod factor^multiplicity with monic, squarefree, pairwise
/// coprime factors (sorted by multiplicity). Empty for constants.
std::vector<SquarefreeFactor> squarefree_decomposition(const MultiPoly& f);

/// Monic Q such that f divides Q^p, with each squarefree stratum of
/// multiplicity m raised to ceil(m / p).
MultiPoly pth_power_cover(const MultiPoly& f);

/// Pairwise coprime, squarefree, monic polynomials whose products give the
/// radicals of all inputs (a gcd-free basis). Sorted by canonical_less.
std::vector<MultiPoly> coprime_basis(const std::vector<MultiPoly>& polys);

}  // namespace charp
