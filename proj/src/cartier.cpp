#include "charp/cartier.hpp"

#include <string>

#include "charp/error.hpp"
#include "charp/gcd.hpp"

namespace charp {

Chart::Chart(Ring ring, std::vector<MultiPoly> generators) : ring_(ring) {
  for (auto& g : generators) {
    require_same_ring(ring, g.ring());
    if (g.is_constant()) fail(ErrorCode::InvalidChart, "chart generators must be nonconstant");
    MultiPoly m = g.monic();
    for (const auto& existing : generators_)
      if (existing == m) fail(ErrorCode::InvalidChart, "chart generators must be pairwise non-associate");
    generators_.push_back(std::move(m));
  }
}

ClearedForm clear_to_pth_power(const OneForm& w) {
  const Ring& ring = w.ring();
  MultiPoly common = MultiPoly::constant(ring, 1);
  for (const auto& c : w.coeffs())
    if (!c.is_zero() && !c.den().is_one()) common = lcm(common, c.den());
  ClearedForm out{pth_power_cover(common), {}};
  const MultiPoly qp = out.q.frobenius();
  for (const auto& c : w.coeffs()) {
    if (c.is_zero())
      out.numerators.emplace_back(ring);
    else
      out.numerators.push_back(c.num() * (c.den().is_one() ? qp : divexact(qp, c.den())));
  }
  return out;
}

OneForm cartier_unchecked(const OneForm& w) {
  const Ring& ring = w.ring();
  const ClearedForm cleared = clear_to_pth_power(w);
  std::vector<RatFunc> cs;
  cs.reserve(ring.nvars());
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    MultiPoly g = p_basis_component(cleared.numerators[i], Monomial::unit(i, ring.p() - 1));
    cs.push_back(RatFunc::fraction(g, cleared.q));
  }
  return OneForm(ring, std::move(cs));
}

OneForm cartier(const OneForm& w) {
  if (!is_closed(w)) fail(ErrorCode::NotClosed, "the Cartier operator is defined on closed forms only");
  return cartier_unchecked(w);
}

OneForm gamma(const OneForm& eta) {
  const Ring& ring = eta.ring();
  std::vector<RatFunc> cs;
  cs.reserve(ring.nvars());
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    const RatFunc& g = eta.coeff(i);
    if (g.is_zero()) {
      cs.emplace_back(ring);
      continue;
    }
    cs.push_back(g.frobenius() * RatFunc(MultiPoly::monomial(ring, Monomial::unit(i, ring.p() - 1))));
  }
  return OneForm(ring, std::move(cs));
}

RatFunc antiderivative(const OneForm& w) {
  if (!is_closed(w)) fail(ErrorCode::NotClosed, "antiderivative needs a closed form");
  const Ring& ring = w.ring();
  const std::uint32_t p = ring.p();
  const ClearedForm cleared = clear_to_pth_power(w);

  // Group the terms c x^a dx_i by the shifted class b = (a + e_i) mod p. The
  // class b = 0 is gamma(C(w)); every other class integrates term-wise along
  // the first coordinate i with b_i != 0.
  std::vector<Term> primitive;
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    for (const auto& t : cleared.numerators[i].terms()) {
      Monomial shifted = t.mono * Monomial::unit(i);
      unsigned pivot = ring.nvars();
      for (unsigned j = 0; j < ring.nvars(); ++j)
        if (shifted.exps[j] % p) {
          pivot = j;
          break;
        }
      if (pivot == ring.nvars())
        fail(ErrorCode::NotExact, "the form has a nonzero Cartier image, so it is not locally exact");
      if (pivot != i) continue;  // recovered from the pivot coordinate's terms
      primitive.push_back({shifted, ring.mul(t.coeff, ring.inv(shifted.exps[i] % p))});
    }
  }
  RatFunc f = over_pth_power(MultiPoly::from_terms(ring, std::move(primitive)), cleared.q);
  ensure(d_function(f) == w, "antiderivative does not differentiate back to the input");
  return f;
}

OneForm cartier_1var_oracle(const OneForm& w) {
  const Ring& ring = w.ring();
  if (ring.nvars() != 1) fail(ErrorCode::IndexOutOfRange, "the one-variable oracle needs n = 1");
  const RatFunc& a = w.coeff(0);
  if (a.is_zero()) return OneForm(ring);
  // a = N / D = (N D^(p-1)) / D^p, and D^p is a constant for d/dx.
  MultiPoly top = a.num() * a.den().pow(ring.p() - 1);
  for (std::uint32_t k = 0; k + 1 < ring.p(); ++k) top = partial_derivative(top, 0);
  if (!is_pth_power(top)) fail(ErrorCode::NotAPthPower, "-(d/dx)^(p-1) of the cleared numerator is not a p-th power");
  return OneForm::basis(ring, 0, RatFunc::fraction(p_th_root(-top), a.den()));
}

std::optional<LogWitness> search_log_witness(const OneForm& w, const Chart& chart) {
  const Ring& ring = w.ring();
  require_same_ring(ring, chart.ring());
  const auto& gens = chart.generators();
  const std::size_t k = gens.size();
  if (k > Chart::kMaxSearchGenerators)
    fail(ErrorCode::InvalidChart, "witness search supports at most " + std::to_string(Chart::kMaxSearchGenerators) +
                                      " chart generators");

  // Clear by D = prod q_j: dlog(prod q_j^m_j) * D = sum_j m_j (D / q_j) dq_j
  // is polynomial, so w * D must be polynomial as well.
  MultiPoly big_d = MultiPoly::constant(ring, 1);
  for (const auto& g : gens) big_d *= g;
  std::vector<MultiPoly> target;
  for (const auto& c : w.coeffs()) {
    auto q = divide_if_exact(big_d, c.den());
    if (!q) return std::nullopt;
    target.push_back(c.num() * *q);
  }

  std::vector<std::vector<MultiPoly>> basis(k);
  for (std::size_t j = 0; j < k; ++j) {
    const MultiPoly cofactor = divexact(big_d, gens[j]);
    for (unsigned i = 0; i < ring.nvars(); ++i) basis[j].push_back(cofactor * partial_derivative(gens[j], i));
  }

  // Odometer over {0..p-1}^k. Adding basis[j] once more on wrap-around
  // completes p copies, which vanish in characteristic p.
  std::vector<unsigned> m(k, 0);
  std::vector<MultiPoly> sum(ring.nvars(), MultiPoly(ring));
  while (true) {
    if (sum == target) {
      MultiPoly f = MultiPoly::constant(ring, 1);
      for (std::size_t j = 0; j < k; ++j) f *= gens[j].pow(m[j]);
      LogWitness found{RatFunc(std::move(f)), m};
      ensure(dlog_function(found.f) == w, "logarithmic witness failed verification");
      return found;
    }
    std::size_t j = 0;
    for (; j < k; ++j) {
      for (unsigned i = 0; i < ring.nvars(); ++i) sum[i] += basis[j][i];
      if (++m[j] < ring.p()) break;
      m[j] = 0;
    }
    if (j == k) return std::nullopt;
  }
}

RatFunc log_witness(const OneForm& w, const Chart& chart) {
  if (chart.size() > Chart::kMaxSearchGenerators)
    fail(ErrorCode::InvalidChart, "witness search supports at most " + std::to_string(Chart::kMaxSearchGenerators) +
                                      " chart generators");
  if (!is_closed(w)) fail(ErrorCode::NotClosed, "logarithmic forms are closed");
  if (!(cartier_unchecked(w) == w)) fail(ErrorCode::NotCartierFixed, "C(w) != w, so w is not locally logarithmic");
  auto found = search_log_witness(w, chart);
  if (!found) fail(ErrorCode::NoWitnessOnChart, "no exponent vector over the chart generators gives dlog(f) = w");
  return std::move(found->f);
}

}  // namespace charp
