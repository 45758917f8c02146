#include "charp/gcd.hpp"

#include <algorithm>
#include <bit>

#include "charp/error.hpp"

namespace charp {

namespace {

using Dense = std::vector<Coeff>;  // low degree first

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense to_dense(const MultiPoly& f, unsigned var) {
  Dense out(f.is_zero() ? 0 : f.degree_in(var) + 1, 0);
  for (const auto& t : f.terms()) out[t.mono.exps[var]] = t.coeff;
  return out;
}

MultiPoly from_dense(const Ring& ring, const Dense& a, unsigned var) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) terms.push_back({Monomial::unit(var, static_cast<std::uint32_t>(i)), a[i]});
  return MultiPoly::from_terms(ring, std::move(terms));
}

// a mod b in place; b nonzero and trimmed.
void dense_rem(const Ring& ring, Dense& a, const Dense& b) {
  const Coeff inv_lead = ring.inv(b.back());
  while (a.size() >= b.size()) {
    const Coeff q = ring.mul(a.back(), inv_lead);
    const std::size_t shift = a.size() - b.size();
    if (q)
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ring.sub(a[shift + i], ring.mul(q, b[i]));
    a.pop_back();
    trim(a);
  }
}

MultiPoly univariate_gcd(const MultiPoly& f, const MultiPoly& g, unsigned var) {
  const Ring& ring = f.ring();
  Dense a = to_dense(f, var), b = to_dense(g, var);
  trim(a), trim(b);
  while (!b.empty()) {
    dense_rem(ring, a, b);
    std::swap(a, b);
  }
  return from_dense(ring, a, var).monic();
}

// Coefficients of f as a polynomial in var (index = degree), var erased.
std::vector<MultiPoly> coefficients_in(const MultiPoly& f, unsigned var) {
  std::vector<std::vector<Term>> buckets(f.is_zero() ? 0 : f.degree_in(var) + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.exps[var] = 0;
    buckets[t.mono.exps[var]].push_back({m, t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(f.ring(), std::move(b)));
  return out;
}

MultiPoly from_coefficients(const Ring& ring, const std::vector<MultiPoly>& cs, unsigned var) {
  MultiPoly out(ring);
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (!cs[k].is_zero()) out += cs[k].times_monomial(Monomial::unit(var, static_cast<std::uint32_t>(k)));
  return out;
}

void trim(std::vector<MultiPoly>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

MultiPoly gcd_of_list(std::vector<MultiPoly> items, const Ring& ring) {
  std::erase_if(items, [](const MultiPoly& m) { return m.is_zero(); });
  if (items.empty()) return MultiPoly(ring);
  std::sort(items.begin(), items.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.size() < b.size(); });
  MultiPoly g = items.front().monic();
  for (std::size_t i = 1; i < items.size() && !g.is_one(); ++i) g = gcd(g, items[i]);
  return g;
}

MultiPoly monomial_gcd(const Monomial& m, const MultiPoly& f) {
  Monomial low = m;
  for (const auto& t : f.terms())
    for (unsigned i = 0; i < low.exps.size(); ++i) low.exps[i] = std::min(low.exps[i], t.mono.exps[i]);
  return MultiPoly::monomial(f.ring(), low);
}

// Sparse pseudo-remainder of a by b in R[var]; a and b trimmed, b nonzero.
std::vector<MultiPoly> pseudo_remainder(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b) {
  const std::size_t db = b.size() - 1;
  const MultiPoly& lead_b = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const MultiPoly lead_a = a.back();
    if (!lead_b.is_one())
      for (auto& c : a) c *= lead_b;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead_a * b[i];
    ensure(a.back().is_zero(), "pseudo-remainder failed to cancel the leading coefficient");
    trim(a);
  }
  return a;
}

std::vector<MultiPoly> primitive_part(std::vector<MultiPoly> a, const Ring& ring) {
  MultiPoly c = gcd_of_list(a, ring);
  if (!c.is_one())
    for (auto& x : a) x = divexact(x, c);
  return a;
}

// gcd of two polynomials that are primitive in var and both involve var.
MultiPoly primitive_prs_gcd(const MultiPoly& f, const MultiPoly& g, unsigned var) {
  const Ring& ring = f.ring();
  auto a = coefficients_in(f, var);
  auto b = coefficients_in(g, var);
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    auto r = pseudo_remainder(a, b);
    if (r.empty()) return from_coefficients(ring, b, var).monic();
    if (r.size() == 1) return MultiPoly::constant(ring, 1);
    a = std::move(b);
    b = primitive_part(std::move(r), ring);
  }
}

}  // namespace

MultiPoly content_in(const MultiPoly& f, unsigned var) {
  return gcd_of_list(coefficients_in(f, var), f.ring());
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a.ring(), b.ring());
  const Ring& ring = a.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(ring, 1);
  if (a == b) return a.monic();
  if (a.is_monomial()) return monomial_gcd(a.terms()[0].mono, b);
  if (b.is_monomial()) return monomial_gcd(b.terms()[0].mono, a);

  const unsigned ma = a.variable_mask(), mb = b.variable_mask();
  if ((ma & mb) == 0) return MultiPoly::constant(ring, 1);
  const unsigned all = ma | mb;
  const unsigned var = static_cast<unsigned>(std::bit_width(all) - 1);
  if (std::popcount(all) == 1) return univariate_gcd(a, b, var);

  if (!(ma & (1u << var))) return gcd(a, content_in(b, var));
  if (!(mb & (1u << var))) return gcd(content_in(a, var), b);

  const MultiPoly ca = content_in(a, var), cb = content_in(b, var);
  const MultiPoly pa = ca.is_one() ? a : divexact(a, ca);
  const MultiPoly pb = cb.is_one() ? b : divexact(b, cb);
  const MultiPoly c = gcd(ca, cb);
  return (c * primitive_prs_gcd(pa, pb, var)).monic();
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring());
  MultiPoly g = gcd(a, b);
  return (divexact(a, g) * b).monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const MultiPoly& f) {
  std::vector<SquarefreeFactor> out;
  if (f.is_constant()) return out;
  const Ring& ring = f.ring();
  const MultiPoly monic_f = f.monic();

  MultiPoly c = monic_f;
  bool any_derivative = false;
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    MultiPoly di = partial_derivative(monic_f, i);
    if (di.is_zero()) continue;
    any_derivative = true;
    c = gcd(c, di);
    if (c.is_one()) break;
  }
  if (!any_derivative) {
    for (auto& s : squarefree_decomposition(p_th_root(monic_f)))
      out.push_back({std::move(s.factor), s.multiplicity * ring.p()});
    return out;
  }

  // Factors whose multiplicity is prime to p are peeled off one power per
  // round; what remains in c afterwards is a p-th power.
  MultiPoly w = divexact(monic_f, c);
  for (unsigned i = 1; !w.is_constant(); ++i) {
    MultiPoly y = gcd(w, c);
    MultiPoly z = divexact(w, y);
    if (!z.is_constant()) out.push_back({z.monic(), i});
    w = y;
    c = divexact(c, y);
  }
  if (!c.is_constant()) {
    for (auto& s : squarefree_decomposition(p_th_root(c.monic())))
      out.push_back({std::move(s.factor), s.multiplicity * ring.p()});
  }
  std::sort(out.begin(), out.end(),
            [](const SquarefreeFactor& a, const SquarefreeFactor& b) { return a.multiplicity < b.multiplicity; });
  return out;
}

MultiPoly pth_power_cover(const MultiPoly& f) {
  const Ring& ring = f.ring();
  MultiPoly q = MultiPoly::constant(ring, 1);
  for (const auto& s : squarefree_decomposition(f)) q *= s.factor.pow((s.multiplicity + ring.p() - 1) / ring.p());
  return q;
}

std::vector<MultiPoly> coprime_basis(const std::vector<MultiPoly>& polys) {
  std::vector<MultiPoly> work;
  for (const auto& f : polys)
    for (auto& s : squarefree_decomposition(f)) work.push_back(std::move(s.factor));

  // Split any two members sharing a factor g into a/g, g, b/g until the list
  // is pairwise coprime. Total degree drops or stays put with fewer members,
  // so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
        const MultiPoly g = gcd(work[i], work[j]);
        if (g.is_one()) continue;
        MultiPoly a = divexact(work[i], g), b = divexact(work[j], g);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
        work.push_back(g);
        if (!a.is_constant()) work.push_back(a.monic());
        if (!b.is_constant()) work.push_back(b.monic());
        changed = true;
      }
  }
  std::sort(work.begin(), work.end(), canonical_less);
  return work;
}

}  // namespace charp
