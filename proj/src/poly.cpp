#include "charp/poly.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "charp/error.hpp"

namespace charp {

namespace {

// Dense accumulation is used for products whose exponent box stays below this.
constexpr std::uint64_t kDenseLimit = 1u << 22;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exps) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void sort_grlex(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (unsigned i = 0; i < r.exps.size(); ++i) {
    std::uint64_t e = std::uint64_t{a.exps[i]} + b.exps[i];
    if (e > Monomial::kMaxExponent) fail(ErrorCode::ExponentOverflow, "exponent exceeds " + std::to_string(Monomial::kMaxExponent));
    r.exps[i] = static_cast<std::uint32_t>(e);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  ensure(b.divides(a), "monomial quotient is not exact");
  Monomial r;
  for (unsigned i = 0; i < r.exps.size(); ++i) r.exps[i] = a.exps[i] - b.exps[i];
  return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b) noexcept {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exps > b.exps;
}

MultiPoly MultiPoly::constant(Ring ring, std::int64_t c) {
  MultiPoly r(ring);
  Coeff v = ring.reduce(c);
  if (v) r.terms_.push_back({Monomial{}, v});
  return r;
}

MultiPoly MultiPoly::variable(Ring ring, unsigned var) {
  if (var >= ring.nvars())
    fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(var + 1) + " outside 1.." + std::to_string(ring.nvars()));
  return monomial(ring, Monomial::unit(var));
}

MultiPoly MultiPoly::monomial(Ring ring, const Monomial& m, Coeff c) {
  MultiPoly r(ring);
  c %= ring.p();
  if (c) r.terms_.push_back({m, c});
  return r;
}

MultiPoly MultiPoly::from_terms(Ring ring, std::vector<Term> terms) {
  sort_grlex(terms);
  MultiPoly r(ring);
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    t.coeff %= ring.p();
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = ring.add(r.terms_.back().coeff, t.coeff);
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(t);
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

Coeff MultiPoly::constant_coeff() const noexcept {
  if (terms_.empty() || !terms_.back().mono.is_one()) return 0;
  return terms_.back().coeff;
}

const Term& MultiPoly::leading_term() const {
  ensure(!terms_.empty(), "leading term of the zero polynomial");
  return terms_.front();
}

std::uint32_t MultiPoly::degree_in(unsigned var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exps[var]);
  return d;
}

unsigned MultiPoly::variable_mask() const noexcept {
  unsigned mask = 0;
  for (const auto& t : terms_)
    for (unsigned i = 0; i < Ring::kMaxVars; ++i)
      if (t.mono.exps[i]) mask |= 1u << i;
  return mask;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = ring_.neg(t.coeff);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  require_same_ring(ring_, rhs.ring_);
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = rhs.terms_.begin(), be = rhs.terms_.end();
  while (a != ae && b != be) {
    if (a->mono == b->mono) {
      Coeff c = ring_.add(a->coeff, b->coeff);
      if (c) out.push_back({a->mono, c});
      ++a, ++b;
    } else if (grlex_greater(a->mono, b->mono)) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  out.insert(out.end(), a, ae);
  out.insert(out.end(), b, be);
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a.ring_, b.ring_);
  const Ring& ring = a.ring_;
  if (a.is_zero() || b.is_zero()) return MultiPoly(ring);
  if (a.is_monomial()) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.is_monomial()) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);

  const unsigned n = ring.nvars();
  std::array<std::uint64_t, Ring::kMaxVars> extent{};
  std::uint64_t box = 1;
  for (unsigned i = 0; i < n; ++i) {
    extent[i] = std::uint64_t{a.degree_in(i)} + b.degree_in(i) + 1;
    box = box > kDenseLimit ? box : box * extent[i];
  }

  std::vector<Term> out;
  if (box <= kDenseLimit) {
    // Products are < 2^32 since p < 2^16, so 2^32 of them fit in a uint64.
    std::vector<std::uint64_t> acc(box, 0);
    auto index = [&](const Monomial& m) {
      std::uint64_t idx = 0;
      for (unsigned i = 0; i < n; ++i) idx = idx * extent[i] + m.exps[i];
      return idx;
    };
    std::vector<std::uint64_t> bidx(b.terms_.size());
    for (std::size_t j = 0; j < b.terms_.size(); ++j) bidx[j] = index(b.terms_[j].mono);
    for (const auto& ta : a.terms_) {
      const std::uint64_t ia = index(ta.mono);
      for (std::size_t j = 0; j < b.terms_.size(); ++j)
        acc[ia + bidx[j]] += std::uint64_t{ta.coeff} * b.terms_[j].coeff;
    }
    for (std::uint64_t idx = 0; idx < box; ++idx) {
      if (!acc[idx]) continue;
      Coeff c = static_cast<Coeff>(acc[idx] % ring.p());
      if (!c) continue;
      Monomial m;
      std::uint64_t rest = idx;
      for (unsigned i = n; i-- > 0;) {
        m.exps[i] = static_cast<std::uint32_t>(rest % extent[i]);
        rest /= extent[i];
      }
      out.push_back({m, c});
    }
  } else {
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        auto& slot = acc[ta.mono * tb.mono];
        slot = (slot + std::uint64_t{ta.coeff} * tb.coeff) % ring.p();
      }
    for (const auto& [m, c] : acc)
      if (c) out.push_back({m, static_cast<Coeff>(c)});
  }
  sort_grlex(out);
  MultiPoly r(ring);
  r.terms_ = std::move(out);
  return r;
}

MultiPoly MultiPoly::scaled(Coeff c) const {
  c %= ring_.p();
  if (c == 0) return MultiPoly(ring_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = ring_.mul(t.coeff, c);
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, Coeff c) const {
  c %= ring_.p();
  if (c == 0) return MultiPoly(ring_);
  MultiPoly r(ring_);
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the graded-lex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, ring_.mul(t.coeff, c)});
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_.inv(leading_coeff()));
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
  MultiPoly result = constant(ring_, 1);
  MultiPoly base = *this;
  // Peel off p-th powers via the Frobenius, which is linear-time.
  while (e) {
    std::uint64_t digit = e % ring_.p();
    for (std::uint64_t i = 0; i < digit; ++i) result *= base;
    e /= ring_.p();
    if (e) base = base.frobenius();
  }
  return result;
}

MultiPoly MultiPoly::frobenius() const {
  MultiPoly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (unsigned i = 0; i < m.exps.size(); ++i) {
      std::uint64_t e = std::uint64_t{t.mono.exps[i]} * ring_.p();
      if (e > Monomial::kMaxExponent) fail(ErrorCode::ExponentOverflow, "exponent exceeds limit in Frobenius");
      m.exps[i] = static_cast<std::uint32_t>(e);
    }
    r.terms_.push_back({m, t.coeff});
  }
  return r;
}

MultiPoly partial_derivative(const MultiPoly& f, unsigned var) {
  const Ring& ring = f.ring();
  if (var >= ring.nvars())
    fail(ErrorCode::IndexOutOfRange, "derivative index " + std::to_string(var + 1) + " outside 1.." + std::to_string(ring.nvars()));
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Coeff factor = ring.reduce(t.mono.exps[var]);
    if (!factor) continue;
    Monomial m = t.mono;
    m.exps[var] -= 1;
    out.push_back({m, ring.mul(t.coeff, factor)});
  }
  return MultiPoly::from_terms(ring, std::move(out));
}

std::optional<MultiPoly> divide_if_exact(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a.ring(), b.ring());
  const Ring& ring = a.ring();
  if (b.is_zero()) fail(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  if (a.is_zero()) return MultiPoly(ring);
  if (b.is_constant()) return a.scaled(ring.inv(b.constant_coeff()));

  for (unsigned i = 0; i < ring.nvars(); ++i)
    if (a.degree_in(i) < b.degree_in(i)) return std::nullopt;

  const Term& lead = b.leading_term();
  const Coeff lead_inv = ring.inv(lead.coeff);
  if (b.is_monomial()) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      out.push_back({t.mono / lead.mono, ring.mul(t.coeff, lead_inv)});
    }
    return MultiPoly::from_terms(ring, std::move(out));
  }

  std::map<Monomial, Coeff, GrlexGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) return std::nullopt;
    const Monomial qm = top->first / lead.mono;
    const Coeff qc = ring.mul(top->second, lead_inv);
    quotient.push_back({qm, qc});
    for (const auto& t : b.terms()) {
      Monomial m = t.mono * qm;
      Coeff delta = ring.mul(t.coeff, qc);
      auto it = rem.find(m);
      if (it == rem.end()) {
        rem.emplace(m, ring.neg(delta));
      } else {
        it->second = ring.sub(it->second, delta);
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return MultiPoly::from_terms(ring, std::move(quotient));
}

MultiPoly divexact(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_if_exact(a, b);
  if (!q) fail(ErrorCode::DivisionNotExact, "divisor does not divide dividend");
  return std::move(*q);
}

std::map<Monomial, MultiPoly> p_basis_decompose(const MultiPoly& f) {
  const Ring& ring = f.ring();
  const std::uint32_t p = ring.p();
  std::map<Monomial, std::vector<Term>> parts;
  for (const auto& t : f.terms()) {
    Monomial slot, root;
    for (unsigned i = 0; i < ring.nvars(); ++i) {
      slot.exps[i] = t.mono.exps[i] % p;
      root.exps[i] = t.mono.exps[i] / p;
    }
    // c^(1/p) = c in F_p.
    parts[slot].push_back({root, t.coeff});
  }
  std::map<Monomial, MultiPoly> out;
  for (auto& [slot, terms] : parts) out.emplace(slot, MultiPoly::from_terms(ring, std::move(terms)));
  return out;
}

MultiPoly p_basis_component(const MultiPoly& f, const Monomial& slot) {
  const Ring& ring = f.ring();
  const std::uint32_t p = ring.p();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    bool match = true;
    Monomial root;
    for (unsigned i = 0; i < ring.nvars() && match; ++i) {
      match = t.mono.exps[i] % p == slot.exps[i];
      root.exps[i] = t.mono.exps[i] / p;
    }
    if (match) out.push_back({root, t.coeff});
  }
  return MultiPoly::from_terms(f.ring(), std::move(out));
}

bool canonical_less(const MultiPoly& a, const MultiPoly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Term& s = a.terms()[i];
    const Term& t = b.terms()[i];
    if (s.mono != t.mono) return grlex_greater(s.mono, t.mono);
    if (s.coeff != t.coeff) return s.coeff < t.coeff;
  }
  return false;
}

bool is_pth_power(const MultiPoly& f) noexcept {
  const std::uint32_t p = f.ring().p();
  for (const auto& t : f.terms())
    for (auto e : t.mono.exps)
      if (e % p) return false;
  return true;
}

MultiPoly p_th_root(const MultiPoly& f) {
  if (!is_pth_power(f)) fail(ErrorCode::NotAPthPower, "some exponent is not divisible by p");
  const std::uint32_t p = f.ring().p();
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (unsigned i = 0; i < m.exps.size(); ++i) m.exps[i] = t.mono.exps[i] / p;
    out.push_back({m, t.coeff});
  }
  // Dividing every exponent by p preserves the graded-lex order.
  return MultiPoly::from_terms(f.ring(), std::move(out));
}

}  // namespace charp
