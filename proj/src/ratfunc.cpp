#include "charp/ratfunc.hpp"

#include "charp/error.hpp"
#include "charp/gcd.hpp"

namespace charp {

RatFunc::RatFunc(MultiPoly poly) : num_(std::move(poly)), den_(MultiPoly::constant(num_.ring(), 1)) {}

RatFunc RatFunc::fraction(const MultiPoly& num, const MultiPoly& den) {
  require_same_ring(num.ring(), den.ring());
  if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) return RatFunc(num.ring());
  if (den.is_constant()) return RatFunc(num.scaled(num.ring().inv(den.constant_coeff())));
  const MultiPoly g = gcd(num, den);
  MultiPoly n = g.is_one() ? num : divexact(num, g);
  MultiPoly d = g.is_one() ? den : divexact(den, g);
  const Coeff scale = num.ring().inv(d.leading_coeff());
  return RatFunc(n.scaled(scale), d.scaled(scale), true);
}

RatFunc RatFunc::coprime(const MultiPoly& num, const MultiPoly& den) {
  require_same_ring(num.ring(), den.ring());
  if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) return RatFunc(num.ring());
  const Coeff scale = num.ring().inv(den.leading_coeff());
  return RatFunc(num.scaled(scale), den.scaled(scale), true);
}

RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den) { return RatFunc::fraction(num, den); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, true); }

RatFunc& RatFunc::operator+=(const RatFunc& rhs) {
  require_same_ring(ring(), rhs.ring());
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_.is_one() && rhs.den_.is_one()) {
    num_ += rhs.num_;
    return *this;
  }
  if (den_ == rhs.den_) return *this = fraction(num_ + rhs.num_, den_);
  // Henrici: only the common part of the denominators can cancel.
  const MultiPoly g = gcd(den_, rhs.den_);
  if (g.is_one()) {
    MultiPoly n = num_ * rhs.den_ + rhs.num_ * den_;
    MultiPoly d = den_ * rhs.den_;
    if (n.is_zero()) return *this = RatFunc(ring());
    return *this = RatFunc(std::move(n), std::move(d), true);
  }
  const MultiPoly d1 = divexact(den_, g), d2 = divexact(rhs.den_, g);
  MultiPoly t = num_ * d2 + rhs.num_ * d1;
  if (t.is_zero()) return *this = RatFunc(ring());
  const MultiPoly h = gcd(t, g);
  if (!h.is_one()) t = divexact(t, h);
  MultiPoly d = d1 * (h.is_one() ? rhs.den_ : divexact(rhs.den_, h));
  const Coeff scale = ring().inv(d.leading_coeff());
  return *this = RatFunc(t.scaled(scale), d.scaled(scale), true);
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs) { return *this += -rhs; }

RatFunc& RatFunc::operator*=(const RatFunc& rhs) {
  require_same_ring(ring(), rhs.ring());
  if (is_zero() || rhs.is_zero()) return *this = RatFunc(ring());
  if (den_.is_one() && rhs.den_.is_one()) {
    num_ *= rhs.num_;
    return *this;
  }
  const MultiPoly g1 = gcd(num_, rhs.den_);
  const MultiPoly g2 = gcd(rhs.num_, den_);
  MultiPoly n = (g1.is_one() ? num_ : divexact(num_, g1)) * (g2.is_one() ? rhs.num_ : divexact(rhs.num_, g2));
  MultiPoly d = (g2.is_one() ? den_ : divexact(den_, g2)) * (g1.is_one() ? rhs.den_ : divexact(rhs.den_, g1));
  const Coeff scale = ring().inv(d.leading_coeff());
  return *this = RatFunc(n.scaled(scale), d.scaled(scale), true);
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs) { return *this *= rhs.inverse(); }

RatFunc RatFunc::scaled(Coeff c) const {
  c %= ring().p();
  if (c == 0) return RatFunc(ring());
  return RatFunc(num_.scaled(c), den_, true);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(ErrorCode::InverseOfZero, "inverse of the zero rational function");
  const Coeff scale = ring().inv(num_.leading_coeff());
  return RatFunc(den_.scaled(scale), num_.scaled(scale), true);
}

RatFunc RatFunc::pow(std::uint64_t e) const {
  if (e == 0) return constant(ring(), 1);
  // Powers of coprime polynomials stay coprime; a monic den stays monic.
  return RatFunc(num_.pow(e), den_.pow(e), true);
}

RatFunc RatFunc::frobenius() const { return RatFunc(num_.frobenius(), den_.frobenius(), true); }

RatFunc partial_derivative(const RatFunc& f, unsigned var) {
  MultiPoly dn = partial_derivative(f.num(), var);
  if (f.is_polynomial()) return RatFunc(std::move(dn));
  MultiPoly dd = partial_derivative(f.den(), var);
  if (dd.is_zero()) return RatFunc::fraction(dn, f.den());
  // (n/d)' = (n'd - nd')/d^2; the result's denominator divides d^2.
  const MultiPoly& d = f.den();
  MultiPoly top = dn * d - f.num() * dd;
  if (top.is_zero()) return RatFunc(f.ring());
  const MultiPoly g = gcd(top, d);
  const MultiPoly top1 = g.is_one() ? top : divexact(top, g);
  const MultiPoly d1 = g.is_one() ? d : divexact(d, g);
  return RatFunc::fraction(top1, d1 * d);
}

RatFunc p_th_root(const RatFunc& f) { return RatFunc::fraction(p_th_root(f.num()), p_th_root(f.den())); }

RatFunc over_pth_power(const MultiPoly& numerator, const MultiPoly& q) {
  const Ring& ring = numerator.ring();
  if (numerator.is_zero()) return RatFunc(ring);
  // Peel gcd(F, Q) at most p times: each round removes up to v_q(Q) copies of
  // each factor, so the total is min(v_q(F), p * v_q(Q)).
  MultiPoly top = numerator;
  MultiPoly removed = MultiPoly::constant(ring, 1);
  for (std::uint32_t round = 0; round < ring.p(); ++round) {
    MultiPoly g = gcd(top, q);
    if (g.is_one()) break;
    top = divexact(top, g);
    removed *= g;
  }
  return RatFunc::coprime(top, divexact(q.frobenius(), removed));
}

}  // namespace charp
