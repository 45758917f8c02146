#include <doctest.h>

#include "charp/crosscheck.hpp"
#include "charp/format.hpp"
#include "charp/gcd.hpp"
#include "charp/parser.hpp"
#include "charp/ratfunc.hpp"

using namespace charp;

namespace {

MultiPoly P(const char* text, const Ring& ring) { return parse_function(text, ring).num(); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalAssertion;
}

}  // namespace

TEST_CASE("ring context validation") {
  CHECK(code_of([] { Ring::create(2, 1); }) == ErrorCode::InvalidContext);
  CHECK(code_of([] { Ring::create(9, 1); }) == ErrorCode::InvalidContext);
  CHECK(code_of([] { Ring::create(3, 0); }) == ErrorCode::InvalidContext);
  CHECK(code_of([] { Ring::create(3, 5); }) == ErrorCode::InvalidContext);
  CHECK(code_of([] { Ring::create(65537, 1); }) == ErrorCode::InvalidContext);
  CHECK_NOTHROW(Ring::create(65521, 4));
  const Ring r = Ring::create(7, 1);
  CHECK(r.mul(r.inv(3), 3) == 1);
  CHECK(code_of([&] { r.inv(0); }) == ErrorCode::InverseOfZero);
  CHECK(code_of([] { require_same_ring(Ring::create(3, 1), Ring::create(5, 1)); }) == ErrorCode::RingMismatch);
}

TEST_CASE("terms are canonical in graded lex order") {
  const Ring r = Ring::create(5, 2);
  const MultiPoly f = P("y + x^2 + x*y + 3 + x", r);
  REQUIRE(f.size() == 5);
  CHECK(to_string(f) == "x^2 + x*y + x + y + 3");
  CHECK(P("x + 4*x", r).is_zero());
  CHECK(P("(x + y)^5", r) == P("x^5 + y^5", r));
}

TEST_CASE("partial derivatives reduce coefficients mod p") {
  const Ring r = Ring::create(3, 2);
  CHECK(partial_derivative(P("x^3", r), 0).is_zero());
  CHECK(partial_derivative(P("x^2*y", r), 0) == P("2*x*y", r));
  CHECK(partial_derivative(P("x^4 + x", r), 0) == P("x^3 + 1", r));
  CHECK(code_of([&] { partial_derivative(P("x", r), 2); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("p-basis decomposition and p-th roots") {
  const Ring r1 = Ring::create(3, 1);
  const auto parts = p_basis_decompose(P("x^7", r1));
  REQUIRE(parts.size() == 1);
  CHECK(parts.at(Monomial::unit(0, 1)) == P("x^2", r1));
  CHECK(p_basis_decompose(P("x^2", r1)).at(Monomial::unit(0, 2)) == P("1", r1));

  const Ring r2 = Ring::create(3, 2);
  CHECK(p_basis_decompose(P("2*x^3*y^4", r2)).at(Monomial::unit(1, 1)) == P("2*x*y", r2));

  CHECK(p_th_root(P("x^6 + 2*x^3", r1)) == P("x^2 + 2*x", r1));
  CHECK(p_th_root(P("2", r1)) == P("2", r1));
  CHECK(code_of([&] { p_th_root(P("x^2", r1)); }) == ErrorCode::NotAPthPower);
}

TEST_CASE("p-basis reconstruction property") {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (unsigned n = 1; n <= 3; ++n) {
      const Ring r = Ring::create(p, n);
      RandomSource rs(r, p * 10 + n);
      for (int t = 0; t < 40; ++t) {
        const MultiPoly f = rs.poly(3 * p, 8);
        MultiPoly sum(r);
        for (const auto& [slot, g] : p_basis_decompose(f)) sum += g.frobenius().times_monomial(slot);
        CHECK(sum == f);
        CHECK(p_th_root(f.frobenius()) == f);
      }
    }
}

TEST_CASE("exact division") {
  const Ring r = Ring::create(5, 2);
  CHECK(divexact(P("x^2 - y^2", r), P("x + y", r)) == P("x - y", r));
  CHECK_FALSE(divide_if_exact(P("x^2 + 1", r), P("x + y", r)).has_value());
  CHECK(code_of([&] { divexact(P("x^2 + 1", r), P("x", r)); }) == ErrorCode::DivisionNotExact);
  CHECK(code_of([&] { divexact(P("x", r), MultiPoly(r)); }) == ErrorCode::ZeroDivisor);
}

TEST_CASE("gcd, lcm and squarefree decomposition") {
  const Ring r = Ring::create(3, 2);
  CHECK(gcd(P("x^2*y + x*y^2", r), P("x^2 - y^2", r)) == P("x + y", r));
  CHECK(gcd(MultiPoly(r), MultiPoly(r)).is_zero());
  CHECK(lcm(P("x", r), P("x*y", r)) == P("x*y", r));

  // x^3 + 1 = (x + 1)^3 in characteristic 3; the p-th power stratum must not vanish.
  const auto sqf = squarefree_decomposition(P("(x^3 + 1)*(x + y)^2", r));
  MultiPoly prod = MultiPoly::constant(r, 1);
  for (const auto& s : sqf) prod *= s.factor.pow(s.multiplicity);
  CHECK(prod == P("(x^3 + 1)*(x + y)^2", r));

  const MultiPoly f = P("x^4*(x + y)", r);
  const MultiPoly q = pth_power_cover(f);
  CHECK(divide_if_exact(q.frobenius(), f).has_value());
  CHECK(q == P("x^3 + x^2*y", r));
}

TEST_CASE("gcd properties on random polynomials") {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned n = 1; n <= 3; ++n) {
      const Ring r = Ring::create(p, n);
      RandomSource rs(r, 100 + p + n);
      for (int t = 0; t < 30; ++t) {
        const MultiPoly c = rs.nonconstant_poly(2, 3);
        const MultiPoly a = rs.poly(3, 4) * c, b = rs.poly(3, 4) * c;
        const MultiPoly g = gcd(a, b);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(divide_if_exact(a, g).has_value());
        CHECK(divide_if_exact(b, g).has_value());
        CHECK(divide_if_exact(g, c).has_value());
        CHECK(gcd(divexact(a, g), divexact(b, g)).is_one());
      }
    }
}

TEST_CASE("coprime basis") {
  const Ring r = Ring::create(5, 2);
  const auto basis = coprime_basis({P("x*(x + 1)", r), P("x*y", r), P("(x + 1)^2", r)});
  REQUIRE(basis.size() == 3);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) CHECK(gcd(basis[i], basis[j]).is_one());
  CHECK(basis[0] == P("x", r));
}

TEST_CASE("rational function normal form") {
  const Ring r = Ring::create(5, 1);
  const RatFunc f = ratfunc_normalize(P("2*x^2 - 2", r), P("3*x - 3", r));
  CHECK(f.den().is_one());
  CHECK(f.num() == P("4*x + 4", r));
  CHECK(code_of([&] { RatFunc::fraction(P("1", r), MultiPoly(r)); }) == ErrorCode::ZeroDenominator);
  CHECK(code_of([&] { RatFunc(r).inverse(); }) == ErrorCode::InverseOfZero);
  const RatFunc g = RatFunc::fraction(P("1", r), P("2*x", r));
  CHECK(g.den().leading_coeff() == 1);
  CHECK(g * g.inverse() == RatFunc::constant(r, 1));
}

TEST_CASE("field axioms on random rational functions") {
  const Ring r = Ring::create(7, 2);
  RandomSource rs(r, 7);
  for (int t = 0; t < 60; ++t) {
    const RatFunc a = rs.ratfunc(3, 2), b = rs.ratfunc(3, 2), c = rs.ratfunc(2, 2);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a.frobenius() == a.pow(7));
    CHECK(partial_derivative(a * b, 0) == partial_derivative(a, 0) * b + a * partial_derivative(b, 0));
  }
}

TEST_CASE("exponent overflow is reported") {
  const Ring r = Ring::create(3, 1);
  const MultiPoly big = MultiPoly::monomial(r, Monomial::unit(0, Monomial::kMaxExponent / 2 + 1));
  CHECK(code_of([&] { (void)(big * big); }) == ErrorCode::ExponentOverflow);
}
