#include <doctest.h>

#include "charp/cartier.hpp"
#include "charp/crosscheck.hpp"
#include "charp/parser.hpp"

using namespace charp;

namespace {

OneForm W(const char* text, const Ring& ring) { return parse_one_form(text, ring); }
RatFunc F(const char* text, const Ring& ring) { return parse_function(text, ring); }

template <class Fn>
ErrorCode code_of(Fn&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalAssertion;
}

}  // namespace

TEST_CASE("cartier on small examples") {
  const Ring r = Ring::create(3, 1);
  CHECK(cartier(W("x^2*dx", r)) == W("dx", r));
  CHECK(cartier(W("dx/x", r)) == W("dx/x", r));
  CHECK(cartier(W("x*dx", r)).is_zero());
  const Ring r2 = Ring::create(3, 2);
  CHECK(cartier(W("x^3*y^2*dy", r2)) == W("x*dy", r2));
  CHECK(code_of([&] { cartier(W("y*dx", r2)); }) == ErrorCode::NotClosed);
}

TEST_CASE("one-variable oracle, including Wilson's case") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const Ring r = Ring::create(p, 1);
    const OneForm w = OneForm::basis(r, 0, RatFunc::variable(r, 0).pow(p - 1));
    CHECK(cartier(w) == W("dx", r));
    CHECK(cartier_1var_oracle(w) == W("dx", r));
  }
  CHECK(code_of([] { cartier_1var_oracle(OneForm(Ring::create(3, 2))); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("cartier identities on random input") {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned n = 1; n <= 2; ++n) {
      const Ring r = Ring::create(p, n);
      RandomSource rs(r, 31 * p + n);
      for (int t = 0; t < 25; ++t) {
        const RatFunc f = rs.ratfunc(4, 2);
        CHECK(cartier(d_function(f)).is_zero());
        const RatFunc u = rs.unit(2);
        CHECK(cartier(dlog_function(u)) == dlog_function(u));
        const OneForm eta = rs.form(2, 1);
        CHECK(cartier(gamma(eta)) == eta);
        const OneForm w = rs.closed_form();
        const RatFunc h = rs.ratfunc(1, 1);
        CHECK(cartier(h.frobenius() * w) == h * cartier(w));
        CHECK(cartier(w + w) == cartier(w) + cartier(w));
      }
    }
}

TEST_CASE("clearing to a p-th power denominator") {
  const Ring r = Ring::create(3, 2);
  const OneForm w = W("dx/(x*y^4) + dy/(x + y)", r);
  const ClearedForm c = clear_to_pth_power(w);
  for (unsigned i = 0; i < 2; ++i) CHECK(RatFunc::fraction(c.numerators[i], c.q.pow(3)) == w.coeff(i));
}

TEST_CASE("antiderivative") {
  const Ring r = Ring::create(3, 1);
  CHECK(antiderivative(W("x*dx", r)) == F("2*x^2", r));
  CHECK(code_of([&] { antiderivative(W("x^2*dx", r)); }) == ErrorCode::NotExact);
  const Ring r2 = Ring::create(5, 2);
  RandomSource rs(r2, 9);
  for (int t = 0; t < 30; ++t) {
    const OneForm w = d_function(rs.ratfunc(4, 2));
    CHECK(d_function(antiderivative(w)) == w);
  }
  CHECK(code_of([&] { antiderivative(W("y*dx", r2)); }) == ErrorCode::NotClosed);
}

TEST_CASE("logarithmic witnesses") {
  const Ring r = Ring::create(3, 1);
  CHECK(log_witness(W("2*dx/x", r), Chart(r, {F("x", r).num()})) == F("x^2", r));
  const Chart two(r, {F("x", r).num(), F("x + 1", r).num()});
  CHECK(log_witness(W("dx/x - dx/(x + 1)", r), two) == F("x*(x + 1)^2", r));
  CHECK(code_of([&] { log_witness(W("x*dx", r), Chart(r, {F("x", r).num()})); }) == ErrorCode::NotCartierFixed);
  CHECK(code_of([&] { log_witness(W("dx/(x + 2)", r), Chart(r, {F("x", r).num()})); }) ==
        ErrorCode::NoWitnessOnChart);
  CHECK(code_of([&] { Chart(r, {F("x", r).num(), F("2*x", r).num()}); }) == ErrorCode::InvalidChart);
  CHECK(code_of([&] { Chart(r, {F("1", r).num()}); }) == ErrorCode::InvalidChart);
}

TEST_CASE("witness search recovers constructed logarithms") {
  const Ring r = Ring::create(5, 2);
  RandomSource rs(r, 4);
  const std::vector<MultiPoly> gens = {F("x", r).num(), F("y", r).num(), F("x + y + 1", r).num()};
  for (int t = 0; t < 20; ++t) {
    RatFunc f = RatFunc::constant(r, 1);
    for (const auto& g : gens) f *= RatFunc(g).pow(rs.below(5));
    const OneForm w = dlog_function(f);
    const RatFunc found = log_witness(w, Chart(r, gens));
    CHECK(dlog_function(found) == w);
  }
}
