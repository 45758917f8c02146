#include <doctest.h>

#include "charp/connections.hpp"
#include "charp/crosscheck.hpp"
#include "charp/parser.hpp"

using namespace charp;

namespace {

OneForm W(const char* text, const Ring& ring) { return parse_one_form(text, ring); }
RatFunc F(const char* text, const Ring& ring) { return parse_function(text, ring); }

RatMatrix M(const Ring& r, std::initializer_list<std::initializer_list<const char*>> rows) {
  RatMatrix m(rows.size(), rows.begin()->size(), RatFunc(r));
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* e : row) m(i, j++) = F(e, r);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("matrix inverse and determinant") {
  const Ring r = Ring::create(5, 2);
  const RatMatrix g = M(r, {{"x", "y"}, {"1", "x + 1"}});
  CHECK(determinant(g) == F("x^2 + x - y", r));
  CHECK(g * inverse(g) == identity_matrix(r, 2));
  CHECK_THROWS_AS(inverse(M(r, {{"x", "y"}, {"2*x", "2*y"}})), Error);
}

TEST_CASE("group tags") {
  CHECK(GroupTag::parse("g_m") == GroupTag::gm());
  CHECK(GroupTag::parse("aff1") == GroupTag::aff1());
  CHECK(GroupTag::parse("gl(3)").rank() == 3);
  CHECK(GroupTag::parse("gl2") == GroupTag::gl(2));
  CHECK_THROWS_AS(GroupTag::parse("so3"), Error);
  CHECK(GroupTag::gl(1).is_abelian());
  CHECK_FALSE(GroupTag::aff1().is_abelian());
}

TEST_CASE("maurer-cartan forms") {
  const Ring r = Ring::create(3, 1);
  const auto mc = maurer_cartan(M(r, {{"x", "0"}, {"0", "1"}}), GroupTag::gl(2));
  CHECK(mc(0, 0) == W("dx/x", r));
  CHECK(mc(0, 1).is_zero());
  CHECK(mc(1, 1).is_zero());
  CHECK(maurer_cartan(M(r, {{"x^2"}}), GroupTag::gm())(0, 0) == W("2*dx/x", r));
  CHECK(maurer_cartan(M(r, {{"x^2"}}), GroupTag::ga())(0, 0) == W("2*x*dx", r));
  CHECK_THROWS_AS(maurer_cartan(M(r, {{"x", "1"}, {"1", "1"}}), GroupTag::aff1()), Error);
  CHECK_THROWS_AS(maurer_cartan(M(r, {{"0"}}), GroupTag::gm()), Error);

  // For aff1 this is the true g^{-1} dg: the second entry is +f^{-1} df'.
  const Ring r2 = Ring::create(3, 2);
  const auto a = maurer_cartan(M(r2, {{"x", "y"}, {"0", "1"}}), GroupTag::aff1());
  CHECK(a(0, 0) == W("dx/x", r2));
  CHECK(a(0, 1) == W("dy/x", r2));
  CHECK(is_zero(curvature(a)));
}

TEST_CASE("flatness of maurer-cartan forms on random elements") {
  const Ring r = Ring::create(5, 2);
  RandomSource rs(r, 77);
  int checked = 0;
  while (checked < 25) {
    RatMatrix g(2, 2, RatFunc(r));
    for (auto i : {0, 1})
      for (auto j : {0, 1}) g(i, j) = rs.ratfunc(2, 1);
    if (determinant(g).is_zero()) continue;
    CHECK(is_zero(curvature(maurer_cartan(g, GroupTag::gl(2)))));
    ++checked;
  }
}

TEST_CASE("derivation p-th powers") {
  const Ring r = Ring::create(3, 1);
  const Derivation xd{r, {F("x", r)}};
  CHECK(derivation_p_power(xd) == xd);
  const Ring r2 = Ring::create(3, 2);
  CHECK(derivation_p_power(Derivation{r2, {F("1", r2), F("1", r2)}}).is_zero());
  CHECK(derivation_p_power(Derivation::coordinate(r2, 1)).is_zero());
}

TEST_CASE("brute p-curvature examples") {
  const Ring r = Ring::create(3, 1);
  CHECK(pcurvature_brute(scalar_connection(W("x*dx", r))).psi[0](0, 0) == F("x^3", r));
  CHECK(pcurvature_brute(scalar_connection(W("dx/x", r))).is_zero());
  const auto ga = pcurvature_brute(ga_connection(W("x^2*dx", r))).psi[0];
  CHECK(ga == M(r, {{"0", "2"}, {"0", "0"}}));
  CHECK(pcurvature_brute(scalar_connection(OneForm(r))).is_zero());
}

TEST_CASE("p-curvature at a vector field is p-linear") {
  const Ring r = Ring::create(3, 1);
  const auto omega = scalar_connection(W("x*dx", r));
  const Derivation xd{r, {F("x", r)}};
  CHECK(pcurvature_at(omega, xd)(0, 0) == F("x^6", r));
  CHECK(pcurvature_at(omega, Derivation::coordinate(r, 0)) == pcurvature_brute(omega).psi[0]);

  const Ring r2 = Ring::create(5, 2);
  RandomSource rs(r2, 5);
  for (int t = 0; t < 10; ++t) {
    const auto conn = scalar_connection(rs.closed_form());
    const Derivation d{r2, {rs.ratfunc(1, 0), rs.ratfunc(1, 0)}};
    CHECK(pcurvature_at(conn, d) == pcurvature_brute(conn).evaluate(d));
  }
}

TEST_CASE("abelian p-curvature formula") {
  const Ring r = Ring::create(3, 1);
  CHECK(pcurvature_abelian(W("x^2*dx", r), GroupTag::gm()) == W("(x^2 - 1)*dx", r));
  CHECK(pcurvature_abelian(W("dx/x", r), GroupTag::gm()).is_zero());
  CHECK(pcurvature_abelian(W("x^2*dx", r), GroupTag::ga()) == W("2*dx", r));
  CHECK_THROWS_AS(pcurvature_abelian(W("x*dx", r), GroupTag::aff1()), Error);

  for (std::uint32_t p : {3u, 5u})
    for (unsigned n = 1; n <= 2; ++n) {
      const Ring rr = Ring::create(p, n);
      RandomSource rs(rr, p * n);
      for (int t = 0; t < 15; ++t) {
        const OneForm w = rs.closed_form();
        const auto brute = pcurvature_brute(scalar_connection(w));
        const OneForm eta = frobenius_coefficients(pcurvature_abelian(w, GroupTag::gm()));
        for (unsigned i = 0; i < n; ++i) CHECK(brute.psi[i](0, 0) == eta.coeff(i));
      }
    }
}

TEST_CASE("rank-one oracle") {
  const Ring r = Ring::create(3, 1);
  CHECK(rank1_pcurvature_oracle(W("x*dx", r)) == F("x^3", r));
  CHECK(rank1_pcurvature_oracle(W("x^2*dx", r)) == F("x^6 + 2", r));
  CHECK_THROWS_AS(rank1_pcurvature_oracle(OneForm(Ring::create(3, 2))), Error);
}

TEST_CASE("curvature detects non-integrable connections") {
  const Ring r = Ring::create(5, 2);
  MatrixOneForm omega(1, 1, W("y*dx", r));
  CHECK_FALSE(is_zero(curvature(omega)));
  CHECK(is_zero(curvature(scalar_connection(W("dx/x + dy", r)))));
}
