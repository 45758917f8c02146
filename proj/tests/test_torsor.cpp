#include <doctest.h>

#include "charp/crosscheck.hpp"
#include "charp/parser.hpp"
#include "charp/torsor.hpp"

using namespace charp;

namespace {

OneForm W(const char* text, const Ring& ring) { return parse_one_form(text, ring); }
RatFunc F(const char* text, const Ring& ring) { return parse_function(text, ring); }
Chart C(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<MultiPoly> g;
  for (const char* s : gens) g.push_back(F(s, r).num());
  return Chart(r, std::move(g));
}

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

TEST_CASE("mu_p classification") {
  const Ring r = Ring::create(3, 1);
  auto v = classify_mu_p(W("dx/x", r), {C(r, {"x"})});
  CHECK(v.accepted);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].f == F("x", r));
  CHECK(v.pcurv_certificate->is_zero());

  v = classify_mu_p(W("x*dx", r), {C(r, {"x"})});
  CHECK_FALSE(v.accepted);
  CHECK(v.reason == VerdictReason::CartierConditionFailed);
  CHECK_FALSE(v.pcurv_certificate->is_zero());

  v = classify_mu_p(W("2*dx/x", r), {C(r, {"x"})});
  CHECK(v.witnesses.at(0).f == F("x^2", r));

  const Ring r2 = Ring::create(3, 2);
  CHECK(classify_mu_p(W("y*dx", r2), {}).reason == VerdictReason::NotClosed);
}

TEST_CASE("alpha_p classification") {
  const Ring r = Ring::create(3, 1);
  auto v = classify_alpha_p(W("x*dx", r));
  CHECK(v.accepted);
  CHECK(*v.exact_witness == F("2*x^2", r));
  v = classify_alpha_p(W("dx/x", r));
  CHECK(v.reason == VerdictReason::CartierConditionFailed);
}

TEST_CASE("aff1 classification") {
  const Ring r = Ring::create(3, 1);
  CHECK(classify_aff1(W("dx/x", r), W("dx", r), {C(r, {"x"})}).accepted);
  auto v = classify_aff1(W("dx/x", r), W("x*dx", r), {C(r, {"x"})});
  CHECK(v.reason == VerdictReason::ConditionThreeFailed);
  CHECK(classify_aff1(W("x*dx", r), W("dx", r), {C(r, {"x"})}).reason == VerdictReason::CartierConditionFailed);

  const Ring r2 = Ring::create(3, 2);
  CHECK(classify_aff1(W("dx/x", r2), W("y*dx", r2), {}).reason == VerdictReason::CurvatureNonzero);

  // A supplied witness must be a unit on its chart with the right logarithm.
  CHECK(code_of([&] { classify_aff1(W("dx/x", r), W("dx", r), {}, {{C(r, {"x"}), F("x + 1", r)}}); }) ==
        ErrorCode::InconsistentWitnesses);
  CHECK(code_of([&] { classify_aff1(W("dx/x", r), W("dx", r), {}, {{C(r, {"x"}), F("x^2", r)}}); }) ==
        ErrorCode::InconsistentWitnesses);
  v = classify_aff1(W("dx/x", r), W("dx", r), {}, {{C(r, {"x"}), F("x", r)}});
  CHECK(v.accepted);
}

TEST_CASE("derived charts split denominators by residue") {
  const Ring r = Ring::create(5, 1);
  // Denominator x^2 + 1 = (x + 2)(x + 3) mod 5, residues 1 and 3.
  const OneForm w = dlog_function(F("(x + 2)*(x + 3)^3", r));
  const Chart c = derived_chart({w});
  CHECK(c.size() == 2);
  CHECK(classify_mu_p(w, {}).witnesses.size() == 1);
}

TEST_CASE("mu_p verdict agrees with brute p-curvature") {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned n = 1; n <= 2; ++n) {
      const Ring r = Ring::create(p, n);
      RandomSource rs(r, 1000 + p * n);
      for (int t = 0; t < 20; ++t) {
        const OneForm w = t % 2 ? dlog_function(rs.unit(2)) : rs.closed_form();
        const Verdict v = classify_mu_p(w, {});
        CHECK(v.accepted == pcurvature_brute(scalar_connection(w)).is_zero());
        if (t % 2) CHECK_FALSE(v.witnesses.empty());
      }
    }
}

TEST_CASE("boundary torsors") {
  const Ring r = Ring::create(3, 1);
  RatMatrix g(1, 1, F("2*x^2", r));
  auto t = boundary_torsor(g, GroupTag::ga());
  CHECK(t.kind == TorsorKind::AlphaP);
  CHECK(t.equations.at(0).rhs == F("2*x^2", r));
  CHECK(t.form_data.at(0) == W("x*dx", r));

  RatMatrix a(2, 2, RatFunc(r));
  a(0, 0) = F("x", r);
  a(0, 1) = F("x^2", r);
  a(1, 1) = F("1", r);
  t = boundary_torsor(a, GroupTag::aff1());
  CHECK(t.equations.at(0).variable == "u");
  CHECK(t.equations.at(1).rhs == F("x^2", r));
  CHECK(t.form_data.at(0) == W("dx/x", r));
  CHECK(t.form_data.at(1) == W("2*dx", r));
  const auto mc = maurer_cartan(a, GroupTag::aff1());
  CHECK(mc(0, 1) == t.form_data.at(1));
  CHECK(classify_aff1(t.form_data[0], t.form_data[1], {t.chart}).accepted);

  CHECK(code_of([&] { boundary_torsor(RatMatrix(1, 1, RatFunc(r)), GroupTag::gm()); }) == ErrorCode::ZeroUnit);
  a(1, 0) = F("x", r);
  CHECK(code_of([&] { boundary_torsor(a, GroupTag::aff1()); }) == ErrorCode::ShapeViolation);
}

TEST_CASE("kummer cocycles") {
  const Ring r = Ring::create(3, 1);
  const Chart c = C(r, {"x", "x + 1"});
  const auto u = kummer_cocycle({{c, F("x", r)}, {c, F("x*(x + 1)^3", r)}});
  CHECK(u.at({0, 1}) == F("1/(x + 1)", r));
  CHECK(u.at({0, 0}) == F("1", r));
  CHECK(code_of([&] { kummer_cocycle({{c, F("x", r)}, {c, F("x + 1", r)}}); }) == ErrorCode::InconsistentWitnesses);

  const auto w3 = kummer_cocycle({{c, F("x", r)}, {c, F("x*(x + 1)^3", r)}, {c, F("2*x^4", r)}});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(w3.at({i, j}) * w3.at({j, k}) == w3.at({i, k}));
}
