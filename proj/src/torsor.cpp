#include "charp/torsor.hpp"

#include <algorithm>

#include "charp/gcd.hpp"

namespace charp {

namespace {

bool charts_less(const Chart& a, const Chart& b) {
  return std::lexicographical_compare(a.generators().begin(), a.generators().end(), b.generators().begin(),
                                      b.generators().end(), canonical_less);
}

bool witness_less(const ChartWitness& a, const ChartWitness& b) {
  if (charts_less(a.chart, b.chart)) return true;
  if (charts_less(b.chart, a.chart)) return false;
  if (a.f.num() != b.f.num()) return canonical_less(a.f.num(), b.f.num());
  return canonical_less(a.f.den(), b.f.den());
}

MultiPoly denominator_lcm(const OneForm& w) {
  MultiPoly l = MultiPoly::constant(w.ring(), 1);
  for (const auto& c : w.coeffs())
    if (!c.is_zero() && !c.den().is_one()) l = lcm(l, c.den());
  return l;
}

bool strips_to_constant(MultiPoly f, const Chart& chart) {
  for (const auto& g : chart.generators())
    while (!f.is_constant()) {
      auto q = divide_if_exact(f, g);
      if (!q) break;
      f = std::move(*q);
    }
  return f.is_constant();
}

// Searches each chart for a logarithm of w. Generators coprime to every
// denominator of w cannot carry a nonzero exponent, so they are dropped
// from the search; the witness is still recorded against the full chart.
std::vector<ChartWitness> find_witnesses(const OneForm& w, const std::vector<Chart>& charts, std::string& notes) {
  const MultiPoly dens = denominator_lcm(w);
  std::vector<ChartWitness> out;
  for (const auto& chart : charts) {
    std::vector<MultiPoly> relevant;
    for (const auto& g : chart.generators())
      if (!gcd(g, dens).is_one()) relevant.push_back(g);
    if (relevant.size() > Chart::kMaxSearchGenerators) {
      notes += "chart skipped: more than " + std::to_string(Chart::kMaxSearchGenerators) +
               " generators meet the denominators; ";
      continue;
    }
    if (auto found = search_log_witness(w, Chart(w.ring(), relevant))) out.push_back({chart, std::move(found->f)});
  }
  return out;
}

std::vector<Chart> charts_or_derived(const std::vector<Chart>& charts, const OneForm& w) {
  if (!charts.empty()) return charts;
  return {derived_chart({w})};
}

Verdict reject(VerdictReason reason, std::string detail) {
  Verdict v;
  v.accepted = false;
  v.reason = reason;
  v.detail = std::move(detail);
  return v;
}

void finish(Verdict& v, PCurvature certificate) {
  v.pcurv_certificate = std::move(certificate);
  std::sort(v.witnesses.begin(), v.witnesses.end(), witness_less);
  if (v.accepted) ensure(v.pcurv_certificate->is_zero(), "accepted form with nonzero p-curvature");
}

void check_supplied_witness(const ChartWitness& cw, const OneForm& w) {
  if (cw.f.is_zero() || !factors_over(cw.f, cw.chart))
    fail(ErrorCode::InconsistentWitnesses, "supplied witness is not a unit on its chart");
  if (!(dlog_function(cw.f) == w)) fail(ErrorCode::InconsistentWitnesses, "supplied witness has dlog(f) != w");
}

}  // namespace

bool factors_over(const RatFunc& f, const Chart& chart) {
  if (f.is_zero()) return false;
  return strips_to_constant(f.num(), chart) && strips_to_constant(f.den(), chart);
}

std::string reason_name(VerdictReason r) {
  switch (r) {
    case VerdictReason::OK: return "OK";
    case VerdictReason::NotClosed: return "NotClosed";
    case VerdictReason::CurvatureNonzero: return "CurvatureNonzero";
    case VerdictReason::CartierConditionFailed: return "CartierConditionFailed";
    case VerdictReason::ConditionThreeFailed: return "ConditionThreeFailed";
  }
  return "?";
}

Chart derived_chart(const std::vector<OneForm>& forms) {
  ensure(!forms.empty(), "derived_chart needs at least one form");
  const Ring& ring = forms.front().ring();
  std::vector<MultiPoly> pieces;
  for (const auto& w : forms) {
    const MultiPoly dens = denominator_lcm(w);
    if (dens.is_constant()) continue;
    pieces.push_back(dens);
    for (unsigned v = 0; v < ring.nvars(); ++v)
      if (dens.degree_in(v) && divide_if_exact(dens, MultiPoly::variable(ring, v)))
        pieces.push_back(MultiPoly::variable(ring, v));
    // If w = sum_j m_j dq_j / q_j over D = prod q_j, then modulo q_k the
    // numerator N_i of w D minus m dD/dx_i is (m_k - m) D/q_k dq_k/dx_i, so
    // gcd(D, N - m dD) collects exactly the q_k with residue m_k = m.
    std::vector<MultiPoly> numerators, derivs;
    for (unsigned i = 0; i < ring.nvars(); ++i) {
      const RatFunc& c = w.coeff(i);
      numerators.push_back(c.is_zero() ? MultiPoly(ring) : c.num() * divexact(dens, c.den()));
      derivs.push_back(partial_derivative(dens, i));
    }
    for (Coeff m = 1; m < ring.p(); ++m) {
      MultiPoly g = dens;
      for (unsigned i = 0; i < ring.nvars() && !g.is_constant(); ++i)
        g = gcd(g, numerators[i] - derivs[i].scaled(m));
      if (!g.is_constant()) pieces.push_back(g);
    }
  }
  return Chart(ring, coprime_basis(pieces));
}

Verdict classify_mu_p(const OneForm& w, const std::vector<Chart>& charts) {
  Verdict v;
  if (!is_closed(w)) {
    v = reject(VerdictReason::NotClosed, "dw != 0");
  } else if (!(cartier_unchecked(w) == w)) {
    v = reject(VerdictReason::CartierConditionFailed, "C(w) != w");
  } else {
    v.accepted = true;
    v.reason = VerdictReason::OK;
    v.witnesses = find_witnesses(w, charts_or_derived(charts, w), v.detail);
    if (v.witnesses.empty()) v.detail += "no logarithmic witness on the given charts";
  }
  finish(v, pcurvature_brute(scalar_connection(w)));
  return v;
}

Verdict classify_alpha_p(const OneForm& w) {
  Verdict v;
  if (!is_closed(w)) {
    v = reject(VerdictReason::NotClosed, "dw != 0");
  } else if (!cartier_unchecked(w).is_zero()) {
    v = reject(VerdictReason::CartierConditionFailed, "C(w) != 0");
  } else {
    v.accepted = true;
    v.reason = VerdictReason::OK;
    v.exact_witness = antiderivative(w);
  }
  finish(v, pcurvature_brute(ga_connection(w)));
  return v;
}

Verdict classify_aff1(const OneForm& w, const OneForm& w_prime, const std::vector<Chart>& charts,
                      const std::vector<ChartWitness>& extra_witnesses) {
  require_same_ring(w.ring(), w_prime.ring());
  const auto certificate = [&] { return pcurvature_brute(aff1_connection(w, w_prime)); };
  Verdict v;
  if (!is_closed(w)) {
    v = reject(VerdictReason::NotClosed, "dw != 0");
    finish(v, certificate());
    return v;
  }
  if (!(d_oneform(w_prime) + wedge(w, w_prime)).is_zero()) {
    v = reject(VerdictReason::CurvatureNonzero, "dw' + w ^ w' != 0");
    finish(v, certificate());
    return v;
  }
  if (!(cartier_unchecked(w) == w)) {
    v = reject(VerdictReason::CartierConditionFailed, "C(w) != w");
    finish(v, certificate());
    return v;
  }

  for (const auto& cw : extra_witnesses) check_supplied_witness(cw, w);
  std::string notes;
  std::vector<ChartWitness> found = find_witnesses(w, charts_or_derived(charts, w), notes);
  std::vector<ChartWitness> all = extra_witnesses;
  for (auto& cw : found)
    if (std::find(all.begin(), all.end(), cw) == all.end()) all.push_back(std::move(cw));
  if (all.empty()) {
    v = reject(VerdictReason::ConditionThreeFailed, notes + "no logarithmic witness found; supply one");
    finish(v, certificate());
    return v;
  }

  v.accepted = true;
  v.reason = VerdictReason::OK;
  v.detail = notes;
  for (const auto& cw : all) {
    const OneForm fw = cw.f * w_prime;
    ensure(is_closed(fw), "f w' is not closed although dw' + w ^ w' = 0");
    if (!cartier_unchecked(fw).is_zero()) {
      v.accepted = false;
      v.reason = VerdictReason::ConditionThreeFailed;
      v.detail = notes + "C(f w') != 0 for a logarithmic witness f";
      break;
    }
  }
  v.witnesses = std::move(all);
  finish(v, certificate());
  return v;
}

std::string torsor_kind_name(TorsorKind k) {
  switch (k) {
    case TorsorKind::MuP: return "mu_p";
    case TorsorKind::AlphaP: return "alpha_p";
    case TorsorKind::Aff1F: return "aff1F";
  }
  return "?";
}

TorsorPresentation boundary_torsor(const RatMatrix& g, const GroupTag& tag) {
  if (g.entries().empty()) fail(ErrorCode::ShapeViolation, "empty group element");
  const Ring ring = g(0, 0).ring();
  const auto chart_for = [&](std::vector<MultiPoly> polys) {
    std::erase_if(polys, [](const MultiPoly& f) { return f.is_constant(); });
    return Chart(ring, coprime_basis(polys));
  };
  const auto scalar = [&](const char* what) -> const RatFunc& {
    if (g.rows() != 1 || g.cols() != 1) fail(ErrorCode::ShapeViolation, std::string(what) + " elements are 1x1");
    return g(0, 0);
  };

  switch (tag.kind()) {
    case GroupTag::Kind::Gm: {
      const RatFunc& f = scalar("g_m");
      if (f.is_zero()) fail(ErrorCode::ZeroUnit, "g_m element must be a unit");
      return {TorsorKind::MuP, chart_for({f.num(), f.den()}), {{"t", f}}, {dlog_function(f)}};
    }
    case GroupTag::Kind::Ga: {
      const RatFunc& f = scalar("g_a");
      return {TorsorKind::AlphaP, chart_for({f.den()}), {{"t", f}}, {d_function(f)}};
    }
    case GroupTag::Kind::Aff1: {
      if (g.rows() != 2 || g.cols() != 2 || !g(1, 0).is_zero() || !g(1, 1).is_one())
        fail(ErrorCode::ShapeViolation, "aff1 elements have the form ((f, f'), (0, 1))");
      const RatFunc& f = g(0, 0);
      const RatFunc& fp = g(0, 1);
      if (f.is_zero()) fail(ErrorCode::ZeroUnit, "aff1 element needs f != 0");
      const RatFunc inv = f.inverse();
      return {TorsorKind::Aff1F,
              chart_for({f.num(), f.den(), fp.den()}),
              {{"u", f}, {"v", fp}},
              {inv * d_function(f), inv * d_function(fp)}};
    }
    case GroupTag::Kind::GL: break;
  }
  fail(ErrorCode::ShapeViolation, "boundary torsors are built for g_m, g_a and aff1 only");
}

std::map<std::pair<std::size_t, std::size_t>, RatFunc> kummer_cocycle(const std::vector<ChartWitness>& witnesses) {
  std::map<std::pair<std::size_t, std::size_t>, RatFunc> out;
  if (witnesses.empty()) return out;
  for (const auto& cw : witnesses)
    if (cw.f.is_zero()) fail(ErrorCode::ZeroUnit, "witnesses must be units");
  const OneForm w = dlog_function(witnesses.front().f);
  for (std::size_t i = 1; i < witnesses.size(); ++i)
    if (!(dlog_function(witnesses[i].f) == w))
      fail(ErrorCode::InconsistentWitnesses, "witness " + std::to_string(i) + " has a different logarithm");
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    for (std::size_t j = 0; j < witnesses.size(); ++j)
      out.emplace(std::pair{i, j}, p_th_root(witnesses[i].f / witnesses[j].f));
  return out;
}

}  // namespace charp
