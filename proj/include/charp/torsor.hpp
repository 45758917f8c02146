#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charp/cartier.hpp"
#include "charp/connections.hpp"

namespace charp {

/// A unit f on a chart, offered as a local logarithm of some form.
struct ChartWitness {
  Chart chart;
  RatFunc f;

  friend bool operator==(const ChartWitness&, const ChartWitness&) = default;
};

/// True when f is nonzero and its numerator and denominator are products of
/// chart generators up to a constant.
bool factors_over(const RatFunc& f, const Chart& chart);

enum class VerdictReason { OK, NotClosed, CurvatureNonzero, CartierConditionFailed, ConditionThreeFailed };

std::string reason_name(VerdictReason r);

/// Outcome of a classifier. accepted <=> reason == OK. The p-curvature
/// certificate is always attached and is asserted to vanish on acceptance.
struct Verdict {
  bool accepted = false;
  VerdictReason reason = VerdictReason::OK;
  std::string detail;
  std::vector<ChartWitness> witnesses;  // sorted by chart, then exponents
  std::optional<PCurvature> pcurv_certificate;
  std::optional<RatFunc> exact_witness;  // alpha_p: f' with df' = w
};

/// Accepted iff w is closed and C(w) = w. Logarithmic witnesses are searched
/// on each chart; with no charts the chart is derived from w's denominators.
Verdict classify_mu_p(const OneForm& w, const std::vector<Chart>& charts);

/// Accepted iff w is closed and C(w) = 0; the antiderivative is attached.
Verdict classify_alpha_p(const OneForm& w);

/// The three conditions for a pair (w, w') to come from an aff(1)^F-torsor:
/// dw = 0 = dw' + w ^ w', C(w) = w, and C(f w') = 0 for every local
/// logarithm f of w. Condition 3 is checked on the supplied witnesses plus
/// those found on the charts (derived charts when none are given); a single
/// witness per chart decides it, since the condition is independent of the
/// choice of f. Without any witness the verdict is ConditionThreeFailed.
/// Throws InconsistentWitnesses when a supplied witness is not a unit on its
/// chart or has the wrong logarithm.
Verdict classify_aff1(const OneForm& w, const OneForm& w_prime, const std::vector<Chart>& charts,
                      const std::vector<ChartWitness>& extra_witnesses = {});

/// Chart used when none is supplied: the gcd-free basis of the denominators
/// of the given forms.
Chart derived_chart(const std::vector<OneForm>& forms);

enum class TorsorKind { MuP, AlphaP, Aff1F };

std::string torsor_kind_name(TorsorKind k);

/// variable^p = rhs over the chart ring.
struct TorsorEquation {
  std::string variable;
  RatFunc rhs;
};

struct TorsorPresentation {
  TorsorKind kind;
  Chart chart;  // the rhs functions are regular there, and units where needed
  std::vector<TorsorEquation> equations;
  std::vector<OneForm> form_data;
};

/// The torsor obtained from g by the boundary map, as explicit equations
/// t^p = f (g_m, g = (f)), t^p = f' (g_a, g = (f')) or u^p = f, v^p = f'
/// (aff1, g = ((f, f'), (0, 1))). The form data is g^{-1} dg: dlog f, df',
/// or the pair (f^{-1} df, f^{-1} df'). Throws ZeroUnit or ShapeViolation.
TorsorPresentation boundary_torsor(const RatMatrix& g, const GroupTag& tag);

/// The Kummer gluing units u_ij = (f_i / f_j)^(1/p) for all ordered pairs.
/// Throws InconsistentWitnesses when the dlogs differ.
std::map<std::pair<std::size_t, std::size_t>, RatFunc> kummer_cocycle(const std::vector<ChartWitness>& witnesses);

}  // namespace charp
