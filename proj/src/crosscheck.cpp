#include "charp/crosscheck.hpp"

#include <chrono>
#include <functional>

#include "charp/format.hpp"
#include "charp/gcd.hpp"

namespace charp {

MultiPoly RandomSource::poly(unsigned max_degree, unsigned max_terms) {
  std::vector<Term> terms;
  const auto count = 1 + below(max_terms);
  for (std::uint64_t t = 0; t < count; ++t) {
    Monomial m;
    const auto degree = below(max_degree + 1);
    for (std::uint64_t k = 0; k < degree; ++k) ++m.exps[below(ring_.nvars())];
    terms.push_back({m, coeff()});
  }
  return MultiPoly::from_terms(ring_, std::move(terms));
}

MultiPoly RandomSource::nonconstant_poly(unsigned max_degree, unsigned max_terms) {
  while (true) {
    MultiPoly f = poly(max_degree, max_terms);
    if (!f.is_constant()) return f.monic();
  }
}

RatFunc RandomSource::ratfunc(unsigned num_degree, unsigned den_degree) {
  MultiPoly num = poly(num_degree, 4);
  if (den_degree == 0 || chance(30)) return RatFunc(std::move(num));
  MultiPoly den = nonconstant_poly(den_degree == 1 ? 1 : den_degree / 2, 3);
  if (den_degree >= 2 && chance(40)) den *= nonconstant_poly(den_degree / 2, 3);
  return RatFunc::fraction(num, den);
}

RatFunc RandomSource::unit(unsigned factors) {
  static constexpr int kExponents[] = {-2, -1, 1, 2};
  RatFunc f = RatFunc::constant(ring_, nonzero_coeff());
  for (unsigned v = 0; v < ring_.nvars(); ++v) {
    const int e = static_cast<int>(below(5)) - 2;
    if (e > 0) f *= RatFunc::variable(ring_, v).pow(static_cast<unsigned>(e));
    if (e < 0) f /= RatFunc::variable(ring_, v).pow(static_cast<unsigned>(-e));
  }
  const auto count = below(factors + 1);
  for (std::uint64_t k = 0; k < count; ++k) {
    const RatFunc g(nonconstant_poly(2, 3));
    const int e = kExponents[below(4)];
    f *= e > 0 ? g.pow(static_cast<unsigned>(e)) : g.pow(static_cast<unsigned>(-e)).inverse();
  }
  return f;
}

OneForm RandomSource::form(unsigned num_degree, unsigned den_degree) {
  std::vector<RatFunc> coeffs;
  for (unsigned i = 0; i < ring_.nvars(); ++i)
    coeffs.push_back(chance(20) ? RatFunc(ring_) : ratfunc(num_degree, den_degree));
  return OneForm(ring_, std::move(coeffs));
}

OneForm RandomSource::closed_form() {
  OneForm w(ring_);
  bool any = false;
  if (chance(70)) {
    w += d_function(ratfunc(4, 3));
    any = true;
  }
  if (chance(50)) {
    w += gamma(form(1, 1));
    any = true;
  }
  if (!any || chance(50)) w += RatFunc::constant(ring_, nonzero_coeff()) * dlog_function(unit(2));
  return w;
}

namespace {

constexpr std::uint32_t kPrimes[] = {3, 5, 7};

std::uint64_t mix(std::uint64_t seed, std::uint64_t config) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (config + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Battery {
 public:
  explicit Battery(std::string name) { result_.name = std::move(name); }

  // Runs one instance. The body returns an empty string on success or a
  // description of the discrepancy; library errors count as failures.
  void trial(const std::function<std::string()>& body) {
    ++result_.trials;
    std::string problem;
    try {
      problem = body();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (problem.empty()) return;
    ++result_.failures;
    if (result_.samples.size() < 5) result_.samples.push_back(std::move(problem));
  }

  void skip() { ++result_.skipped; }
  BatteryResult& result() { return result_; }

  BatteryResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  BatteryResult result_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string describe(const Ring& ring, const std::string& what) {
  return "p=" + std::to_string(ring.p()) + " n=" + std::to_string(ring.nvars()) + ": " + what;
}

BatteryResult cartier_identities(std::uint64_t seed, std::size_t trials) {
  Battery b("cartier-identities");
  std::uint64_t config = 0;
  for (auto p : kPrimes)
    for (unsigned n = 1; n <= 2; ++n) {
      const Ring ring = Ring::create(p, n);
      RandomSource rs(ring, mix(seed, config++));
      for (std::size_t t = 0; t < trials; ++t) {
        b.trial([&]() -> std::string {
          const RatFunc f = rs.ratfunc(6, 3);
          if (!cartier(d_function(f)).is_zero()) return describe(ring, "C(df) != 0 for f = " + to_string(f));
          const RatFunc u = rs.unit(2);
          const OneForm l = dlog_function(u);
          if (!(cartier(l) == l)) return describe(ring, "C(dlog f) != dlog f for f = " + to_string(u));
          const OneForm eta = rs.form(2, 2);
          if (!(cartier(gamma(eta)) == eta)) return describe(ring, "C(gamma(eta)) != eta for eta = " + to_string(eta));
          const OneForm w = rs.closed_form();
          const RatFunc h = rs.ratfunc(2, 2);
          if (!(cartier(h.frobenius() * w) == h * cartier(w)))
            return describe(ring, "C(h^p w) != h C(w) for h = " + to_string(h) + ", w = " + to_string(w));
          return "";
        });
      }
    }
  return b.finish();
}

BatteryResult oracle_1var(std::uint64_t seed, std::size_t trials) {
  Battery b("oracle-1var");
  std::uint64_t config = 0;
  for (auto p : kPrimes) {
    const Ring ring = Ring::create(p, 1);
    b.trial([&]() -> std::string {
      // Wilson: C(x^(p-1) dx) = dx because (p-1)! = -1.
      const OneForm w = OneForm::basis(ring, 0, RatFunc::variable(ring, 0).pow(p - 1));
      const OneForm dx = OneForm::basis(ring, 0, RatFunc::constant(ring, 1));
      if (!(cartier(w) == dx) || !(cartier_1var_oracle(w) == dx)) return describe(ring, "Wilson case failed");
      return "";
    });
    RandomSource rs(ring, mix(seed, config++));
    for (std::size_t t = 0; t < trials; ++t)
      b.trial([&]() -> std::string {
        const OneForm w = rs.closed_form();
        if (!(cartier(w) == cartier_1var_oracle(w))) return describe(ring, "oracle disagrees on " + to_string(w));
        return "";
      });
  }
  return b.finish();
}

// Closed random forms followed by constructed ones, alternating p in
// {3, 5, 7} and n in {1, 2}.
template <class Make>
void for_each_instance(std::uint64_t seed, std::size_t random_count, std::size_t constructed_count, Make&& body) {
  for (std::size_t t = 0; t < random_count + constructed_count; ++t) {
    const Ring ring = Ring::create(kPrimes[t % 3], 1 + static_cast<unsigned>((t / 3) % 2));
    RandomSource rs(ring, mix(seed, t));
    body(ring, rs, t >= random_count);
  }
}

BatteryResult gm_equivalence(std::uint64_t seed, std::size_t trials) {
  Battery b("gm-equivalence");
  std::size_t accepted = 0;
  for_each_instance(seed, trials, trials / 3, [&](const Ring& ring, RandomSource& rs, bool constructed) {
    b.trial([&]() -> std::string {
      const OneForm w = constructed ? dlog_function(rs.unit(3)) : rs.closed_form();
      const Verdict v = classify_mu_p(w, {});
      const bool flat = pcurvature_brute(scalar_connection(w)).is_zero();
      accepted += v.accepted;
      if (v.accepted != flat)
        return describe(ring, "classifier says " + reason_name(v.reason) + " but brute psi " +
                                  (flat ? "vanishes" : "is nonzero") + " for " + to_string(w));
      if (constructed && !v.accepted) return describe(ring, "dlog form rejected: " + to_string(w));
      return "";
    });
  });
  b.result().note = std::to_string(accepted) + " accepted";
  return b.finish();
}

BatteryResult ga_equivalence(std::uint64_t seed, std::size_t trials) {
  Battery b("ga-equivalence");
  std::size_t accepted = 0;
  for_each_instance(seed, trials, trials / 3, [&](const Ring& ring, RandomSource& rs, bool constructed) {
    b.trial([&]() -> std::string {
      const OneForm w = constructed ? d_function(rs.ratfunc(4, 2)) : rs.closed_form();
      const Verdict v = classify_alpha_p(w);
      const bool flat = pcurvature_brute(ga_connection(w)).is_zero();
      accepted += v.accepted;
      if (v.accepted != flat)
        return describe(ring, "classifier says " + reason_name(v.reason) + " but brute psi " +
                                  (flat ? "vanishes" : "is nonzero") + " for " + to_string(w));
      if (v.accepted && !(v.exact_witness && d_function(*v.exact_witness) == w))
        return describe(ring, "antiderivative check failed for " + to_string(w));
      if (constructed && !v.accepted) return describe(ring, "exact form rejected: " + to_string(w));
      return "";
    });
  });
  b.result().note = std::to_string(accepted) + " accepted";
  return b.finish();
}

BatteryResult abelian_formula(std::uint64_t seed, std::size_t trials) {
  Battery b("abelian-formula");
  std::uint64_t config = 0;
  for (auto p : kPrimes) {
    for (std::size_t t = 0; t < trials; ++t) {
      const Ring ring = Ring::create(p, 1 + static_cast<unsigned>(t % 2));
      RandomSource rs(ring, mix(seed, config++));
      b.trial([&]() -> std::string {
        const OneForm w = rs.closed_form();
        const OneForm eta_m = frobenius_coefficients(pcurvature_abelian(w, GroupTag::gm()));
        const OneForm eta_a = frobenius_coefficients(pcurvature_abelian(w, GroupTag::ga()));
        const PCurvature gm = pcurvature_brute(scalar_connection(w));
        const PCurvature ga = pcurvature_brute(ga_connection(w));
        for (unsigned i = 0; i < ring.nvars(); ++i) {
          if (!(gm.psi[i](0, 0) == eta_m.coeff(i))) return describe(ring, "g_m mismatch for " + to_string(w));
          const RatMatrix& m = ga.psi[i];
          if (!(m(0, 1) == eta_a.coeff(i)) || !m(0, 0).is_zero() || !m(1, 0).is_zero() || !m(1, 1).is_zero())
            return describe(ring, "g_a mismatch for " + to_string(w));
        }
        return "";
      });
    }
  }
  return b.finish();
}

Chart chart_of(const Ring& ring, const std::vector<RatFunc>& fs) {
  std::vector<MultiPoly> polys;
  for (const auto& f : fs) {
    polys.push_back(f.num());
    polys.push_back(f.den());
  }
  std::erase_if(polys, [](const MultiPoly& f) { return f.is_constant(); });
  return Chart(ring, coprime_basis(polys));
}

OneForm nonzero_form(RandomSource& rs, unsigned num_degree, unsigned den_degree) {
  while (true) {
    OneForm w = rs.form(num_degree, den_degree);
    if (!w.is_zero()) return w;
  }
}

BatteryResult aff1_classifier(std::uint64_t seed, std::size_t trials) {
  Battery b("aff1-classifier");
  // (a) pairs coming from group elements g = (f, f').
  for (std::size_t t = 0; t < trials; ++t) {
    const Ring ring = Ring::create(kPrimes[t % 3], 1 + static_cast<unsigned>((t / 3) % 2));
    RandomSource rs(ring, mix(seed, t));
    b.trial([&]() -> std::string {
      const RatFunc f = rs.unit(3);
      const RatFunc fp = rs.ratfunc(3, 2);
      const RatFunc inv = f.inverse();
      const OneForm w = inv * d_function(f);
      const OneForm wp = -(inv * d_function(fp));
      const Verdict v = classify_aff1(w, wp, {chart_of(ring, {f, fp})});
      if (!v.accepted)
        return describe(ring, "g = (" + to_string(f) + ", " + to_string(fp) + ") rejected: " + reason_name(v.reason) +
                                  " " + v.detail);
      if (!pcurvature_brute(aff1_connection(w, wp)).is_zero())
        return describe(ring, "nonzero p-curvature for g = (" + to_string(f) + ", " + to_string(fp) + ")");
      return "";
    });
  }
  // (b) pairs built to satisfy conditions 1 and 2, with perturbed w'.
  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Ring ring = Ring::create(kPrimes[t % 3], 1 + static_cast<unsigned>((t / 3) % 2));
    RandomSource rs(ring, mix(seed, trials + t));
    b.trial([&]() -> std::string {
      const RatFunc f = rs.unit(3);
      OneForm w = dlog_function(f);
      OneForm eta = d_function(rs.ratfunc(3, 2));
      switch (rs.below(4)) {
        case 0: break;
        case 1: eta += gamma(nonzero_form(rs, 1, 1)); break;
        case 2: eta += nonzero_form(rs, 3, 2); break;
        default:
          if (rs.chance(50)) w += gamma(nonzero_form(rs, 1, 1));
          break;
      }
      const OneForm wp = f.inverse() * eta;
      const Verdict v = classify_aff1(w, wp, {});
      if (v.reason == VerdictReason::ConditionThreeFailed && v.witnesses.empty()) {
        b.skip();
        return "";
      }
      const bool flat = is_zero(curvature(aff1_connection(w, wp)));
      const bool psi_zero = pcurvature_brute(aff1_connection(w, wp)).is_zero();
      accepted += v.accepted;
      if (v.accepted != (flat && psi_zero))
        return describe(ring, "verdict " + reason_name(v.reason) + " disagrees with curvature " +
                                  (flat ? "0" : "!= 0") + ", psi " + (psi_zero ? "0" : "!= 0") + " for (" +
                                  to_string(w) + ", " + to_string(wp) + ")");
      return "";
    });
  }
  BatteryResult& r = b.result();
  r.note = std::to_string(accepted) + " of the constructed pairs accepted, " + std::to_string(r.skipped) +
           " without a witness";
  if (r.skipped * 20 >= trials) {
    ++r.failures;
    r.samples.push_back("too many instances without a logarithmic witness");
  }
  return b.finish();
}

BatteryResult boundary_roundtrip(std::uint64_t seed, std::size_t trials) {
  Battery b("boundary-roundtrip");
  const GroupTag tags[] = {GroupTag::gm(), GroupTag::ga(), GroupTag::aff1()};
  std::uint64_t config = 0;
  for (const auto& tag : tags)
    for (std::size_t t = 0; t < trials; ++t) {
      const Ring ring = Ring::create(kPrimes[t % 3], 1 + static_cast<unsigned>((t / 3) % 2));
      RandomSource rs(ring, mix(seed, config++));
      b.trial([&]() -> std::string {
        RatMatrix g(1, 1, RatFunc(ring));
        if (tag.kind() == GroupTag::Kind::Gm) g(0, 0) = rs.unit(3);
        if (tag.kind() == GroupTag::Kind::Ga) g(0, 0) = rs.ratfunc(4, 2);
        if (tag.kind() == GroupTag::Kind::Aff1) {
          g = identity_matrix(ring, 2);
          g(0, 0) = rs.unit(3);
          g(0, 1) = rs.ratfunc(3, 2);
        }
        const TorsorPresentation tp = boundary_torsor(g, tag);
        const MatrixOneForm mc = maurer_cartan(g, tag);
        const std::string where = tag.name() + " g = " + to_string(g);
        if (!(tp.form_data[0] == mc(0, 0))) return describe(ring, "form data differs from dlog for " + where);
        Verdict v;
        if (tag.kind() == GroupTag::Kind::Gm) v = classify_mu_p(tp.form_data[0], {tp.chart});
        if (tag.kind() == GroupTag::Kind::Ga) v = classify_alpha_p(tp.form_data[0]);
        if (tag.kind() == GroupTag::Kind::Aff1) {
          if (!(tp.form_data[1] == mc(0, 1))) return describe(ring, "second form differs from dlog for " + where);
          v = classify_aff1(tp.form_data[0], tp.form_data[1], {tp.chart});
        }
        if (!v.accepted) return describe(ring, "classifier rejects " + where + ": " + reason_name(v.reason));
        return "";
      });
    }
  return b.finish();
}

BatteryResult cocycle(std::uint64_t seed, std::size_t trials) {
  Battery b("cocycle");
  for (std::size_t t = 0; t < trials; ++t) {
    const Ring ring = Ring::create(kPrimes[t % 3], 1 + static_cast<unsigned>((t / 3) % 2));
    RandomSource rs(ring, mix(seed, t));
    b.trial([&]() -> std::string {
      const RatFunc f = rs.unit(2);
      std::vector<RatFunc> fs{f, f * RatFunc(rs.nonconstant_poly(2, 3)).frobenius().scaled(rs.nonzero_coeff()),
                              f * rs.ratfunc(2, 2).frobenius()};
      if (fs[2].is_zero()) fs[2] = f;
      std::vector<ChartWitness> ws;
      for (const auto& fi : fs) ws.push_back({chart_of(ring, {fi}), fi});
      const auto u = kummer_cocycle(ws);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (!(u.at({i, j}).frobenius() == fs[i] / fs[j]))
            return describe(ring, "u_ij^p != f_i/f_j for f = " + to_string(f));
          for (std::size_t k = 0; k < 3; ++k)
            if (!(u.at({i, j}) * u.at({j, k}) == u.at({i, k})))
              return describe(ring, "u_ij u_jk != u_ik for f = " + to_string(f));
        }
      return "";
    });
  }
  return b.finish();
}

BatteryResult flatness(std::uint64_t seed, std::size_t trials) {
  Battery b("flatness");
  std::uint64_t config = 0;
  for (std::uint32_t p : {3u, 5u}) {
    const Ring ring = Ring::create(p, 2);
    for (bool aff : {false, true}) {
      RandomSource rs(ring, mix(seed, config++));
      for (std::size_t t = 0; t < trials; ++t)
        b.trial([&]() -> std::string {
          RatMatrix g = identity_matrix(ring, 2);
          if (aff) {
            g(0, 0) = rs.unit(2);
            g(0, 1) = rs.ratfunc(2, 2);
          } else {
            do {
              for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) g(i, j) = rs.ratfunc(2, 2);
            } while (determinant(g).is_zero());
          }
          const GroupTag tag = aff ? GroupTag::aff1() : GroupTag::gl(2);
          const MatrixOneForm mc = maurer_cartan(g, tag);
          if (!is_zero(curvature(mc))) return describe(ring, "curvature of dlog(g) != 0 for g = " + to_string(g));
          return "";
        });
    }
  }
  return b.finish();
}

struct BatteryEntry {
  const char* name;
  BatteryResult (*run)(std::uint64_t, std::size_t);
  std::size_t default_trials;
};

constexpr BatteryEntry kBatteries[] = {
    {"cartier-identities", cartier_identities, 200}, {"oracle-1var", oracle_1var, 500},
    {"gm-equivalence", gm_equivalence, 300},         {"ga-equivalence", ga_equivalence, 300},
    {"abelian-formula", abelian_formula, 300},       {"aff1-classifier", aff1_classifier, 200},
    {"boundary-roundtrip", boundary_roundtrip, 100}, {"cocycle", cocycle, 50},
    {"flatness", flatness, 200},
};

}  // namespace

const std::vector<std::string>& battery_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kBatteries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

BatteryResult run_battery(const std::string& name, std::uint64_t seed, std::size_t trials) {
  for (const auto& e : kBatteries)
    if (name == e.name) return e.run(seed, trials ? trials : e.default_trials);
  fail(ErrorCode::IndexOutOfRange, "unknown battery '" + name + "'");
}

}  // namespace charp
