#include "fixture_cases.hpp"

#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <stdexcept>

#include "charp/cli.hpp"
#include "charp/format.hpp"
#include "charp/parser.hpp"
#include "charp/torsor.hpp"

namespace charp::testing {

namespace {

using nlohmann::json;

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Mismatch(what);
}

std::vector<RatFunc> functions(const json& list, const Ring& ring) {
  std::vector<RatFunc> out;
  for (const auto& s : list) out.push_back(parse_function(s.get<std::string>(), ring));
  return out;
}

Chart chart_of(const json& list, const Ring& ring) {
  std::vector<MultiPoly> gens;
  for (const auto& f : functions(list, ring)) gens.push_back(f.num().monic());
  return Chart(ring, std::move(gens));
}

RatMatrix function_matrix(const std::string& text, const Ring& ring) {
  const auto rows = split_matrix(text);
  RatMatrix m(rows.size(), rows.front().size(), RatFunc(ring));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = parse_function(rows[i][j], ring);
  return m;
}

MatrixOneForm form_matrix(const std::string& text, const Ring& ring) {
  const auto rows = split_matrix(text);
  MatrixOneForm m(rows.size(), rows.front().size(), OneForm(ring));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = parse_one_form(rows[i][j], ring);
  return m;
}

void expect_matrix(const RatMatrix& got, const json& want, const Ring& ring) {
  expect(got.rows() == want.size(), "row count");
  for (std::size_t i = 0; i < got.rows(); ++i) {
    expect(got.cols() == want[i].size(), "column count");
    for (std::size_t j = 0; j < got.cols(); ++j)
      expect(got(i, j) == parse_function(want[i][j].get<std::string>(), ring),
             "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is " + to_string(got(i, j)));
  }
}

Derivation derivation_of(const json& list, const Ring& ring) { return Derivation{ring, functions(list, ring)}; }

// Runs body and checks that it throws the named error.
void expect_error(const std::string& code, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    expect(error_name(e.code()) == code, std::string("threw ") + e.what());
    return;
  }
  throw Mismatch("expected " + code + ", nothing thrown");
}

void check_verdict(const Verdict& v, const json& want, const Ring& ring) {
  expect(v.accepted == want["accepted"].get<bool>(), "verdict " + reason_name(v.reason));
  expect(reason_name(v.reason) == want["reason"].get<std::string>(), "reason " + reason_name(v.reason));
  if (!want.contains("witness")) return;
  const RatFunc f = parse_function(want["witness"].get<std::string>(), ring);
  if (v.exact_witness) {
    expect(*v.exact_witness == f, "exact witness " + to_string(*v.exact_witness));
  } else {
    expect(!v.witnesses.empty() && v.witnesses.front().f == f, "missing or different witness");
  }
}

using Handler = std::function<void(const json& args, const json& want, const Ring& ring)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"diff",
       [](const json& a, const json& want, const Ring& ring) {
         const auto f = parse_function(a["f"].get<std::string>(), ring).num();
         const auto got = partial_derivative(f, a["var"].get<unsigned>());
         expect(got == parse_function(want.get<std::string>(), ring).num(), "got " + to_string(got));
       }},
      {"pbasis",
       [](const json& a, const json& want, const Ring& ring) {
         const auto parts = p_basis_decompose(parse_function(a["f"].get<std::string>(), ring).num());
         Monomial slot;
         for (std::size_t i = 0; i < want["slot"].size(); ++i) slot.exps[i] = want["slot"][i].get<unsigned>();
         expect(parts.size() == 1 && parts.count(slot), "unexpected slots");
         expect(parts.at(slot) == parse_function(want["component"].get<std::string>(), ring).num(), "component");
       }},
      {"pthroot",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = p_th_root(parse_function(a["f"].get<std::string>(), ring).num());
         expect(got == parse_function(want.get<std::string>(), ring).num(), "got " + to_string(got));
       }},
      {"d",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = d_function(parse_function(a["f"].get<std::string>(), ring));
         expect(got == parse_one_form(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"d1",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = d_oneform(parse_one_form(a["form"].get<std::string>(), ring));
         expect(got == parse_two_form(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"closed",
       [](const json& a, const json& want, const Ring& ring) {
         expect(is_closed(parse_one_form(a["form"].get<std::string>(), ring)) == want.get<bool>(), "closedness");
       }},
      {"dlog",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = dlog_function(parse_function(a["f"].get<std::string>(), ring));
         expect(got == parse_one_form(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"cartier",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = cartier(parse_one_form(a["form"].get<std::string>(), ring));
         expect(got == parse_one_form(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"cartier_oracle",
       [](const json& a, const json& want, const Ring& ring) {
         const auto w = parse_one_form(a["form"].get<std::string>(), ring);
         const auto expected = parse_one_form(want.get<std::string>(), ring);
         expect(cartier_1var_oracle(w) == expected && cartier(w) == expected, "oracle or cartier differs");
       }},
      {"antider",
       [](const json& a, const json& want, const Ring& ring) {
         const auto w = parse_one_form(a["form"].get<std::string>(), ring);
         if (want.is_object()) return expect_error(want["error"], [&] { antiderivative(w); });
         const auto got = antiderivative(w);
         expect(got == parse_function(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"logwitness",
       [](const json& a, const json& want, const Ring& ring) {
         const auto w = parse_one_form(a["form"].get<std::string>(), ring);
         const Chart chart = chart_of(a["chart"], ring);
         if (want.is_object()) return expect_error(want["error"], [&] { log_witness(w, chart); });
         const auto got = log_witness(w, chart);
         expect(got == parse_function(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"mc",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = maurer_cartan(function_matrix(a["matrix"], ring), GroupTag::parse(a["tag"]));
         for (std::size_t i = 0; i < got.rows(); ++i)
           for (std::size_t j = 0; j < got.cols(); ++j)
             expect(got(i, j) == parse_one_form(want[i][j].get<std::string>(), ring), "entry " + to_string(got(i, j)));
       }},
      {"curv_mc",
       [](const json& a, const json&, const Ring& ring) {
         const auto omega = maurer_cartan(function_matrix(a["matrix"], ring), GroupTag::parse(a["tag"]));
         expect(is_zero(curvature(omega)), "curvature " + to_string(curvature(omega)));
       }},
      {"derivation_p_power",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = derivation_p_power(derivation_of(a["derivation"], ring));
         expect(got == derivation_of(want, ring), "D^p differs");
       }},
      {"pcurv_brute",
       [](const json& a, const json& want, const Ring& ring) {
         expect_matrix(pcurvature_brute(form_matrix(a["connection"], ring)).psi.at(0), want, ring);
       }},
      {"pcurv_at",
       [](const json& a, const json& want, const Ring& ring) {
         const auto omega = form_matrix(a["connection"], ring);
         const auto d = derivation_of(a["derivation"], ring);
         expect_matrix(pcurvature_at(omega, d), want, ring);
         // p-linearity: psi(f d/dx) = f^p psi(d/dx).
         expect(pcurvature_brute(omega).evaluate(d) == pcurvature_at(omega, d), "p-linearity");
       }},
      {"pcurv_abelian",
       [](const json& a, const json& want, const Ring& ring) {
         const auto got = pcurvature_abelian(parse_one_form(a["form"].get<std::string>(), ring), GroupTag::parse(a["tag"]));
         expect(got == parse_one_form(want.get<std::string>(), ring), "got " + to_string(got));
       }},
      {"rank1_oracle",
       [](const json& a, const json& want, const Ring& ring) {
         const auto w = parse_one_form(a["form"].get<std::string>(), ring);
         const auto expected = parse_function(want.get<std::string>(), ring);
         expect(rank1_pcurvature_oracle(w) == expected, "oracle " + to_string(rank1_pcurvature_oracle(w)));
         expect(pcurvature_brute(scalar_connection(w)).psi.at(0)(0, 0) == expected, "brute differs");
       }},
      {"classify_mu_p",
       [](const json& a, const json& want, const Ring& ring) {
         check_verdict(classify_mu_p(parse_one_form(a["form"].get<std::string>(), ring), {chart_of(a["chart"], ring)}),
                       want, ring);
       }},
      {"classify_alpha_p",
       [](const json& a, const json& want, const Ring& ring) {
         check_verdict(classify_alpha_p(parse_one_form(a["form"].get<std::string>(), ring)), want, ring);
       }},
      {"classify_aff1",
       [](const json& a, const json& want, const Ring& ring) {
         check_verdict(classify_aff1(parse_one_form(a["form"].get<std::string>(), ring),
                                     parse_one_form(a["formp"].get<std::string>(), ring), {chart_of(a["chart"], ring)}),
                       want, ring);
       }},
      {"boundary",
       [](const json& a, const json& want, const Ring& ring) {
         const auto g = function_matrix(a["matrix"], ring);
         const auto t = boundary_torsor(g, GroupTag::parse(a["tag"]));
         expect(t.equations.size() == want["equations"].size(), "equation count");
         for (std::size_t i = 0; i < t.equations.size(); ++i) {
           expect(t.equations[i].variable == want["equations"][i][0], "variable name");
           expect(t.equations[i].rhs == parse_function(want["equations"][i][1].get<std::string>(), ring), "rhs");
         }
         for (std::size_t i = 0; i < t.form_data.size(); ++i)
           expect(t.form_data[i] == parse_one_form(want["forms"][i].get<std::string>(), ring),
                  "form " + to_string(t.form_data[i]));
       }},
      {"cocycle",
       [](const json& a, const json& want, const Ring& ring) {
         std::vector<ChartWitness> ws;
         for (const auto& f : functions(a["witnesses"], ring)) ws.push_back({derived_chart({dlog_function(f)}), f});
         if (want.contains("error")) return expect_error(want["error"], [&] { kummer_cocycle(ws); });
         const auto u = kummer_cocycle(ws);
         expect(u.at({0, 1}) == parse_function(want["u_0_1"].get<std::string>(), ring), "u_01 " + to_string(u.at({0, 1})));
       }},
      {"parse",
       [](const json& a, const json& want, const Ring& ring) {
         const Expr e = parse_expression(a["text"].get<std::string>(), ring);
         expect(sort_name(e.sort) == want["sort"], "sort " + sort_name(e.sort));
         expect(std::get<TwoForm>(evaluate(e, ring)) == parse_two_form(want["value"].get<std::string>(), ring), "value");
       }},
      {"cli",
       [](const json& a, const json& want, const Ring& ring) {
         auto argv = a["argv"].get<std::vector<std::string>>();
         argv.push_back("--json");
         const CliResult r = run_cli(argv);
         expect(r.exit_code == want["exit"].get<int>(), "exit " + std::to_string(r.exit_code) + ": " + r.err);
         const json doc = json::parse(r.out);
         if (want.contains("witness"))
           expect(parse_function(doc["witnesses"][0]["f"].get<std::string>(), ring) ==
                      parse_function(want["witness"].get<std::string>(), ring),
                  "witness");
         if (want.contains("reason")) expect(doc["reason"] == want["reason"], "reason");
         if (want.contains("psi")) {
           const auto& psi = doc["result"]["psi"][0];
           expect(psi.size() == want["psi"].size(), "psi shape");
           for (std::size_t i = 0; i < psi.size(); ++i)
             for (std::size_t j = 0; j < psi[i].size(); ++j)
               expect(parse_function(psi[i][j].get<std::string>(), ring) ==
                          parse_function(want["psi"][i][j].get<std::string>(), ring),
                      "psi entry");
         }
       }},
  };
  return table;
}

}  // namespace

std::vector<FixtureOutcome> run_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const json doc = json::parse(in);
  std::vector<FixtureOutcome> out;
  for (const auto& c : doc.at("cases")) {
    FixtureOutcome o{c.at("id").get<std::string>()};
    try {
      const Ring ring = Ring::create(c.at("p").get<unsigned>(), c.at("n").get<unsigned>());
      const auto it = handlers().find(c.at("op").get<std::string>());
      if (it == handlers().end()) throw Mismatch("unknown op " + c.at("op").get<std::string>());
      it->second(c.at("args"), c.at("expected"), ring);
      o.ok = true;
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace charp::testing
