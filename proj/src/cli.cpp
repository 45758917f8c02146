#include "charp/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "charp/cartier.hpp"
#include "charp/connections.hpp"
#include "charp/crosscheck.hpp"
#include "charp/format.hpp"
#include "charp/gcd.hpp"
#include "charp/parser.hpp"
#include "charp/torsor.hpp"

namespace charp {

namespace {

using json = nlohmann::ordered_json;

// Bad invocation that is not a domain error (missing input and the like).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint32_t p = 3;
  unsigned n = 1;
  bool json = false;
  bool use_stdin = false;
  std::string form, omegap, function, matrix, connection, tag, derivation, expr, op, a, b, kind;
  std::string battery = "all";
  std::vector<std::string> charts, witnesses;
  unsigned rank = 0;
  unsigned var = 1;
  std::uint64_t seed = 1;
  std::size_t trials = 0;
};

struct Report {
  json inputs = json::object();
  json result;
  json certificates = json::object();
  json witnesses = json::array();
  std::string reason;
  int exit_code = kExitOk;
};

std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const auto colon = what.find(": ");
  return colon == std::string::npos ? what : what.substr(colon + 2);
}

// Runs a parse/evaluate step, naming the offending option and text on error.
template <class F>
auto from_input(const std::string& option, const std::string& text, F&& f) {
  try {
    return f(text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InternalAssertion) throw;
    throw Error(e.code(), option + " \"" + text + "\": " + strip_code(e));
  }
}

const std::string& require(const std::string& value, const std::string& option) {
  if (value.empty()) throw UsageError("missing " + option);
  return value;
}

RatFunc function_arg(const Ring& ring, const std::string& option, const std::string& text) {
  return from_input(option, text, [&](const std::string& t) { return parse_function(t, ring); });
}

OneForm form_arg(const Ring& ring, const std::string& option, const std::string& text) {
  return from_input(option, text, [&](const std::string& t) { return parse_one_form(t, ring); });
}

MultiPoly poly_arg(const Ring& ring, const std::string& option, const std::string& text) {
  return from_input(option, text, [&](const std::string& t) {
    const RatFunc f = parse_function(t, ring);
    if (!f.is_polynomial()) fail(ErrorCode::SortError, "expected a polynomial");
    return f.num();
  });
}

Chart chart_arg(const Ring& ring, const std::string& text) {
  return from_input("--chart", text, [&](const std::string& t) {
    std::vector<MultiPoly> gens;
    for (const auto& g : split_list(t)) {
      const RatFunc f = parse_function(g, ring);
      if (!f.is_polynomial()) fail(ErrorCode::InvalidChart, "chart generators are polynomials");
      gens.push_back(f.num());
    }
    return Chart(ring, gens);
  });
}

ChartWitness witness_arg(const Ring& ring, const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw UsageError("--witness expects \"generators : f\"");
  const std::string gens = text.substr(0, colon);
  Chart chart = gens.find_first_not_of(" \t") == std::string::npos ? Chart(ring) : chart_arg(ring, gens);
  return {std::move(chart), function_arg(ring, "--witness", text.substr(colon + 1))};
}

RatMatrix function_matrix(const Ring& ring, const std::string& option, const std::string& text) {
  const auto rows = from_input(option, text, [](const std::string& t) { return split_matrix(t); });
  RatMatrix m(rows.size(), rows.front().size(), RatFunc(ring));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = function_arg(ring, option, rows[i][j]);
  return m;
}

MatrixOneForm form_matrix(const Ring& ring, const std::string& option, const std::string& text) {
  const auto rows = from_input(option, text, [](const std::string& t) { return split_matrix(t); });
  MatrixOneForm m(rows.size(), rows.front().size(), OneForm(ring));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = form_arg(ring, option, rows[i][j]);
  return m;
}

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json chart_json(const Chart& c) {
  json gens = json::array();
  for (const auto& g : c.generators()) gens.push_back(to_string(g));
  return gens;
}

json pcurvature_json(const PCurvature& pc) {
  json psi = json::array();
  for (const auto& m : pc.psi) psi.push_back(matrix_json(m));
  return psi;
}

json derivation_json(const Derivation& d) {
  json out = json::array();
  for (const auto& c : d.coeffs) out.push_back(to_string(c));
  return out;
}

GroupTag tag_arg(const std::string& text) {
  return from_input("--tag", text, [](const std::string& t) { return GroupTag::parse(t); });
}

// The connection given by --connection, or built from --form/--omega (and
// --omegap) according to --tag.
MatrixOneForm connection_arg(const Options& o, const Ring& ring, Report& r) {
  MatrixOneForm omega(1, 1, OneForm(ring));
  if (!o.connection.empty()) {
    omega = form_matrix(ring, "--connection", o.connection);
    r.inputs["connection"] = o.connection;
  } else {
    const OneForm w = form_arg(ring, "--omega", require(o.form, "--omega or --connection"));
    r.inputs["omega"] = o.form;
    const GroupTag tag = o.tag.empty() ? (o.omegap.empty() ? GroupTag::gm() : GroupTag::aff1()) : tag_arg(o.tag);
    r.inputs["tag"] = tag.name();
    switch (tag.kind()) {
      case GroupTag::Kind::Gm: omega = scalar_connection(w); break;
      case GroupTag::Kind::Ga: omega = ga_connection(w); break;
      case GroupTag::Kind::Aff1:
        r.inputs["omegap"] = o.omegap;
        omega = aff1_connection(w, o.omegap.empty() ? OneForm(ring) : form_arg(ring, "--omegap", o.omegap));
        break;
      case GroupTag::Kind::GL:
        if (tag.rank() != 1) throw UsageError("use --connection for gl(r) with r > 1");
        omega = scalar_connection(w);
        break;
    }
  }
  if (!omega.is_square()) fail(ErrorCode::ShapeViolation, "connection matrices are square");
  if (o.rank && o.rank != omega.rows())
    fail(ErrorCode::ShapeViolation, "--rank " + std::to_string(o.rank) + " but the connection is " +
                                        std::to_string(omega.rows()) + "x" + std::to_string(omega.cols()));
  return omega;
}

std::vector<Chart> charts_arg(const Options& o, const Ring& ring, Report& r) {
  std::vector<Chart> charts;
  json in = json::array();
  for (const auto& c : o.charts) {
    charts.push_back(chart_arg(ring, c));
    in.push_back(c);
  }
  if (!charts.empty()) r.inputs["charts"] = in;
  return charts;
}

void put_verdict(Report& r, const Verdict& v) {
  r.result = {{"accepted", v.accepted}, {"reason", reason_name(v.reason)}, {"detail", v.detail}};
  r.reason = reason_name(v.reason);
  for (const auto& w : v.witnesses) r.witnesses.push_back({{"chart", chart_json(w.chart)}, {"f", to_string(w.f)}});
  if (v.exact_witness) r.witnesses.push_back({{"antiderivative", to_string(*v.exact_witness)}});
  if (v.pcurv_certificate) {
    r.certificates["pcurvature"] = pcurvature_json(*v.pcurv_certificate);
    r.certificates["pcurvature_zero"] = v.pcurv_certificate->is_zero();
  }
  r.exit_code = v.accepted ? kExitOk : kExitRejected;
}

// ---- subcommands ----------------------------------------------------------

void cmd_eval(const Options& o, const Ring& ring, Report& r) {
  const std::string& text = require(o.expr, "--expr");
  r.inputs["expr"] = text;
  const Expr e = from_input("--expr", text, [&](const std::string& t) { return parse_expression(t, ring); });
  const Value v = from_input("--expr", text, [&](const std::string&) { return evaluate(e, ring); });
  r.result = {{"sort", sort_name(e.sort)}, {"canonical", print_expression(e)}};
  std::visit([&](const auto& x) { r.result["value"] = to_string(x); }, v);
  if (const auto* w = std::get_if<OneForm>(&v)) {
    r.certificates["closed"] = is_closed(*w);
    r.certificates["d"] = to_string(d_oneform(*w));
  }
  if (const auto* f = std::get_if<RatFunc>(&v)) r.result["d"] = to_string(d_function(*f));
}

void cmd_poly(const Options& o, const Ring& ring, Report& r) {
  const std::string& op = require(o.op, "--op");
  r.inputs["op"] = op;
  r.inputs["a"] = require(o.a, "-a");
  if (op == "normalize") {
    const RatFunc f = function_arg(ring, "-a", o.a);
    r.result = {{"num", to_string(f.num())}, {"den", to_string(f.den())}};
    return;
  }
  const MultiPoly a = poly_arg(ring, "-a", o.a);
  const auto second = [&] {
    r.inputs["b"] = require(o.b, "-b");
    return poly_arg(ring, "-b", o.b);
  };
  if (op == "add" || op == "sub" || op == "mul" || op == "divexact" || op == "gcd" || op == "lcm") {
    const MultiPoly b = second();
    MultiPoly out(ring);
    if (op == "add") out = a + b;
    if (op == "sub") out = a - b;
    if (op == "mul") out = a * b;
    if (op == "divexact") out = divexact(a, b);
    if (op == "gcd") out = gcd(a, b);
    if (op == "lcm") out = lcm(a, b);
    r.result = to_string(out);
  } else if (op == "diff") {
    if (o.var == 0 || o.var > ring.nvars()) fail(ErrorCode::IndexOutOfRange, "--var is 1-based and at most n");
    r.inputs["var"] = o.var;
    r.result = to_string(partial_derivative(a, o.var - 1));
  } else if (op == "pbasis") {
    r.result = json::array();
    for (const auto& [slot, g] : p_basis_decompose(a)) r.result.push_back({{"slot", to_string(slot)}, {"g", to_string(g)}});
  } else if (op == "pthroot") {
    r.result = to_string(p_th_root(a));
  } else if (op == "sqf") {
    r.result = json::array();
    for (const auto& s : squarefree_decomposition(a))
      r.result.push_back({{"factor", to_string(s.factor)}, {"multiplicity", s.multiplicity}});
  } else {
    throw UsageError("unknown --op '" + op + "'");
  }
}

void cmd_cartier(const Options& o, const Ring& ring, Report& r) {
  const OneForm w = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  const OneForm c = cartier(w);
  r.result = to_string(c);
  if (ring.nvars() == 1) {
    const OneForm oracle = cartier_1var_oracle(w);
    r.certificates["oracle_1var"] = to_string(oracle);
    ensure(oracle == c, "Cartier operator disagrees with the one-variable oracle");
  }
}

void cmd_gamma(const Options& o, const Ring& ring, Report& r) {
  const OneForm eta = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  const OneForm g = gamma(eta);
  r.result = to_string(g);
  const bool inverse = cartier(g) == eta;
  ensure(inverse, "C(gamma(eta)) != eta");
  r.certificates["cartier_of_result_is_input"] = inverse;
}

void cmd_antider(const Options& o, const Ring& ring, Report& r) {
  const OneForm w = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  const RatFunc f = antiderivative(w);
  r.result = to_string(f);
  r.certificates["d_result_is_input"] = d_function(f) == w;
}

void cmd_logwitness(const Options& o, const Ring& ring, Report& r) {
  const OneForm w = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  std::vector<Chart> charts = charts_arg(o, ring, r);
  if (charts.empty()) {
    charts.push_back(derived_chart({w}));
    r.certificates["derived_chart"] = chart_json(charts.back());
  }
  std::optional<RatFunc> first;
  for (const auto& chart : charts) {
    try {
      RatFunc f = log_witness(w, chart);
      r.witnesses.push_back({{"chart", chart_json(chart)}, {"f", to_string(f)}});
      if (!first) first = std::move(f);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoWitnessOnChart) throw;
      r.witnesses.push_back({{"chart", chart_json(chart)}, {"f", nullptr}});
    }
  }
  if (!first) fail(ErrorCode::NoWitnessOnChart, "no chart carries a logarithm of the form");
  r.result = to_string(*first);
  r.certificates["dlog_result_is_input"] = dlog_function(*first) == w;
}

void cmd_dlog(const Options& o, const Ring& ring, Report& r) {
  const RatFunc f = function_arg(ring, "--function", require(o.function, "--function"));
  r.inputs["function"] = o.function;
  const OneForm w = dlog_function(f);
  r.result = to_string(w);
  r.certificates["cartier_fixed"] = cartier(w) == w;
}

void cmd_mc(const Options& o, const Ring& ring, Report& r) {
  const RatMatrix g = function_matrix(ring, "--matrix", require(o.matrix, "--matrix"));
  r.inputs["matrix"] = o.matrix;
  const GroupTag tag = !o.tag.empty()      ? tag_arg(o.tag)
                       : g.rows() == 1     ? GroupTag::gm()
                                           : GroupTag::gl(static_cast<unsigned>(g.rows()));
  r.inputs["tag"] = tag.name();
  const MatrixOneForm mc = maurer_cartan(g, tag);
  r.result = matrix_json(mc);
  r.certificates["determinant"] = to_string(determinant(g));
  r.certificates["flat"] = is_zero(curvature(mc));
}

void cmd_curv(const Options& o, const Ring& ring, Report& r) {
  const MatrixOneForm omega = connection_arg(o, ring, r);
  const MatrixTwoForm c = curvature(omega);
  r.result = matrix_json(c);
  r.certificates["flat"] = is_zero(c);
}

void cmd_pcurv_brute(const Options& o, const Ring& ring, Report& r) {
  const MatrixOneForm omega = connection_arg(o, ring, r);
  const PCurvature pc = pcurvature_brute(omega);
  r.result = {{"psi", pcurvature_json(pc)}};
  r.certificates["zero"] = pc.is_zero();
  if (ring.nvars() == 1 && omega.rows() == 1) {
    const RatFunc oracle = rank1_pcurvature_oracle(omega(0, 0));
    r.certificates["rank1_oracle"] = to_string(oracle);
    ensure(oracle == pc.psi[0](0, 0), "brute p-curvature disagrees with the rank-one oracle");
  }
  if (!o.derivation.empty()) {
    r.inputs["derivation"] = o.derivation;
    const auto parts = from_input("--derivation", o.derivation, [](const std::string& t) { return split_list(t); });
    if (parts.size() != ring.nvars())
      fail(ErrorCode::IndexOutOfRange, "--derivation needs " + std::to_string(ring.nvars()) + " coefficients");
    Derivation d{ring, {}};
    for (const auto& part : parts) d.coeffs.push_back(function_arg(ring, "--derivation", part));
    r.result["derivation_p_power"] = derivation_json(derivation_p_power(d));
    r.result["at"] = matrix_json(pcurvature_at(omega, d));
    r.certificates["p_linear_value"] = matrix_json(pc.evaluate(d));
  }
}

void cmd_pcurv_abelian(const Options& o, const Ring& ring, Report& r) {
  const OneForm w = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  const GroupTag tag = o.tag.empty() ? GroupTag::gm() : tag_arg(o.tag);
  r.inputs["tag"] = tag.name();
  const OneForm eta = pcurvature_abelian(w, tag);
  r.result = to_string(eta);
  const PCurvature brute = pcurvature_brute(tag.kind() == GroupTag::Kind::Ga ? ga_connection(w) : scalar_connection(w));
  const OneForm twisted = frobenius_coefficients(eta);
  bool agrees = true;
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    const RatMatrix& m = brute.psi[i];
    agrees = agrees && (tag.kind() == GroupTag::Kind::Ga ? m(0, 1) : m(0, 0)) == twisted.coeff(i);
  }
  ensure(agrees, "abelian formula disagrees with brute force");
  r.certificates["brute_force_agrees"] = agrees;
}

void cmd_classify(const Options& o, const Ring& ring, Report& r) {
  r.inputs["kind"] = o.kind;
  const OneForm w = form_arg(ring, "--form", require(o.form, "--form"));
  r.inputs["form"] = o.form;
  if (o.kind == "alpha_p") {
    put_verdict(r, classify_alpha_p(w));
    return;
  }
  const std::vector<Chart> charts = charts_arg(o, ring, r);
  if (charts.empty()) r.certificates["derived_chart"] = chart_json(derived_chart({w}));
  if (o.kind == "mu_p") {
    put_verdict(r, classify_mu_p(w, charts));
    return;
  }
  const OneForm wp = form_arg(ring, "--omegap", require(o.omegap, "--omegap"));
  r.inputs["omegap"] = o.omegap;
  std::vector<ChartWitness> extra;
  json in = json::array();
  for (const auto& text : o.witnesses) {
    extra.push_back(witness_arg(ring, text));
    in.push_back(text);
  }
  if (!extra.empty()) r.inputs["witnesses"] = in;
  put_verdict(r, classify_aff1(w, wp, charts, extra));
}

void cmd_boundary(const Options& o, const Ring& ring, Report& r) {
  const GroupTag tag = tag_arg(require(o.tag, "--tag"));
  r.inputs["tag"] = tag.name();
  RatMatrix g(1, 1, RatFunc(ring));
  if (!o.matrix.empty()) {
    g = function_matrix(ring, "--matrix", o.matrix);
    r.inputs["matrix"] = o.matrix;
  } else {
    g(0, 0) = function_arg(ring, "--function", require(o.function, "--function or --matrix"));
    r.inputs["function"] = o.function;
  }
  const TorsorPresentation tp = boundary_torsor(g, tag);
  json equations = json::array();
  for (const auto& e : tp.equations) equations.push_back(e.variable + "^" + std::to_string(ring.p()) + " = " + to_string(e.rhs));
  json forms = json::array();
  for (const auto& w : tp.form_data) forms.push_back(to_string(w));
  r.result = {{"kind", torsor_kind_name(tp.kind)}, {"chart", chart_json(tp.chart)}, {"equations", equations},
              {"forms", forms}};

  const MatrixOneForm mc = maurer_cartan(g, tag);
  bool matches = tp.form_data[0] == mc(0, 0);
  Verdict v;
  if (tp.kind == TorsorKind::MuP) v = classify_mu_p(tp.form_data[0], {tp.chart});
  if (tp.kind == TorsorKind::AlphaP) v = classify_alpha_p(tp.form_data[0]);
  if (tp.kind == TorsorKind::Aff1F) {
    matches = matches && tp.form_data[1] == mc(0, 1);
    v = classify_aff1(tp.form_data[0], tp.form_data[1], {tp.chart});
  }
  r.certificates["matches_maurer_cartan"] = matches;
  r.certificates["classifier_accepts"] = v.accepted;
  ensure(matches && v.accepted, "boundary torsor round trip failed");
}

void cmd_cocycle(const Options& o, const Ring& ring, Report& r) {
  if (o.witnesses.empty()) throw UsageError("missing --witness");
  std::vector<ChartWitness> ws;
  json in = json::array();
  for (const auto& text : o.witnesses) {
    ws.push_back(witness_arg(ring, text));
    in.push_back(text);
  }
  r.inputs["witnesses"] = in;
  const auto u = kummer_cocycle(ws);
  r.result = json::object();
  bool laws = true;
  for (const auto& [ij, value] : u) {
    if (ij.first == ij.second) continue;
    r.result["u_" + std::to_string(ij.first + 1) + "_" + std::to_string(ij.second + 1)] = to_string(value);
    laws = laws && value.frobenius() == ws[ij.first].f / ws[ij.second].f;
    for (std::size_t k = 0; k < ws.size(); ++k) laws = laws && value * u.at({ij.second, k}) == u.at({ij.first, k});
  }
  ensure(laws, "cocycle laws fail");
  r.certificates["cocycle_laws"] = laws;
}

void cmd_crosscheck(const Options& o, Report& r, std::string& err) {
  r.inputs = {{"battery", o.battery}, {"seed", o.seed}, {"trials", o.trials}};
  std::vector<std::string> names;
  if (o.battery == "all")
    names = battery_names();
  else
    names.push_back(o.battery);
  r.result = json::array();
  bool ok = true;
  for (const auto& name : names) {
    const BatteryResult b = run_battery(name, o.seed, o.trials);
    ok = ok && b.passed();
    r.result.push_back({{"battery", b.name},
                        {"trials", b.trials},
                        {"failures", b.failures},
                        {"skipped", b.skipped},
                        {"note", b.note},
                        {"samples", b.samples}});
    std::ostringstream timing;
    timing << name << ": " << b.seconds << " s\n";
    err += timing.str();
  }
  r.reason = ok ? "OK" : "DiscrepancyFound";
  r.exit_code = ok ? kExitOk : kExitRejected;
}

// ---- output ------------------------------------------------------------------

bool is_string_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!e.is_string()) return false;
  return true;
}

bool is_string_matrix(const json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!is_string_array(e) || e.empty()) return false;
  return true;
}

void flatten(const json& j, const std::string& key, std::string& out) {
  if (j.is_null()) return;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
    return;
  }
  if (is_string_matrix(j)) {
    std::string text;
    for (const auto& row : j) {
      if (!text.empty()) text += "; ";
      std::string line;
      for (const auto& e : row) line += (line.empty() ? "" : ", ") + e.get<std::string>();
      text += line;
    }
    out += key + ": [" + text + "]\n";
    return;
  }
  if (is_string_array(j)) {
    std::string text;
    for (const auto& e : j) text += (text.empty() ? "" : ", ") + e.get<std::string>();
    out += key + ": [" + text + "]\n";
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
    return;
  }
  out += key + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
}

json document(const std::string& command, const Options& o) {
  json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["p"] = o.p;
  doc["nvars"] = o.n;
  return doc;
}

std::string render(json doc, bool as_json) {
  if (as_json) return doc.dump(2) + "\n";
  doc.erase("schema");
  std::string out;
  flatten(doc, "", out);
  return out;
}

std::uint32_t max_prime_from_env() {
  const char* env = std::getenv("CHARP_MAX_P");
  if (!env || !*env) return 31;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end || v < 3) return 31;
  return static_cast<std::uint32_t>(std::min<unsigned long>(v, Ring::kMaxPrime));
}

const std::vector<std::string> kCommands = {"eval",         "poly",       "cartier",       "gamma",    "antider",
                                            "logwitness",   "dlog",       "mc",            "curv",     "pcurv-brute",
                                            "pcurv-abelian", "classify",  "boundary",      "cocycle",  "crosscheck"};

}  // namespace

const std::vector<std::string>& cli_subcommands() { return kCommands; }

CliResult run_cli(const std::vector<std::string>& args, const std::function<std::string()>& read_stdin) {
  CliResult res;
  Options o;
  CLI::App app{"Exact computations with differential forms, the Cartier operator and p-curvature over F_p", "charp"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "charp 1.0");

  const auto common = [&](CLI::App* sub) {
    sub->add_option("-p,--prime", o.p, "odd prime characteristic (default 3)");
    sub->add_option("-n,--nvars", o.n, "number of variables, 1..4 (default 1)");
    sub->add_flag("--json", o.json, "emit the JSON document");
    sub->add_flag("--stdin", o.use_stdin, "read the primary expression from standard input");
  };
  const auto repeatable = [](CLI::App* sub, const std::string& name, std::vector<std::string>& target,
                             const std::string& help) {
    sub->add_option(name, target, help)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  };
  std::map<std::string, std::string*> primary;
  const auto add = [&](const std::string& name, const std::string& help, std::string* primary_input) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    if (primary_input) primary[name] = primary_input;
    return sub;
  };

  auto* eval = add("eval", "parse, print canonically and evaluate an expression", &o.expr);
  eval->add_option("-e,--expr", o.expr, "expression");
  auto* poly = add("poly", "polynomial kernel operations", &o.a);
  poly->add_option("--op", o.op, "add|sub|mul|divexact|gcd|lcm|diff|pbasis|pthroot|sqf|normalize");
  poly->add_option("-a", o.a, "first operand");
  poly->add_option("-b", o.b, "second operand");
  poly->add_option("--var", o.var, "variable index for diff (1-based)");
  for (const char* name : {"cartier", "gamma", "antider"}) {
    auto* sub = add(name, std::string(name) == "cartier" ? "Cartier operator of a closed 1-form"
                          : std::string(name) == "gamma" ? "inverse Cartier lift g dx_i -> g^p x_i^(p-1) dx_i"
                                                         : "antiderivative of a closed form with C = 0",
                    &o.form);
    sub->add_option("--form,--omega", o.form, "1-form");
  }
  auto* logw = add("logwitness", "unit f on a chart with dlog f = form", &o.form);
  logw->add_option("--form,--omega", o.form, "1-form");
  repeatable(logw, "--chart", o.charts, "comma-separated chart generators (repeatable)");
  auto* dlog = add("dlog", "logarithmic differential df/f", &o.function);
  dlog->add_option("-f,--function", o.function, "rational function");
  auto* mc = add("mc", "Maurer-Cartan form g^-1 dg", &o.matrix);
  mc->add_option("--matrix", o.matrix, "matrix \"a, b; c, d\"");
  mc->add_option("--tag", o.tag, "g_m, g_a, aff1 or gl(r)");
  for (const char* name : {"curv", "pcurv-brute"}) {
    auto* sub = add(name, std::string(name) == "curv" ? "curvature dW + W ^ W" : "p-curvature by operator iteration",
                    &o.connection);
    sub->add_option("--connection", o.connection, "matrix of 1-forms \"a, b; c, d\"");
    sub->add_option("--omega,--form", o.form, "1-form, embedded according to --tag");
    sub->add_option("--omegap", o.omegap, "second aff1 form");
    sub->add_option("--tag", o.tag, "g_m, g_a, aff1 or gl(1)");
    sub->add_option("--rank", o.rank, "expected matrix size");
    if (std::string(name) == "pcurv-brute")
      sub->add_option("--derivation", o.derivation, "coefficients \"f1, ..., fn\" of a vector field");
  }
  auto* pab = add("pcurv-abelian", "closed-form p-curvature for g_m and g_a", &o.form);
  pab->add_option("--form,--omega", o.form, "closed 1-form");
  pab->add_option("--tag", o.tag, "g_m or g_a");
  auto* cls = add("classify", "decide whether forms come from mu_p, alpha_p or aff1 Frobenius-kernel torsors", &o.form);
  cls->add_option("kind", o.kind, "mu_p, alpha_p or aff1")->required()->check(CLI::IsMember({"mu_p", "alpha_p", "aff1"}));
  cls->add_option("--form,--omega", o.form, "1-form w");
  cls->add_option("--omegap", o.omegap, "second form w' (aff1)");
  repeatable(cls, "--chart", o.charts, "comma-separated chart generators (repeatable)");
  repeatable(cls, "--witness", o.witnesses, "\"generators : f\" logarithmic witness (aff1, repeatable)");
  auto* bnd = add("boundary", "torsor equations and forms of a group element", &o.matrix);
  bnd->add_option("--tag", o.tag, "g_m, g_a or aff1");
  bnd->add_option("--matrix", o.matrix, "group element as a matrix");
  bnd->add_option("-f,--function", o.function, "scalar group element for g_m or g_a");
  auto* coc = add("cocycle", "Kummer gluing units from local logarithms", nullptr);
  repeatable(coc, "--witness", o.witnesses, "\"generators : f\" (repeatable)");
  auto* cross = add("crosscheck", "randomized consistency batteries", nullptr);
  cross->add_option("--battery", o.battery, "battery name or all");
  cross->add_option("--trials", o.trials, "instances per configuration (0 = default)");
  cross->add_option("--seed", o.seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::ostringstream cli_out, cli_err;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    res.exit_code = app.exit(e, cli_out, cli_err) == 0 ? kExitOk : kExitInputError;
    res.out = cli_out.str();
    res.err = cli_err.str();
    return res;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json doc = document(command, o);
  try {
    if (o.p > max_prime_from_env())
      throw UsageError("p = " + std::to_string(o.p) + " exceeds the soft cap " + std::to_string(max_prime_from_env()) +
                       " (set CHARP_MAX_P to raise it)");
    const Ring ring = Ring::create(o.p, o.n);
    if (o.use_stdin) {
      auto it = primary.find(command);
      if (it == primary.end()) throw UsageError(command + " has no primary expression for --stdin");
      std::string text = read_stdin();
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      *it->second = text;
    }

    Report r;
    if (command == "eval") cmd_eval(o, ring, r);
    if (command == "poly") cmd_poly(o, ring, r);
    if (command == "cartier") cmd_cartier(o, ring, r);
    if (command == "gamma") cmd_gamma(o, ring, r);
    if (command == "antider") cmd_antider(o, ring, r);
    if (command == "logwitness") cmd_logwitness(o, ring, r);
    if (command == "dlog") cmd_dlog(o, ring, r);
    if (command == "mc") cmd_mc(o, ring, r);
    if (command == "curv") cmd_curv(o, ring, r);
    if (command == "pcurv-brute") cmd_pcurv_brute(o, ring, r);
    if (command == "pcurv-abelian") cmd_pcurv_abelian(o, ring, r);
    if (command == "classify") cmd_classify(o, ring, r);
    if (command == "boundary") cmd_boundary(o, ring, r);
    if (command == "cocycle") cmd_cocycle(o, ring, r);
    if (command == "crosscheck") cmd_crosscheck(o, r, res.err);

    doc["inputs"] = r.inputs;
    doc["result"] = r.result;
    doc["certificates"] = r.certificates;
    doc["witnesses"] = r.witnesses;
    doc["reason"] = r.reason.empty() ? json(nullptr) : json(r.reason);
    res.exit_code = r.exit_code;
    res.out = render(doc, o.json);
  } catch (const Error& e) {
    res.exit_code = e.code() == ErrorCode::InternalAssertion ? kExitInternal : kExitInputError;
    doc["error"] = {{"code", std::string(error_name(e.code()))}, {"message", strip_code(e)}};
    if (o.json)
      res.out = render(doc, true);
    res.err += std::string("error: ") + e.what() + "\n";
  } catch (const UsageError& e) {
    res.exit_code = kExitInputError;
    doc["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    if (o.json) res.out = render(doc, true);
    res.err += std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = kExitInternal;
    res.err += std::string("internal error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace charp
