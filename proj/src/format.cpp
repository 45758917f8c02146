#include "charp/format.hpp"

namespace charp {

namespace {

bool needs_parens(const MultiPoly& f) { return f.size() > 1; }

// A divisor prints bare only when it is a power of a single variable (or a
// constant); "x/y*z" would divide by y alone.
std::string divisor(const MultiPoly& f) {
  bool bare = f.size() == 1 && f.leading_coeff() == 1;
  if (bare) {
    unsigned vars = 0;
    for (auto e : f.terms()[0].mono.exps) vars += e != 0;
    bare = vars <= 1;
  }
  return bare ? to_string(f) : "(" + to_string(f) + ")";
}

std::string numerator(const MultiPoly& f) { return needs_parens(f) ? "(" + to_string(f) + ")" : to_string(f); }

// A coefficient in front of a form atom: "", "2*", "x*", "(x + 1)*",
// "(x + 1)/x*".
std::string coefficient_prefix(const RatFunc& c) {
  if (c.is_one()) return "";
  if (c.den().is_one()) return numerator(c.num()) + "*";
  return numerator(c.num()) + "/" + divisor(c.den()) + "*";
}

template <class T>
std::string matrix_string(const Matrix<T>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += to_string(m(i, j));
    }
  }
  return out;
}

}  // namespace

std::string variable_name(unsigned var) {
  static constexpr const char* kNames[] = {"x", "y", "z", "w"};
  return kNames[var];
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (unsigned i = 0; i < m.exps.size(); ++i) {
    if (!m.exps[i]) continue;
    if (!out.empty()) out += "*";
    out += variable_name(i);
    if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    if (t.mono.is_one())
      out += std::to_string(t.coeff);
    else if (t.coeff == 1)
      out += to_string(t.mono);
    else
      out += std::to_string(t.coeff) + "*" + to_string(t.mono);
  }
  return out;
}

std::string to_string(const RatFunc& f) {
  if (f.den().is_one()) return to_string(f.num());
  return numerator(f.num()) + "/" + divisor(f.den());
}

std::string to_string(const OneForm& w) {
  std::string out;
  for (unsigned i = 0; i < w.ring().nvars(); ++i) {
    if (w.coeff(i).is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += coefficient_prefix(w.coeff(i)) + "d" + variable_name(i);
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const TwoForm& w) {
  std::string out;
  for (unsigned i = 0; i < w.ring().nvars(); ++i)
    for (unsigned j = i + 1; j < w.ring().nvars(); ++j) {
      if (w.coeff(i, j).is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += coefficient_prefix(w.coeff(i, j)) + "d" + variable_name(i) + "^d" + variable_name(j);
    }
  return out.empty() ? "0" : out;
}

std::string to_string(const Chart& c) {
  std::string out;
  for (const auto& g : c.generators()) {
    if (!out.empty()) out += ", ";
    out += to_string(g);
  }
  return out;
}

std::string to_string(const RatMatrix& m) { return matrix_string(m); }
std::string to_string(const MatrixOneForm& m) { return matrix_string(m); }
std::string to_string(const MatrixTwoForm& m) { return matrix_string(m); }

}  // namespace charp
