#include "charp/connections.hpp"

#include <cctype>

#include "charp/cartier.hpp"
#include "charp/gcd.hpp"

namespace charp {

namespace {

using PolyColumn = std::vector<MultiPoly>;

void require_square(const RatMatrix& m, const char* what) {
  if (!m.is_square()) fail(ErrorCode::ShapeViolation, std::string(what) + " needs a square matrix");
}

Ring ring_of(const MatrixOneForm& omega) {
  ensure(!omega.entries().empty(), "empty connection matrix");
  return omega(0, 0).ring();
}

// Common denominator q of a list of rational functions, and the numerators
// over it.
MultiPoly common_denominator(const Ring& ring, const std::vector<const RatFunc*>& items) {
  MultiPoly q = MultiPoly::constant(ring, 1);
  for (const RatFunc* f : items)
    if (!f->is_zero() && !f->den().is_one()) q = lcm(q, f->den());
  return q;
}

MultiPoly numerator_over(const RatFunc& f, const MultiPoly& q) {
  if (f.is_zero()) return MultiPoly(f.ring());
  return f.num() * (f.den().is_one() ? q : divexact(q, f.den()));
}

Matrix<MultiPoly> numerators_over(const RatMatrix& a, const MultiPoly& q) {
  Matrix<MultiPoly> out(a.rows(), a.cols(), MultiPoly(q.ring()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = numerator_over(a(i, j), q);
  return out;
}

PolyColumn mat_vec(const Matrix<MultiPoly>& m, const PolyColumn& v) {
  PolyColumn out(m.rows(), MultiPoly(v.front().ring()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

PolyColumn unit_column(const Ring& ring, std::size_t r, std::size_t k) {
  PolyColumn v(r, MultiPoly(ring));
  v[k] = MultiPoly::constant(ring, 1);
  return v;
}

}  // namespace

RatMatrix identity_matrix(Ring ring, std::size_t r) {
  RatMatrix m(r, r, RatFunc(ring));
  for (std::size_t i = 0; i < r; ++i) m(i, i) = RatFunc::constant(ring, 1);
  return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::ShapeViolation, "matrix product with mismatched shapes");
  const Ring& ring = a(0, 0).ring();
  RatMatrix out(a.rows(), b.cols(), RatFunc(ring));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorCode::ShapeViolation, "matrix sum with mismatched shapes");
  RatMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::ShapeViolation, "matrix difference with mismatched shapes");
  RatMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

RatMatrix scaled(const RatFunc& f, const RatMatrix& m) {
  RatMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f * m(i, j);
  return out;
}

bool is_zero(const RatMatrix& m) {
  for (const auto& e : m.entries())
    if (!e.is_zero()) return false;
  return true;
}

bool is_zero(const MatrixOneForm& m) {
  for (const auto& e : m.entries())
    if (!e.is_zero()) return false;
  return true;
}

bool is_zero(const MatrixTwoForm& m) {
  for (const auto& e : m.entries())
    if (!e.is_zero()) return false;
  return true;
}

RatFunc determinant(const RatMatrix& m) {
  require_square(m, "determinant");
  const Ring& ring = m(0, 0).ring();
  RatMatrix a = m;
  const std::size_t r = a.rows();
  RatFunc det = RatFunc::constant(ring, 1);
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t pivot = c;
    while (pivot < r && a(pivot, c).is_zero()) ++pivot;
    if (pivot == r) return RatFunc(ring);
    if (pivot != c) {
      for (std::size_t j = 0; j < r; ++j) std::swap(a(c, j), a(pivot, j));
      det = -det;
    }
    det *= a(c, c);
    const RatFunc inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < r; ++i) {
      if (a(i, c).is_zero()) continue;
      const RatFunc factor = a(i, c) * inv;
      for (std::size_t j = c; j < r; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  require_square(m, "inverse");
  const Ring& ring = m(0, 0).ring();
  const std::size_t r = m.rows();
  RatMatrix a = m;
  RatMatrix inv = identity_matrix(ring, r);
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t pivot = c;
    while (pivot < r && a(pivot, c).is_zero()) ++pivot;
    if (pivot == r) fail(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (pivot != c)
      for (std::size_t j = 0; j < r; ++j) {
        std::swap(a(c, j), a(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    const RatFunc scale = a(c, c).inverse();
    for (std::size_t j = 0; j < r; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const RatFunc factor = a(i, c);
      for (std::size_t j = 0; j < r; ++j) {
        a(i, j) -= factor * a(c, j);
        inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix frobenius_entries(const RatMatrix& m) {
  RatMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).frobenius();
  return out;
}

GroupTag GroupTag::gl(unsigned r) {
  if (r == 0) fail(ErrorCode::ShapeViolation, "gl(0) is not a group");
  return GroupTag(Kind::GL, r);
}

GroupTag GroupTag::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "g_m" || t == "gm") return gm();
  if (t == "g_a" || t == "ga") return ga();
  if (t == "aff1" || t == "aff(1)") return aff1();
  std::string digits;
  if (t.rfind("gl(", 0) == 0 && t.size() > 4 && t.back() == ')')
    digits = t.substr(3, t.size() - 4);
  else if (t.rfind("gl", 0) == 0)
    digits = t.substr(2);
  if (!digits.empty() && digits.size() < 4 &&
      std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return gl(static_cast<unsigned>(std::stoul(digits)));
  fail(ErrorCode::ShapeViolation, "unknown group tag '" + text + "' (expected g_m, g_a, aff1 or gl(r))");
}

std::string GroupTag::name() const {
  switch (kind_) {
    case Kind::Gm: return "g_m";
    case Kind::Ga: return "g_a";
    case Kind::Aff1: return "aff1";
    case Kind::GL: return "gl(" + std::to_string(rank_) + ")";
  }
  return "?";
}

Matrix<Coeff> GroupTag::lie_p_power(const Ring& ring, const Matrix<Coeff>& x) const {
  if (x.rows() != rank_ || x.cols() != rank_) fail(ErrorCode::ShapeViolation, "Lie algebra element of wrong size");
  switch (kind_) {
    case Kind::Gm: return x;  // c^p = c in F_p
    case Kind::Ga: return Matrix<Coeff>(1, 1, 0);
    case Kind::GL:
    case Kind::Aff1: break;
  }
  const std::size_t r = rank_;
  Matrix<Coeff> result(r, r, 0);
  for (std::size_t i = 0; i < r; ++i) result(i, i) = 1;
  for (std::uint32_t step = 0; step < ring.p(); ++step) {
    Matrix<Coeff> next(r, r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < r; ++j) next(i, j) = ring.add(next(i, j), ring.mul(result(i, k), x(k, j)));
    result = next;
  }
  return result;
}

void GroupTag::check_lie_shape(const MatrixOneForm& omega) const {
  if (omega.rows() != rank_ || omega.cols() != rank_)
    fail(ErrorCode::ShapeViolation, name() + " connections are " + std::to_string(rank_) + "x" + std::to_string(rank_));
  if (kind_ == Kind::Aff1 && !(omega(1, 0).is_zero() && omega(1, 1).is_zero()))
    fail(ErrorCode::ShapeViolation, "aff1 connections have a zero second row");
}

Derivation Derivation::coordinate(Ring ring, unsigned var) {
  if (var >= ring.nvars()) fail(ErrorCode::IndexOutOfRange, "coordinate derivation outside ambient space");
  Derivation d{ring, std::vector<RatFunc>(ring.nvars(), RatFunc(ring))};
  d.coeffs[var] = RatFunc::constant(ring, 1);
  return d;
}

RatFunc Derivation::apply(const RatFunc& f) const {
  RatFunc out(ring);
  for (unsigned i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) out += coeffs[i] * partial_derivative(f, i);
  return out;
}

bool Derivation::is_zero() const noexcept {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

RatMatrix PCurvature::evaluate(const Derivation& d) const {
  ensure(!psi.empty(), "empty p-curvature");
  RatMatrix out(psi[0].rows(), psi[0].cols(), RatFunc(ring));
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (!d.coeffs.at(i).is_zero()) out = out + scaled(twisted ? d.coeffs[i].frobenius() : d.coeffs[i], psi[i]);
  return out;
}

bool PCurvature::is_zero() const {
  for (const auto& m : psi)
    if (!charp::is_zero(m)) return false;
  return true;
}

MatrixOneForm scalar_connection(const OneForm& w) { return MatrixOneForm(1, 1, w); }

MatrixOneForm ga_connection(const OneForm& w) {
  MatrixOneForm m(2, 2, OneForm(w.ring()));
  m(0, 1) = w;
  return m;
}

MatrixOneForm aff1_connection(const OneForm& w, const OneForm& w_prime) {
  require_same_ring(w.ring(), w_prime.ring());
  MatrixOneForm m(2, 2, OneForm(w.ring()));
  m(0, 0) = w;
  m(0, 1) = w_prime;
  return m;
}

RatMatrix coefficient_matrix(const MatrixOneForm& omega, unsigned var) {
  const Ring ring = ring_of(omega);
  RatMatrix a(omega.rows(), omega.cols(), RatFunc(ring));
  for (std::size_t i = 0; i < omega.rows(); ++i)
    for (std::size_t j = 0; j < omega.cols(); ++j) a(i, j) = omega(i, j).coeff(var);
  return a;
}

RatMatrix contract(const MatrixOneForm& omega, const Derivation& d) {
  const Ring ring = ring_of(omega);
  RatMatrix out(omega.rows(), omega.cols(), RatFunc(ring));
  for (unsigned v = 0; v < ring.nvars(); ++v)
    if (!d.coeffs.at(v).is_zero()) out = out + scaled(d.coeffs[v], coefficient_matrix(omega, v));
  return out;
}

MatrixOneForm maurer_cartan(const RatMatrix& g, const GroupTag& tag) {
  if (g.entries().empty()) fail(ErrorCode::ShapeViolation, "empty group element");
  const Ring ring = g(0, 0).ring();
  const auto d_entries = [&](const RatMatrix& m) {
    MatrixOneForm out(m.rows(), m.cols(), OneForm(ring));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = d_function(m(i, j));
    return out;
  };
  const auto product = [&](const RatMatrix& a, const MatrixOneForm& b) {
    MatrixOneForm out(a.rows(), b.cols(), OneForm(ring));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (!a(i, k).is_zero())
          for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  };

  switch (tag.kind()) {
    case GroupTag::Kind::Gm:
      if (g.rows() != 1 || g.cols() != 1) fail(ErrorCode::ShapeViolation, "g_m elements are 1x1");
      if (g(0, 0).is_zero()) fail(ErrorCode::SingularMatrix, "0 is not a unit");
      return scalar_connection(dlog_function(g(0, 0)));
    case GroupTag::Kind::Ga:
      if (g.rows() == 1 && g.cols() == 1) return scalar_connection(d_function(g(0, 0)));
      if (g.rows() != 2 || g.cols() != 2 || !g(0, 0).is_one() || !g(1, 1).is_one() || !g(1, 0).is_zero())
        fail(ErrorCode::ShapeViolation, "g_a elements are a 1x1 coordinate or ((1, a), (0, 1))");
      return ga_connection(d_function(g(0, 1)));
    case GroupTag::Kind::Aff1:
      if (g.rows() != 2 || g.cols() != 2 || !g(1, 0).is_zero() || !g(1, 1).is_one())
        fail(ErrorCode::ShapeViolation, "aff1 elements have the form ((f, f'), (0, 1))");
      if (g(0, 0).is_zero()) fail(ErrorCode::SingularMatrix, "aff1 element with f = 0");
      break;
    case GroupTag::Kind::GL:
      if (g.rows() != tag.rank() || g.cols() != tag.rank())
        fail(ErrorCode::ShapeViolation, tag.name() + " elements are " + std::to_string(tag.rank()) + "x" +
                                            std::to_string(tag.rank()));
      break;
  }
  MatrixOneForm result = product(inverse(g), d_entries(g));
  tag.check_lie_shape(result);
  return result;
}

MatrixTwoForm curvature(const MatrixOneForm& omega) {
  if (!omega.is_square()) fail(ErrorCode::ShapeViolation, "connection matrices are square");
  const Ring ring = ring_of(omega);
  const std::size_t r = omega.rows();
  MatrixTwoForm out(r, r, TwoForm(ring));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      TwoForm entry = d_oneform(omega(i, k));
      for (std::size_t j = 0; j < r; ++j)
        if (!omega(i, j).is_zero() && !omega(j, k).is_zero()) entry += wedge(omega(i, j), omega(j, k));
      out(i, k) = std::move(entry);
    }
  return out;
}

Derivation derivation_p_power(const Derivation& d) {
  Derivation out{d.ring, {}};
  for (unsigned j = 0; j < d.ring.nvars(); ++j) {
    RatFunc value = RatFunc::variable(d.ring, j);
    for (std::uint32_t k = 0; k < d.ring.p(); ++k) value = d.apply(value);
    out.coeffs.push_back(std::move(value));
  }
  return out;
}

PCurvature pcurvature_brute(const MatrixOneForm& omega) {
  if (!omega.is_square()) fail(ErrorCode::ShapeViolation, "connection matrices are square");
  const Ring ring = ring_of(omega);
  const std::size_t r = omega.rows();
  PCurvature out{ring, {}, true};
  for (unsigned var = 0; var < ring.nvars(); ++var) {
    const RatMatrix a = coefficient_matrix(omega, var);
    std::vector<const RatFunc*> items;
    for (const auto& e : a.entries()) items.push_back(&e);
    const MultiPoly q = common_denominator(ring, items);
    const MultiPoly dq = partial_derivative(q, var);
    const Matrix<MultiPoly> m = numerators_over(a, q);

    RatMatrix psi(r, r, RatFunc(ring));
    for (std::size_t col = 0; col < r; ++col) {
      // v = V / q^k, and (d + A)(V / q^k) = (q V' - k q' V + M V) / q^(k+1).
      PolyColumn v = unit_column(ring, r, col);
      for (std::uint32_t k = 0; k < ring.p(); ++k) {
        PolyColumn mv = mat_vec(m, v);
        for (std::size_t i = 0; i < r; ++i) {
          MultiPoly next = q * partial_derivative(v[i], var) + mv[i];
          if (!dq.is_zero() && k % ring.p() != 0) next -= (dq * v[i]).scaled(k % ring.p());
          v[i] = std::move(next);
        }
      }
      for (std::size_t i = 0; i < r; ++i) psi(i, col) = over_pth_power(v[i], q);
    }
    out.psi.push_back(std::move(psi));
  }
  return out;
}

RatMatrix pcurvature_at(const MatrixOneForm& omega, const Derivation& d) {
  if (!omega.is_square()) fail(ErrorCode::ShapeViolation, "connection matrices are square");
  const Ring ring = ring_of(omega);
  require_same_ring(ring, d.ring);
  const std::size_t r = omega.rows();
  const RatMatrix b = contract(omega, d);

  std::vector<const RatFunc*> items;
  for (const auto& c : d.coeffs) items.push_back(&c);
  for (const auto& e : b.entries()) items.push_back(&e);
  const MultiPoly q = common_denominator(ring, items);
  std::vector<MultiPoly> dnum, dq;
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    dnum.push_back(numerator_over(d.coeffs[i], q));
    dq.push_back(partial_derivative(q, i));
  }
  const Matrix<MultiPoly> m = numerators_over(b, q);

  // v = V / q^k; D = (sum d_i d/dx_i) / q and B = M / q give
  // (D + B)(V / q^k) = (sum_i d_i (q dV/dx_i - k dq/dx_i V) + q M V) / q^(k+2).
  RatMatrix power(r, r, RatFunc(ring));
  const MultiPoly q2 = q * q;
  for (std::size_t col = 0; col < r; ++col) {
    PolyColumn v = unit_column(ring, r, col);
    for (std::uint32_t step = 0; step < ring.p(); ++step) {
      const Coeff k = ring.reduce(2 * std::int64_t{step});
      PolyColumn mv = mat_vec(m, v);
      for (std::size_t i = 0; i < r; ++i) {
        MultiPoly next = q * mv[i];
        for (unsigned j = 0; j < ring.nvars(); ++j) {
          if (dnum[j].is_zero()) continue;
          MultiPoly inner = q * partial_derivative(v[i], j);
          if (k && !dq[j].is_zero()) inner -= (dq[j] * v[i]).scaled(k);
          next += dnum[j] * inner;
        }
        v[i] = std::move(next);
      }
    }
    for (std::size_t i = 0; i < r; ++i) power(i, col) = over_pth_power(v[i], q2);
  }
  // D^p kills constant columns, so only Omega(D^p) remains to subtract.
  return power - contract(omega, derivation_p_power(d));
}

OneForm pcurvature_abelian(const OneForm& w, const GroupTag& tag) {
  if (!tag.is_abelian()) fail(ErrorCode::NotAbelian, tag.name() + " is not abelian");
  if (w.ring().p() == 2) fail(ErrorCode::CharTwo, "the abelian formula assumes p != 2");
  const OneForm c = cartier(w);
  const Coeff unit_power = tag.lie_p_power(w.ring(), Matrix<Coeff>(1, 1, 1))(0, 0);
  return unit_power ? w - c : -c;
}

RatFunc rank1_pcurvature_oracle(const OneForm& w) {
  const Ring& ring = w.ring();
  if (ring.nvars() != 1) fail(ErrorCode::IndexOutOfRange, "the rank-one oracle needs n = 1");
  const RatFunc& a = w.coeff(0);
  if (a.is_zero()) return RatFunc(ring);
  // a = N / D. Differentiate N / D^k by the quotient rule p - 1 times, which
  // lands on U / D^p, then add a^p = N^p / D^p.
  const MultiPoly& den = a.den();
  const MultiPoly dden = partial_derivative(den, 0);
  MultiPoly u = a.num();
  for (std::uint32_t k = 1; k < ring.p(); ++k)
    u = den * partial_derivative(u, 0) - (dden * u).scaled(k);
  return RatFunc::fraction(a.num().frobenius() + u, den.frobenius());
}

}  // namespace charp
