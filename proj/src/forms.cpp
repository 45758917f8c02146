#include "charp/forms.hpp"

#include <string>

#include "charp/error.hpp"

namespace charp {

OneForm::OneForm(Ring ring, std::vector<RatFunc> coeffs) : ring_(ring), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ring.nvars())
    fail(ErrorCode::IndexOutOfRange, "1-form needs " + std::to_string(ring.nvars()) + " coefficients, got " +
                                         std::to_string(coeffs_.size()));
  for (const auto& c : coeffs_) require_same_ring(ring_, c.ring());
}

OneForm OneForm::basis(Ring ring, unsigned var, RatFunc f) {
  if (var >= ring.nvars()) fail(ErrorCode::IndexOutOfRange, "dx" + std::to_string(var + 1) + " outside ambient space");
  OneForm w(ring);
  w.coeffs_[var] = std::move(f);
  return w;
}

bool OneForm::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

OneForm OneForm::operator-() const {
  OneForm r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

OneForm& OneForm::operator+=(const OneForm& rhs) {
  require_same_ring(ring_, rhs.ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& rhs) {
  require_same_ring(ring_, rhs.ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

OneForm operator*(const RatFunc& f, const OneForm& w) {
  OneForm r = w;
  for (auto& c : r.coeffs_) c = f * c;
  return r;
}

TwoForm::TwoForm(Ring ring) : ring_(ring), coeffs_(ring.nvars() * (ring.nvars() - 1) / 2, RatFunc(ring)) {}

std::size_t TwoForm::slot(unsigned i, unsigned j) const {
  const unsigned n = ring_.nvars();
  if (!(i < j && j < n)) fail(ErrorCode::IndexOutOfRange, "2-form index pair must satisfy i < j < n");
  // Row-major strict upper triangle.
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

void TwoForm::accumulate(unsigned a, unsigned b, const RatFunc& f) {
  if (a == b || f.is_zero()) return;
  if (a < b)
    coeffs_[slot(a, b)] += f;
  else
    coeffs_[slot(b, a)] -= f;
}

bool TwoForm::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

TwoForm TwoForm::operator-() const {
  TwoForm r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TwoForm& TwoForm::operator+=(const TwoForm& rhs) {
  require_same_ring(ring_, rhs.ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& rhs) {
  require_same_ring(ring_, rhs.ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

TwoForm operator*(const RatFunc& f, const TwoForm& w) {
  TwoForm r = w;
  for (auto& c : r.coeffs_) c = f * c;
  return r;
}

OneForm d_function(const RatFunc& f) {
  const Ring& ring = f.ring();
  std::vector<RatFunc> cs;
  cs.reserve(ring.nvars());
  for (unsigned i = 0; i < ring.nvars(); ++i) cs.push_back(partial_derivative(f, i));
  return OneForm(ring, std::move(cs));
}

TwoForm d_oneform(const OneForm& w) {
  const Ring& ring = w.ring();
  TwoForm out(ring);
  for (unsigned i = 0; i < ring.nvars(); ++i)
    for (unsigned j = i + 1; j < ring.nvars(); ++j)
      out.set(i, j, partial_derivative(w.coeff(j), i) - partial_derivative(w.coeff(i), j));
  return out;
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  require_same_ring(a.ring(), b.ring());
  const Ring& ring = a.ring();
  TwoForm out(ring);
  for (unsigned i = 0; i < ring.nvars(); ++i)
    for (unsigned j = i + 1; j < ring.nvars(); ++j)
      out.set(i, j, a.coeff(i) * b.coeff(j) - a.coeff(j) * b.coeff(i));
  return out;
}

bool is_closed(const OneForm& w) { return d_oneform(w).is_zero(); }

OneForm dlog_function(const RatFunc& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroArgument, "dlog of the zero function");
  // d(n/d)/(n/d) = dn/n - dd/d avoids squaring the denominator.
  const Ring& ring = f.ring();
  std::vector<RatFunc> cs;
  cs.reserve(ring.nvars());
  for (unsigned i = 0; i < ring.nvars(); ++i) {
    RatFunc c = RatFunc::fraction(partial_derivative(f.num(), i), f.num());
    if (!f.den().is_one()) c -= RatFunc::fraction(partial_derivative(f.den(), i), f.den());
    cs.push_back(std::move(c));
  }
  return OneForm(ring, std::move(cs));
}

OneForm frobenius_coefficients(const OneForm& w) {
  std::vector<RatFunc> cs;
  for (const auto& c : w.coeffs()) cs.push_back(c.frobenius());
  return OneForm(w.ring(), std::move(cs));
}

}  // namespace charp
