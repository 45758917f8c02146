#pragma once

#include <string>
#include <vector>

#include "charp/error.hpp"
#include "charp/forms.hpp"

namespace charp {

/// Dense row-major matrix over a value type without a default value.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const T& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }
  T& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }

  const std::vector<T>& entries() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

using RatMatrix = Matrix<RatFunc>;
using MatrixOneForm = Matrix<OneForm>;
using MatrixTwoForm = Matrix<TwoForm>;

RatMatrix identity_matrix(Ring ring, std::size_t r);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix scaled(const RatFunc& f, const RatMatrix& m);
bool is_zero(const RatMatrix& m);
bool is_zero(const MatrixOneForm& m);
bool is_zero(const MatrixTwoForm& m);
RatFunc determinant(const RatMatrix& m);
/// Gauss-Jordan inverse; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& m);
/// Entry-wise substitution x_j -> x_j^p.
RatMatrix frobenius_entries(const RatMatrix& m);

/// Structure group of a trivialized torsor. The additive group is carried in
/// its 1x1 Lie-algebra form and embedded in GL_2 by ga_connection on demand;
/// aff(1) uses (a, b) -> ((a, b), (0, 1)).
class GroupTag {
 public:
  enum class Kind { Gm, Ga, GL, Aff1 };

  static GroupTag gm() { return GroupTag(Kind::Gm, 1); }
  static GroupTag ga() { return GroupTag(Kind::Ga, 1); }
  static GroupTag gl(unsigned r);
  static GroupTag aff1() { return GroupTag(Kind::Aff1, 2); }
  /// Parses "g_m", "g_a", "aff1", "gl(r)" / "glr"; throws ShapeViolation.
  static GroupTag parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  /// Size of the matrices representing Lie-algebra values.
  unsigned rank() const noexcept { return rank_; }
  bool is_abelian() const noexcept { return kind_ == Kind::Gm || kind_ == Kind::Ga || (kind_ == Kind::GL && rank_ == 1); }
  std::string name() const;

  /// The restricted p-th power map on Lie(G) for a matrix with constant
  /// entries: identity for g_m, zero for g_a, matrix p-th power otherwise.
  Matrix<Coeff> lie_p_power(const Ring& ring, const Matrix<Coeff>& x) const;

  /// Throws ShapeViolation unless the connection matrix has the Lie-algebra shape.
  void check_lie_shape(const MatrixOneForm& omega) const;

  friend bool operator==(const GroupTag&, const GroupTag&) = default;

 private:
  GroupTag(Kind kind, unsigned rank) : kind_(kind), rank_(rank) {}

  Kind kind_;
  unsigned rank_;
};

/// Vector field D = sum_i coeffs[i] d/dx_{i+1}.
struct Derivation {
  Ring ring;
  std::vector<RatFunc> coeffs;

  static Derivation coordinate(Ring ring, unsigned var);
  RatFunc apply(const RatFunc& f) const;
  bool is_zero() const noexcept;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// Values psi(d/dx_1), ..., psi(d/dx_n) of the p-curvature. The map is
/// p-linear: evaluating at D = sum f_i d/dx_i gives sum f_i^p psi[i].
struct PCurvature {
  Ring ring;
  std::vector<RatMatrix> psi;
  bool twisted = true;

  RatMatrix evaluate(const Derivation& d) const;
  bool is_zero() const;
};

MatrixOneForm scalar_connection(const OneForm& w);
/// ((0, w), (0, 0)): a g_a connection through the standard GL_2 embedding.
MatrixOneForm ga_connection(const OneForm& w);
/// ((w, w'), (0, 0)).
MatrixOneForm aff1_connection(const OneForm& w, const OneForm& w_prime);
/// The coefficient matrix of d/dx_{var+1} in the connection.
RatMatrix coefficient_matrix(const MatrixOneForm& omega, unsigned var);
/// Omega(D) = sum_i D_i A_i.
RatMatrix contract(const MatrixOneForm& omega, const Derivation& d);

/// g^{-1} dg. For g_m and g_a a 1x1 matrix holds the function f resp. the
/// additive coordinate a (giving df/f resp. da); g_a also accepts the
/// unipotent 2x2 form. Throws SingularMatrix or ShapeViolation.
MatrixOneForm maurer_cartan(const RatMatrix& g, const GroupTag& tag);

/// d(Omega) + Omega ^ Omega.
MatrixTwoForm curvature(const MatrixOneForm& omega);

/// The derivation D^p, read off from D^p(x_j).
Derivation derivation_p_power(const Derivation& d);

/// psi(d/dx_i) = (d/dx_i + A_i)^p on column vectors, by operator iteration.
PCurvature pcurvature_brute(const MatrixOneForm& omega);

/// (D + Omega(D))^p - (D^p + Omega(D^p)) by operator iteration, with D^p
/// computed exactly, so non-integrable connections are handled too.
RatMatrix pcurvature_at(const MatrixOneForm& omega, const Derivation& d);

/// Abelian closed-form p-curvature: 1^[p] w - C(w), i.e. w - C(w) for g_m and
/// -C(w) for g_a, as a form on the Frobenius twist. Throws NotClosed,
/// NotAbelian or CharTwo.
OneForm pcurvature_abelian(const OneForm& w, const GroupTag& tag);

/// Rank-one, one-variable identity psi(d/dx) = a^p + (d/dx)^(p-1) a for
/// the connection d + a dx. Throws IndexOutOfRange unless n = 1.
RatFunc rank1_pcurvature_oracle(const OneForm& w);

}  // namespace charp
