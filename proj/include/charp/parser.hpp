#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charp/error.hpp"
#include "charp/forms.hpp"

namespace charp {

/// Error raised by the expression parser, with the byte offset it refers to.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& message)
      : Error(code, "offset " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class ExprSort { Scalar, OneForm, TwoForm };

std::string sort_name(ExprSort s);

/// Expression tree. value holds the reduced literal for Int, the variable
/// index for Var and FormAtom, and the exponent for Pow.
struct Expr {
  enum class Kind { Int, Var, FormAtom, Add, Sub, Mul, Div, Pow, Neg, Wedge, D, Dlog };

  Kind kind = Kind::Int;
  std::uint64_t value = 0;
  std::vector<Expr> args;
  ExprSort sort = ExprSort::Scalar;

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/' | '^') factor)*
///   factor := '-' factor | base ('^' uint)?
///   base   := int | var | formatom | 'd' '(' expr ')' | 'dlog' '(' expr ')' | '(' expr ')'
/// A '^' followed by digits is a power, any other '^' is a wedge. '*' of two
/// 1-forms is also a wedge. Variables are x, y, z, w or x1..x4; form atoms are
/// dx, dy, dz, dw or dx1..dx4. Integers are reduced mod p.
/// Throws ParseError with code SyntaxError, SortError or UnknownVariable.
Expr parse_expression(std::string_view text, const Ring& ring);

/// Canonical text; parse_expression(print_expression(e)) == e.
std::string print_expression(const Expr& e);

using Value = std::variant<RatFunc, OneForm, TwoForm>;

/// Evaluates a sort-checked tree. Division by zero throws InverseOfZero,
/// dlog(0) throws ZeroArgument.
Value evaluate(const Expr& e, const Ring& ring);

/// Parse and evaluate, requiring the given sort. A scalar 0 is accepted as
/// the zero form.
RatFunc parse_function(std::string_view text, const Ring& ring);
OneForm parse_one_form(std::string_view text, const Ring& ring);
TwoForm parse_two_form(std::string_view text, const Ring& ring);

/// Splits "a, b; c, d" into rows of entry strings at parenthesis depth 0.
/// Throws SyntaxError on ragged rows or empty entries.
std::vector<std::vector<std::string>> split_matrix(std::string_view text);
/// Splits "a, b, c" at depth 0.
std::vector<std::string> split_list(std::string_view text);

}  // namespace charp
