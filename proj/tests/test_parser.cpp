#include <doctest.h>

#include <random>

#include "charp/format.hpp"
#include "charp/parser.hpp"

using namespace charp;

namespace {

template <class Fn>
ParseError parse_error(Fn&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no ParseError thrown");
  return ParseError(ErrorCode::InternalAssertion, 0, "");
}

// Random well-sorted expression text over x, y.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::string scalar(int depth) {
    switch (depth <= 0 ? pick(3) : pick(8)) {
      case 0: return std::to_string(pick(12));
      case 1: return pick(2) ? "x" : "y";
      case 2: return "x" + std::to_string(1 + pick(2));
      case 3: return scalar(depth - 1) + " + " + scalar(depth - 1);
      case 4: return scalar(depth - 1) + " - " + scalar(depth - 1);
      case 5: return "(" + scalar(depth - 1) + ")*" + scalar(depth - 1);
      case 6: return "(" + scalar(depth - 1) + ")^" + std::to_string(pick(4));
      default: return "-" + scalar(depth - 1);
    }
  }

  std::string one_form(int depth) {
    switch (depth <= 0 ? pick(2) : pick(6)) {
      case 0: return pick(2) ? "dx" : "dy";
      case 1: return "d(" + scalar(1) + ")";
      case 2: return one_form(depth - 1) + " + " + one_form(depth - 1);
      case 3: return "(" + scalar(depth - 1) + ")*" + one_form(depth - 1);
      case 4: return "dlog(x*y + 1)";
      default: return "-" + one_form(depth - 1);
    }
  }

  std::string two_form(int depth) {
    return pick(2) ? "(" + one_form(depth) + ")^(" + one_form(depth) + ")" : "d(" + one_form(depth) + ")";
  }

 private:
  unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }
  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("precedence and unary minus") {
  const Ring r = Ring::create(7, 2);
  CHECK(parse_function("-x^2", r) == -parse_function("x*x", r));
  CHECK(parse_function("2 + 3*x^2", r) == parse_function("(3*(x^2)) + 2", r));
  CHECK(parse_function("x/y/x", r) == parse_function("1/y", r));
  CHECK(parse_function("x1 + x2", r) == parse_function("x + y", r));
  CHECK(parse_function("9", r) == parse_function("2", r));
}

TEST_CASE("forms, wedges and sorts") {
  const Ring r = Ring::create(3, 1);
  const Expr e = parse_expression("dlog(x) * dx", r);
  CHECK(e.sort == ExprSort::TwoForm);
  CHECK(std::get<TwoForm>(evaluate(e, r)).is_zero());
  const Ring r2 = Ring::create(3, 2);
  CHECK(parse_two_form("dx^dy", r2) == wedge(parse_one_form("dx", r2), parse_one_form("dy", r2)));
  CHECK(parse_one_form("d(x*y)", r2) == parse_one_form("y*dx + x*dy", r2));
  CHECK(parse_one_form("0", r2).is_zero());
}

TEST_CASE("parse errors carry codes and offsets") {
  const Ring r = Ring::create(3, 1);
  auto e = parse_error([&] { parse_expression("x^^2", r); });
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.position() == 2);
  CHECK(parse_error([&] { parse_expression("dx + 1", r); }).code() == ErrorCode::SortError);
  CHECK(parse_error([&] { parse_expression("d(dx)^dx", r); }).code() == ErrorCode::SortError);
  CHECK(parse_error([&] { parse_expression("q + 1", r); }).code() == ErrorCode::UnknownVariable);
  CHECK(parse_error([&] { parse_expression("y", r); }).code() == ErrorCode::UnknownVariable);
  CHECK(parse_error([&] { parse_expression("(x + 1", r); }).code() == ErrorCode::SyntaxError);
  CHECK(parse_error([&] { parse_expression("", r); }).code() == ErrorCode::SyntaxError);
  CHECK(parse_error([&] { parse_expression("1/dx", r); }).code() == ErrorCode::SortError);
  CHECK_THROWS_AS(parse_function("1/(x - x)", r), Error);
  CHECK_THROWS_AS(parse_one_form("dlog(0)", r), Error);
}

TEST_CASE("matrix and list splitting") {
  const auto m = split_matrix("x, (y, 1); 0, dlog(x)");
  REQUIRE(m.size() == 2);
  CHECK(m[0][1] == "(y, 1)");
  CHECK(m[1][1] == "dlog(x)");
  CHECK_THROWS_AS(split_matrix("x, y; z"), Error);
  CHECK_THROWS_AS(split_list("x,,y"), Error);
  CHECK(split_list("x, y + 1").size() == 2);
}

TEST_CASE("print/parse round trip on random expressions") {
  const Ring r = Ring::create(5, 2);
  Gen gen(42);
  for (int t = 0; t < 300; ++t) {
    const std::string text = t % 3 == 0 ? gen.scalar(3) : t % 3 == 1 ? gen.one_form(3) : gen.two_form(2);
    Expr e;
    try {
      e = parse_expression(text, r);
    } catch (const ParseError& err) {
      FAIL_CHECK("generated text failed to parse: " << text << ": " << std::string(err.what()));
      continue;
    }
    const std::string printed = print_expression(e);
    const Expr again = parse_expression(printed, r);
    CHECK_MESSAGE(again == e, text << " printed as " << printed);
    CHECK(evaluate(again, r) == evaluate(e, r));
  }
}

TEST_CASE("formatted values parse back to themselves") {
  const Ring r = Ring::create(7, 2);
  for (const char* text : {"(x + 1)/x*dx + y/(x*y + 1)*dy", "3*dx/y^2", "x^6*dy", "dx/(2*x)"}) {
    const OneForm w = parse_one_form(text, r);
    CHECK(parse_one_form(to_string(w), r) == w);
  }
  const TwoForm t = parse_two_form("(x + 1)/y*dx^dy", r);
  CHECK(parse_two_form(to_string(t), r) == t);
}
