#include "charp/parser.hpp"

#include <cctype>

namespace charp {

namespace {

int degree_of(ExprSort s) { return static_cast<int>(s); }
ExprSort sort_of_degree(int d) { return static_cast<ExprSort>(d); }

// Variable index for x, y, z, w or x1..x4 (prefix "" for functions, "d" for
// form atoms); -1 when the name is not a variable name at all.
int variable_index(std::string_view name) {
  static constexpr std::string_view kAliases = "xyzw";
  if (name.size() == 1) {
    auto pos = kAliases.find(name[0]);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
  }
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') return name[1] - '1';
  return -1;
}

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) syntax("expected an operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void syntax(const std::string& what) const { throw ParseError(ErrorCode::SyntaxError, pos_, what); }
  [[noreturn]] void sort_error(std::size_t at, const std::string& what) const {
    throw ParseError(ErrorCode::SortError, at, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // True when the '^' at pos_ introduces a power (digits follow).
  bool caret_is_power() const {
    std::size_t q = pos_ + 1;
    while (q < text_.size() && std::isspace(static_cast<unsigned char>(text_[q]))) ++q;
    return q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]));
  }

  Expr expr() {
    Expr lhs = term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      Expr rhs = term();
      if (lhs.sort != rhs.sort)
        sort_error(at, "cannot add a " + sort_name(lhs.sort) + " and a " + sort_name(rhs.sort));
      lhs = binary(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs), lhs.sort);
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (true) {
      const char c = peek();
      Expr::Kind kind;
      if (c == '*')
        kind = Expr::Kind::Mul;
      else if (c == '/')
        kind = Expr::Kind::Div;
      else if (c == '^' && !caret_is_power())
        kind = Expr::Kind::Wedge;
      else if (c == '^')
        syntax("a power needs a base; use parentheses for repeated powers");
      else
        return lhs;
      const std::size_t at = pos_++;
      Expr rhs = factor();
      ExprSort sort = ExprSort::Scalar;
      if (kind == Expr::Kind::Div) {
        if (rhs.sort != ExprSort::Scalar) sort_error(at, "cannot divide by a " + sort_name(rhs.sort));
        sort = lhs.sort;
      } else {
        const int d = degree_of(lhs.sort) + degree_of(rhs.sort);
        if (d > 2) sort_error(at, "forms of degree above 2 are not supported");
        sort = sort_of_degree(d);
      }
      lhs = binary(kind, std::move(lhs), std::move(rhs), sort);
    }
  }

  Expr factor() {
    if (peek() == '-') {
      ++pos_;
      Expr inner = factor();
      Expr e{Expr::Kind::Neg, 0, {}, inner.sort};
      e.args.push_back(std::move(inner));
      return e;
    }
    Expr b = base();
    if (peek() == '^' && caret_is_power()) {
      const std::size_t at = pos_++;
      skip_space();
      const std::uint64_t n = unsigned_literal(false);
      if (b.sort != ExprSort::Scalar) sort_error(at, "only scalars can be raised to a power");
      Expr e{Expr::Kind::Pow, n, {}, ExprSort::Scalar};
      e.args.push_back(std::move(b));
      return e;
    }
    return b;
  }

  // Reads digits at pos_. With reduce, the value is taken mod p; otherwise
  // it must fit the exponent range.
  std::uint64_t unsigned_literal(bool reduce) {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const unsigned digit = static_cast<unsigned>(text_[pos_] - '0');
      if (reduce) {
        v = (v * 10 + digit) % ring_.p();
      } else {
        v = v * 10 + digit;
        if (v > (1u << 24)) {
          pos_ = start;
          syntax("exponent too large");
        }
      }
      ++pos_;
    }
    if (pos_ == start) syntax("expected an integer");
    return v;
  }

  Expr base() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (peek() != ')') syntax("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr{Expr::Kind::Int, unsigned_literal(true), {}, ExprSort::Scalar};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
      const std::string_view name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "d" || name == "dlog") {
        if (peek() != '(') syntax("expected '(' after " + std::string(name));
        ++pos_;
        Expr inner = expr();
        if (peek() != ')') syntax("expected ')'");
        ++pos_;
        if (name == "dlog") {
          if (inner.sort != ExprSort::Scalar) sort_error(start, "dlog takes a function");
          return unary(Expr::Kind::Dlog, std::move(inner), ExprSort::OneForm);
        }
        if (inner.sort == ExprSort::TwoForm) sort_error(start, "d of a 2-form is not supported");
        const ExprSort s = sort_of_degree(degree_of(inner.sort) + 1);
        return unary(Expr::Kind::D, std::move(inner), s);
      }
      const bool atom = name.size() >= 2 && name[0] == 'd';
      const int index = variable_index(atom ? name.substr(1) : name);
      if (index < 0 || static_cast<unsigned>(index) >= ring_.nvars())
        throw ParseError(ErrorCode::UnknownVariable, start,
                         "unknown " + std::string(atom ? "form atom" : "variable") + " '" + std::string(name) +
                             "' with " + std::to_string(ring_.nvars()) + " variable(s)");
      return Expr{atom ? Expr::Kind::FormAtom : Expr::Kind::Var, static_cast<std::uint64_t>(index), {},
                  atom ? ExprSort::OneForm : ExprSort::Scalar};
    }
    if (c == '\0') syntax("unexpected end of input; expected a number, variable, form or '('");
    syntax(std::string("unexpected '") + c + "'; expected a number, variable, form or '('");
  }

  static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, ExprSort sort) {
    Expr e{kind, 0, {}, sort};
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  static Expr unary(Expr::Kind kind, Expr inner, ExprSort sort) {
    Expr e{kind, 0, {}, sort};
    e.args.push_back(std::move(inner));
    return e;
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

// 0 = sum, 1 = product, 2 = negation or power, 3 = atom.
int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 0;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
    case Expr::Kind::Wedge: return 1;
    case Expr::Kind::Neg:
    case Expr::Kind::Pow: return 2;
    default: return 3;
  }
}

std::string wrapped(const Expr& e, int min_level) {
  std::string s = print_expression(e);
  return level(e) < min_level ? "(" + s + ")" : s;
}

Value negate(const Value& v) {
  return std::visit([](const auto& x) -> Value { return -x; }, v);
}

Value multiply(const Value& a, const Value& b) {
  if (const auto* f = std::get_if<RatFunc>(&a)) {
    if (const auto* g = std::get_if<RatFunc>(&b)) return *f * *g;
    if (const auto* w = std::get_if<OneForm>(&b)) return *f * *w;
    return *f * std::get<TwoForm>(b);
  }
  if (std::holds_alternative<RatFunc>(b)) return multiply(b, a);
  ensure(std::holds_alternative<OneForm>(a) && std::holds_alternative<OneForm>(b), "sort check let a bad product through");
  return wedge(std::get<OneForm>(a), std::get<OneForm>(b));
}

}  // namespace

std::string sort_name(ExprSort s) {
  switch (s) {
    case ExprSort::Scalar: return "function";
    case ExprSort::OneForm: return "1-form";
    case ExprSort::TwoForm: return "2-form";
  }
  return "?";
}

Expr parse_expression(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

std::string print_expression(const Expr& e) {
  static constexpr const char* kNames[] = {"x", "y", "z", "w"};
  switch (e.kind) {
    case Expr::Kind::Int: return std::to_string(e.value);
    case Expr::Kind::Var: return kNames[e.value];
    case Expr::Kind::FormAtom: return std::string("d") + kNames[e.value];
    case Expr::Kind::Add: return wrapped(e.args[0], 0) + " + " + wrapped(e.args[1], 1);
    case Expr::Kind::Sub: return wrapped(e.args[0], 0) + " - " + wrapped(e.args[1], 1);
    case Expr::Kind::Mul: return wrapped(e.args[0], 1) + "*" + wrapped(e.args[1], 2);
    case Expr::Kind::Div: return wrapped(e.args[0], 1) + "/" + wrapped(e.args[1], 2);
    case Expr::Kind::Wedge: {
      // A digit right after '^' would read as a power.
      std::string rhs = wrapped(e.args[1], 2);
      if (std::isdigit(static_cast<unsigned char>(rhs[0]))) rhs = "(" + rhs + ")";
      return wrapped(e.args[0], 1) + " ^ " + rhs;
    }
    case Expr::Kind::Neg: return "-" + wrapped(e.args[0], 2);
    case Expr::Kind::Pow: return wrapped(e.args[0], 3) + "^" + std::to_string(e.value);
    case Expr::Kind::D: return "d(" + print_expression(e.args[0]) + ")";
    case Expr::Kind::Dlog: return "dlog(" + print_expression(e.args[0]) + ")";
  }
  return "?";
}

Value evaluate(const Expr& e, const Ring& ring) {
  switch (e.kind) {
    case Expr::Kind::Int: return RatFunc::constant(ring, static_cast<std::int64_t>(e.value));
    case Expr::Kind::Var: return RatFunc::variable(ring, static_cast<unsigned>(e.value));
    case Expr::Kind::FormAtom:
      return OneForm::basis(ring, static_cast<unsigned>(e.value), RatFunc::constant(ring, 1));
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      const Value a = evaluate(e.args[0], ring);
      const Value b = evaluate(e.args[1], ring);
      return std::visit(
          [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b);
            return e.kind == Expr::Kind::Add ? Value(x + y) : Value(x - y);
          },
          a);
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Wedge: return multiply(evaluate(e.args[0], ring), evaluate(e.args[1], ring));
    case Expr::Kind::Div: {
      const RatFunc inv = std::get<RatFunc>(evaluate(e.args[1], ring)).inverse();
      return multiply(inv, evaluate(e.args[0], ring));
    }
    case Expr::Kind::Pow: return std::get<RatFunc>(evaluate(e.args[0], ring)).pow(e.value);
    case Expr::Kind::Neg: return negate(evaluate(e.args[0], ring));
    case Expr::Kind::D: {
      const Value inner = evaluate(e.args[0], ring);
      if (const auto* f = std::get_if<RatFunc>(&inner)) return d_function(*f);
      return d_oneform(std::get<OneForm>(inner));
    }
    case Expr::Kind::Dlog: return dlog_function(std::get<RatFunc>(evaluate(e.args[0], ring)));
  }
  ensure(false, "unhandled expression kind");
  return RatFunc(ring);
}

namespace {

template <class T>
T parse_as(std::string_view text, const Ring& ring, ExprSort want) {
  const Expr e = parse_expression(text, ring);
  const Value v = evaluate(e, ring);
  if (const auto* t = std::get_if<T>(&v)) return *t;
  if (const auto* f = std::get_if<RatFunc>(&v); f && f->is_zero()) {
    if constexpr (!std::is_same_v<T, RatFunc>) return T(ring);
  }
  throw ParseError(ErrorCode::SortError, 0,
                   "expected a " + sort_name(want) + ", got a " + sort_name(e.sort) + " in '" + std::string(text) + "'");
}

}  // namespace

RatFunc parse_function(std::string_view text, const Ring& ring) {
  return parse_as<RatFunc>(text, ring, ExprSort::Scalar);
}

OneForm parse_one_form(std::string_view text, const Ring& ring) {
  return parse_as<OneForm>(text, ring, ExprSort::OneForm);
}

TwoForm parse_two_form(std::string_view text, const Ring& ring) {
  return parse_as<TwoForm>(text, ring, ExprSort::TwoForm);
}

std::vector<std::string> split_list(std::string_view text) {
  if (auto semi = text.find(';'); semi != std::string_view::npos)
    throw ParseError(ErrorCode::SyntaxError, semi, "';' is not allowed in a list");
  return split_matrix(text).front();
}

std::vector<std::vector<std::string>> split_matrix(std::string_view text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string current;
  int depth = 0;
  std::size_t entry_start = 0;
  const auto push_entry = [&](std::size_t at) {
    const auto first = current.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError(ErrorCode::SyntaxError, at, "empty entry");
    const auto last = current.find_last_not_of(" \t\r\n");
    rows.back().push_back(current.substr(first, last - first + 1));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError(ErrorCode::SyntaxError, i, "unbalanced ')'");
    if (depth == 0 && (c == ',' || c == ';')) {
      push_entry(entry_start);
      if (c == ';') rows.emplace_back();
      entry_start = i + 1;
      continue;
    }
    current += c;
  }
  if (depth != 0) throw ParseError(ErrorCode::SyntaxError, text.size(), "unbalanced '('");
  push_entry(entry_start);
  for (const auto& row : rows)
    if (row.size() != rows.front().size())
      throw ParseError(ErrorCode::SyntaxError, 0, "matrix rows have different lengths");
  return rows;
}

}  // namespace charp
