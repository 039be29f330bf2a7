#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "umbra/errors.hpp"
#include "umbra/rational.hpp"
#include "umbra/series.hpp"

namespace umbra::dsl {

// Surface syntax for user-defined series:
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?        -- '^' is non-associative
//   atom   := INTEGER | 't' | IDENT | IDENT '(' expr ')' | '(' expr ')'
//   exponent := signed INTEGER | IDENT    -- IDENT only over a (1+t) base
//
// Functions: exp(u), log1p(u) = log(1+u); both need u with zero constant
// term. Rationals are written p/q ('/' is exact division). Division by a
// series of positive order k is legal when the numerator has order >= k.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Var, Param, Neg, Add, Sub, Mul, Div, PowInt, PowParam, Call };

  Kind kind;
  Rat literal;         // Literal (always a non-negative integer when parsed)
  std::string name;    // Param / Call function name / PowParam exponent name
  ExprPtr a, b;        // operand(s): a = lhs / base / argument
  long long exponent = 0;  // PowInt
};

namespace detail {

inline ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace detail

inline ExprPtr literal(Rat v) { return detail::make({Expr::Kind::Literal, std::move(v), "", nullptr, nullptr, 0}); }
inline ExprPtr var_t() { return detail::make({Expr::Kind::Var, Rat(0), "", nullptr, nullptr, 0}); }
inline ExprPtr param(std::string name) { return detail::make({Expr::Kind::Param, Rat(0), std::move(name), nullptr, nullptr, 0}); }
inline ExprPtr neg(ExprPtr a) { return detail::make({Expr::Kind::Neg, Rat(0), "", std::move(a), nullptr, 0}); }
inline ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) { return detail::make({k, Rat(0), "", std::move(a), std::move(b), 0}); }
inline ExprPtr pow_int_expr(ExprPtr base, long long e) { return detail::make({Expr::Kind::PowInt, Rat(0), "", std::move(base), nullptr, e}); }
inline ExprPtr pow_param_expr(ExprPtr base, std::string name) { return detail::make({Expr::Kind::PowParam, Rat(0), std::move(name), std::move(base), nullptr, 0}); }
inline ExprPtr call(std::string func, ExprPtr arg) { return detail::make({Expr::Kind::Call, Rat(0), std::move(func), std::move(arg), nullptr, 0}); }

inline bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return x == y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::Literal:
      return x->literal == y->literal;
    case Expr::Kind::Var:
      return true;
    case Expr::Kind::Param:
    case Expr::Kind::Call:
    case Expr::Kind::PowParam:
      if (x->name != y->name) return false;
      break;
    case Expr::Kind::PowInt:
      if (x->exponent != y->exponent) return false;
      break;
    default:
      break;
  }
  return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
}

// ---------------------------------------------------------------------------
// Parser: recursive descent following the grammar above. Never crashes on
// arbitrary input -- anything unparsable raises ParseError with a byte
// offset, nesting is depth-limited, exponents are range-checked.
// ---------------------------------------------------------------------------

namespace detail {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  int depth = 0;
  static constexpr int kMaxDepth = 200;
  static constexpr long long kMaxExponent = 1000000000;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth > kMaxDepth) p.fail("expression nested too deeply");
    }
    ~DepthGuard() { --p.depth; }
  };

  Int parse_integer() {
    skip_ws();
    const std::size_t start = pos;
    Int v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos == start) fail("expected a number");
    return v;
  }

  std::string parse_ident() {
    skip_ws();
    const std::size_t start = pos;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (pos >= text.size() || !head(text[pos])) fail("expected an identifier");
    ++pos;
    while (pos < text.size() && tail(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  ExprPtr parse_expr() {
    DepthGuard guard(*this);
    ExprPtr lhs = parse_term();
    while (true) {
      if (consume('+'))
        lhs = binary(Expr::Kind::Add, lhs, parse_term());
      else if (consume('-'))
        lhs = binary(Expr::Kind::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  ExprPtr parse_term() {
    DepthGuard guard(*this);
    ExprPtr lhs = parse_unary();
    while (true) {
      if (consume('*'))
        lhs = binary(Expr::Kind::Mul, lhs, parse_unary());
      else if (consume('/'))
        lhs = binary(Expr::Kind::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  ExprPtr parse_unary() {
    DepthGuard guard(*this);
    if (consume('-')) return neg(parse_unary());
    return parse_power();
  }

  // True when e is literally 1+t (or t+1), the only base that admits a
  // rational (parameter) exponent.
  static bool is_one_plus_t(const ExprPtr& e) {
    if (e->kind != Expr::Kind::Add) return false;
    const auto is_one = [](const ExprPtr& x) {
      return x->kind == Expr::Kind::Literal && x->literal == 1;
    };
    const auto is_t = [](const ExprPtr& x) { return x->kind == Expr::Kind::Var; };
    return (is_one(e->a) && is_t(e->b)) || (is_t(e->a) && is_one(e->b));
  }

  ExprPtr parse_power() {
    DepthGuard guard(*this);
    ExprPtr base = parse_atom();
    if (!consume('^')) return base;

    ExprPtr result;
    skip_ws();
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      const std::string name = parse_ident();
      if (!is_one_plus_t(base))
        fail("rational exponent '" + name + "' is only supported over a (1+t) base");
      result = pow_param_expr(base, name);
    } else {
      bool negated = false;
      if (consume('-'))
        negated = true;
      else
        consume('+');
      const Int mag = parse_integer();
      if (mag > kMaxExponent) fail("exponent out of range");
      const long long e = static_cast<long long>(mag);
      result = pow_int_expr(base, negated ? -e : e);
    }
    if (peek() == '^') fail("'^' is non-associative; parenthesize the base");
    return result;
  }

  ExprPtr parse_atom() {
    DepthGuard guard(*this);
    const char c = peek();
    if (c >= '0' && c <= '9') return literal(Rat(parse_integer()));
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = parse_ident();
      if (peek() == '(') {
        ++pos;
        ExprPtr arg = parse_expr();
        if (!consume(')')) fail("expected ')'");
        if (name == "log")
          fail("unknown function 'log'; use log1p(u) for log(1+u)");
        if (name != "exp" && name != "log1p") fail("unknown function '" + name + "'");
        return call(name, arg);
      }
      if (name == "t") return var_t();
      return param(name);
    }
    fail(std::string("unexpected character '") + (pos < text.size() ? std::string(1, c) : "<end>") + "'");
  }
};

}  // namespace detail

inline ExprPtr parse(std::string_view text) {
  detail::Parser p{text};
  ExprPtr e = p.parse_expr();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return e;
}

// ---------------------------------------------------------------------------
// Canonical printer; parse(print(e)) is structurally equal to e for every
// parser-produced tree. Right operands at equal precedence keep their
// parentheses so associativity survives the round trip.
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::PowInt:
    case Expr::Kind::PowParam:
      return 4;
    default:
      return 5;
  }
}

inline bool is_atom(const Expr& e) { return precedence(e) == 5; }

inline void print_to(const ExprPtr& e, std::string& out) {
  auto child = [&out](const ExprPtr& c, bool parens) {
    if (parens) out += '(';
    print_to(c, out);
    if (parens) out += ')';
  };
  const int p = precedence(*e);
  switch (e->kind) {
    case Expr::Kind::Literal:
      out += rat_str(e->literal);
      return;
    case Expr::Kind::Var:
      out += 't';
      return;
    case Expr::Kind::Param:
      out += e->name;
      return;
    case Expr::Kind::Neg:
      out += '-';
      child(e->a, precedence(*e->a) < p);
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      child(e->a, precedence(*e->a) < p);
      switch (e->kind) {
        case Expr::Kind::Add: out += '+'; break;
        case Expr::Kind::Sub: out += '-'; break;
        case Expr::Kind::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      child(e->b, precedence(*e->b) <= p);
      return;
    }
    case Expr::Kind::PowInt:
      child(e->a, !is_atom(*e->a));
      out += '^';
      out += std::to_string(e->exponent);
      return;
    case Expr::Kind::PowParam:
      child(e->a, !is_atom(*e->a));
      out += '^';
      out += e->name;
      return;
    case Expr::Kind::Call:
      out += e->name;
      out += '(';
      print_to(e->a, out);
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string print(const ExprPtr& e) {
  std::string out;
  detail::print_to(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation to an exact truncated series.
// ---------------------------------------------------------------------------

namespace detail {

inline RatSeries eval_at(const ExprPtr& e, const std::map<std::string, Rat>& bindings,
                         std::size_t trunc) {
  switch (e->kind) {
    case Expr::Kind::Literal:
      return RatSeries::constant(e->literal, trunc);
    case Expr::Kind::Var: {
      std::vector<Rat> v(trunc + 1, Rat(0));
      if (trunc >= 1) v[1] = Rat(1);
      return RatSeries(std::move(v), trunc);
    }
    case Expr::Kind::Param: {
      auto it = bindings.find(e->name);
      if (it == bindings.end()) throw UnboundParameter("unbound parameter '" + e->name + "'");
      return RatSeries::constant(it->second, trunc);
    }
    case Expr::Kind::Neg:
      return -eval_at(e->a, bindings, trunc);
    case Expr::Kind::Add:
      return eval_at(e->a, bindings, trunc) + eval_at(e->b, bindings, trunc);
    case Expr::Kind::Sub:
      return eval_at(e->a, bindings, trunc) - eval_at(e->b, bindings, trunc);
    case Expr::Kind::Mul:
      return eval_at(e->a, bindings, trunc) * eval_at(e->b, bindings, trunc);
    case Expr::Kind::Div: {
      const RatSeries num = eval_at(e->a, bindings, trunc);
      const RatSeries den = eval_at(e->b, bindings, trunc);
      const auto den_order = den.order();
      if (!den_order)
        throw DivisionByNonInvertible("division by a zero series (at this truncation)");
      const std::size_t k = *den_order;
      if (k == 0) return num * mul_inverse(den);
      const auto num_order = num.order();
      if (num_order && *num_order < k)
        throw DivisionByNonInvertible("denominator order exceeds numerator order");
      if (num.trunc() < k)
        throw DivisionByNonInvertible("denominator order exceeds working truncation");
      // both orders >= k: cancel t^k and divide by the invertible remainder;
      // the result carries k fewer orders of truncation
      return divide_by_t(num, k) * mul_inverse(divide_by_t(den, k));
    }
    case Expr::Kind::PowInt:
      return pow_int(eval_at(e->a, bindings, trunc), e->exponent);
    case Expr::Kind::PowParam: {
      auto it = bindings.find(e->name);
      if (it == bindings.end()) throw UnboundParameter("unbound parameter '" + e->name + "'");
      return binomial_series(it->second, trunc);
    }
    case Expr::Kind::Call: {
      const RatSeries arg = eval_at(e->a, bindings, trunc);
      if (arg.coeff(0) != 0)
        throw EvalError(e->name + " needs an argument with zero constant term");
      const Builtin outer = e->name == "exp" ? Builtin::ExpT : Builtin::Log1p;
      return compose(builtin_series(outer, {}, arg.trunc()), arg);
    }
  }
  throw EvalError("malformed expression tree");
}

}  // namespace detail

// Evaluates at the requested truncation. Divisions by positive-order series
// shed truncation; when that happens the whole tree is re-evaluated with
// just enough padding, so the caller always gets exactly `trunc`. A
// denominator that merely looks zero at a small working truncation gets a
// few padded retries before the division error is allowed through.
inline RatSeries evaluate(const ExprPtr& e, const std::map<std::string, Rat>& bindings,
                          std::size_t trunc) {
  std::size_t pad = 0;
  int division_retries = 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      const RatSeries r = detail::eval_at(e, bindings, trunc + pad);
      if (r.trunc() >= trunc) return truncate_to(r, trunc);
      pad += trunc - r.trunc();
    } catch (const DivisionByNonInvertible&) {
      if (++division_retries > 6) throw;
      pad += trunc + 4;
    }
  }
  throw EvalError("expression sheds more truncation than can be padded");
}

}  // namespace umbra::dsl
