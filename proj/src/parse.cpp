/* Copyright 2026 The bungee-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Recursive-descent parser and canonical printer.
//
//   expr    := term (("+"|"-") term)*
//   term    := unary (("*"|"/") unary)*
//   unary   := "-" unary | power
//   power   := primary ("^" int)?
//   primary := number | "i" | "pi" | "z" | ("exp"|"sin"|"cos") "(" expr ")" | "(" expr ")"
//
// `^` binds tighter than unary minus, so "-z^2" is -(z^2).

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bungee/errors.hpp"
#include "bungee/expr.hpp"
#include "value_ops.hpp"

namespace bungee {

namespace {

constexpr int kMaxNesting = 1000;

// Builders that fold constant-only operands when the folded value is an
// ordinary finite number.
Expr fold_or(const Expr& built, detail::Fault fault, const detail::Value& v) {
  if (fault == detail::Fault::None && !v.tiny) return Expr::constant(v.z);
  return built;
}

detail::Value cval(const Expr& e) { return {e.value(), false}; }

Expr make_binary(NodeKind kind, Expr a, Expr b) {
  Expr built = [&] {
    switch (kind) {
      case NodeKind::Add: return Expr::add(a, b);
      case NodeKind::Sub: return Expr::sub(a, b);
      case NodeKind::Mul: return Expr::mul(a, b);
      default: return Expr::div(a, b);
    }
  }();
  if (a.kind() != NodeKind::Const || b.kind() != NodeKind::Const) return built;
  detail::Value out;
  detail::Fault f = detail::Fault::None;
  switch (kind) {
    case NodeKind::Add: f = detail::op_add(cval(a), cval(b), out); break;
    case NodeKind::Sub: f = detail::op_sub(cval(a), cval(b), out); break;
    case NodeKind::Mul: f = detail::op_mul(cval(a), cval(b), out); break;
    default: f = detail::op_div(cval(a), cval(b), out); break;
  }
  return fold_or(built, f, out);
}

Expr make_unary(NodeKind kind, Expr a, int exponent = 0) {
  Expr built = [&] {
    switch (kind) {
      case NodeKind::Neg: return Expr::neg(a);
      case NodeKind::Pow: return Expr::pow(a, exponent);
      case NodeKind::Exp: return Expr::exp(a);
      case NodeKind::Sin: return Expr::sin(a);
      default: return Expr::cos(a);
    }
  }();
  if (a.kind() != NodeKind::Const) return built;
  detail::Value out;
  detail::Fault f = detail::Fault::None;
  switch (kind) {
    case NodeKind::Neg: f = detail::op_neg(cval(a), out); break;
    case NodeKind::Pow: f = detail::op_pow(cval(a), exponent, out); break;
    case NodeKind::Exp: f = detail::op_exp(cval(a), out); break;
    case NodeKind::Sin: f = detail::op_sin(cval(a), out); break;
    default: f = detail::op_cos(cval(a), out); break;
  }
  return fold_or(built, f, out);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'",
           {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    throw ParseError(what, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::vector<std::string> expected) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail("unexpected end of input", std::move(expected));
      fail(std::string("expected '") + c + "'", std::move(expected));
    }
  }

  Expr expr() {
    if (++depth_ > kMaxNesting) fail("nesting too deep", {});
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(NodeKind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(NodeKind::Sub, lhs, term());
      } else {
        break;
      }
    }
    --depth_;
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(NodeKind::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(NodeKind::Div, lhs, unary());
      } else {
        break;
      }
    }
    return lhs;
  }

  Expr unary() {
    if (accept('-')) {
      if (++depth_ > kMaxNesting) fail("nesting too deep", {});
      Expr e = make_unary(NodeKind::Neg, unary());
      --depth_;
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer exponent", {"integer"});
    long long n = 0;
    auto [p, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, n);
    (void)p;
    if (negative) n = -n;
    if (ec != std::errc() || n == 0 || n > kMaxExponent || n < -kMaxExponent) {
      pos_ = start;
      fail("exponent out of range (nonzero, |n| <= " + std::to_string(kMaxExponent) + ")",
           {"integer"});
    }
    return make_unary(NodeKind::Pow, base, static_cast<int>(n));
  }

  Expr primary() {
    skip_ws();
    static const std::vector<std::string> kPrimary = {"number", "z", "i", "pi", "exp",
                                                      "sin", "cos", "(", "-"};
    if (pos_ >= text_.size()) fail("unexpected end of input", kPrimary);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')', {")", "+", "-", "*", "/", "^"});
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "z") return Expr::var();
      if (id == "i") return Expr::constant({0.0, 1.0});
      if (id == "pi") return Expr::constant(std::numbers::pi);
      NodeKind fn;
      if (id == "exp") {
        fn = NodeKind::Exp;
      } else if (id == "sin") {
        fn = NodeKind::Sin;
      } else if (id == "cos") {
        fn = NodeKind::Cos;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(id) + "'", {"z", "i", "pi", "exp", "sin", "cos"});
      }
      expect('(', {"("});
      Expr arg = expr();
      expect(')', {")", "+", "-", "*", "/", "^"});
      return make_unary(fn, arg);
    }
    fail(std::string("unexpected '") + c + "'", kPrimary);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digit = [&] {
      return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    };
    while (digit()) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (!digit()) fail("expected digits after '.'", {"digit"});
      while (digit()) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (!digit()) {
        pos_ = mark;
        fail("malformed exponent in number", {"digit"});
      }
      while (digit()) ++pos_;
    }
    double value = 0.0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    (void)p;
    if (ec != std::errc() || !std::isfinite(value)) {
      pos_ = start;
      fail("number out of range", {"number"});
    }
    return Expr::constant(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

void append_number(std::string& out, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  out.append(buf, end);
}

// Signed real literal, parenthesised when negative.
void append_real(std::string& out, double v) {
  if (std::signbit(v)) {
    out += "(-";
    append_number(out, -v);
    out += ')';
  } else {
    append_number(out, v);
  }
}

void append_const(std::string& out, Complex c) {
  if (c.im == 0.0) {
    append_real(out, c.re);
    return;
  }
  out += '(';
  if (c.re == 0.0) {
    if (std::signbit(c.im)) out += '-';
    append_number(out, std::fabs(c.im));
    out += "*i)";
    return;
  }
  if (std::signbit(c.re)) out += '-';
  append_number(out, std::fabs(c.re));
  out += std::signbit(c.im) ? '-' : '+';
  append_number(out, std::fabs(c.im));
  out += "*i)";
}

void append(std::string& out, const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Var: out += 'z'; return;
    case NodeKind::Const: append_const(out, e.value()); return;
    case NodeKind::Neg:
      out += "(-";
      append(out, e.child(0));
      out += ')';
      return;
    case NodeKind::Pow:
      out += '(';
      append(out, e.child(0));
      out += '^';
      out += std::to_string(e.exponent());
      out += ')';
      return;
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos:
      out += e.kind() == NodeKind::Exp ? "exp(" : e.kind() == NodeKind::Sin ? "sin(" : "cos(";
      append(out, e.child(0));
      out += ')';
      return;
    default: break;
  }
  const char op = e.kind() == NodeKind::Add   ? '+'
                  : e.kind() == NodeKind::Sub ? '-'
                  : e.kind() == NodeKind::Mul ? '*'
                                              : '/';
  out += '(';
  append(out, e.child(0));
  out += op;
  append(out, e.child(1));
  out += ')';
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  std::string out;
  append(out, e);
  return out;
}

}  // namespace bungee
