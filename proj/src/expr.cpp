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

#include "bungee/expr.hpp"

#include <limits>
#include <string>

#include "bungee/errors.hpp"
#include "expr_node.hpp"
#include "value_ops.hpp"

namespace bungee {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(message + " at byte " + std::to_string(offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Var: return "Var";
    case NodeKind::Const: return "Const";
    case NodeKind::Add: return "Add";
    case NodeKind::Sub: return "Sub";
    case NodeKind::Mul: return "Mul";
    case NodeKind::Div: return "Div";
    case NodeKind::Neg: return "Neg";
    case NodeKind::Pow: return "Pow";
    case NodeKind::Exp: return "Exp";
    case NodeKind::Sin: return "Sin";
    case NodeKind::Cos: return "Cos";
  }
  return "?";
}

const char* to_string(EvalKind kind) {
  switch (kind) {
    case EvalKind::Finite: return "Finite";
    case EvalKind::Overflow: return "Overflow";
    case EvalKind::Pole: return "Pole";
  }
  return "?";
}

Expr Expr::make(NodeKind kind, Complex value, int exponent, const Expr* a, const Expr* b) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->value = value;
  node->exponent = exponent;
  std::uint64_t count = 1;
  std::uint64_t vars = kind == NodeKind::Var ? 1 : 0;
  std::uint32_t depth = 1;
  bool entire = !(kind == NodeKind::Div || (kind == NodeKind::Pow && exponent < 0));
  std::size_t arity = 0;
  for (const Expr* c : {a, b}) {
    if (c == nullptr) continue;
    const Node& cn = *c->node_;
    count = sat_add(count, cn.count);
    vars = sat_add(vars, cn.vars);
    depth = std::max(depth, cn.depth + 1);
    entire = entire && cn.entire;
    node->children[arity++] = *c;
  }
  if (depth > kMaxDepth) throw LimitError("expression nesting exceeds " + std::to_string(kMaxDepth));
  node->arity = static_cast<std::uint8_t>(arity);
  node->count = count;
  node->vars = vars;
  node->depth = depth;
  node->entire = entire;
  return Expr(std::move(node));
}

Expr::Expr() {
  static const std::shared_ptr<const Node> var_node = [] {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Var;
    n->count = 1;
    n->vars = 1;
    n->depth = 1;
    n->entire = true;
    return n;
  }();
  node_ = var_node;
}

Expr Expr::constant(Complex c) {
  if (!is_finite(c)) throw InvalidArgument("expression constants must be finite");
  return make(NodeKind::Const, c, 0, nullptr, nullptr);
}

Expr Expr::add(Expr a, Expr b) { return make(NodeKind::Add, {}, 0, &a, &b); }
Expr Expr::sub(Expr a, Expr b) { return make(NodeKind::Sub, {}, 0, &a, &b); }
Expr Expr::mul(Expr a, Expr b) { return make(NodeKind::Mul, {}, 0, &a, &b); }
Expr Expr::div(Expr a, Expr b) { return make(NodeKind::Div, {}, 0, &a, &b); }
Expr Expr::neg(Expr a) { return make(NodeKind::Neg, {}, 0, &a, nullptr); }
Expr Expr::exp(Expr a) { return make(NodeKind::Exp, {}, 0, &a, nullptr); }
Expr Expr::sin(Expr a) { return make(NodeKind::Sin, {}, 0, &a, nullptr); }
Expr Expr::cos(Expr a) { return make(NodeKind::Cos, {}, 0, &a, nullptr); }

Expr Expr::pow(Expr base, int n) {
  if (n == 0 || n > kMaxExponent || n < -kMaxExponent) {
    throw InvalidArgument("exponent must be a nonzero integer with |n| <= " +
                          std::to_string(kMaxExponent));
  }
  return make(NodeKind::Pow, {}, n, &base, nullptr);
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
std::size_t Expr::arity() const noexcept { return node_->arity; }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
Complex Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
std::uint64_t Expr::node_count() const noexcept { return node_->count; }
std::uint64_t Expr::var_count() const noexcept { return node_->vars; }
bool Expr::is_entire() const noexcept { return node_->entire; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.kind != y.kind || x.count != y.count || x.arity != y.arity) return false;
  if (x.kind == NodeKind::Const) return x.value == y.value;
  if (x.kind == NodeKind::Pow && x.exponent != y.exponent) return false;
  for (std::size_t i = 0; i < x.arity; ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

namespace {

using detail::Fault;
using detail::Value;

// `own` reports whether a fault came from e's operation itself rather than
// from a subexpression.
Fault walk(const Expr& e, const Value& z, Value& out, bool& own) {
  switch (e.kind()) {
    case NodeKind::Var: out = z; return Fault::None;
    case NodeKind::Const: out = {e.value(), false}; return Fault::None;
    default: break;
  }
  Value a;
  own = false;
  if (Fault f = walk(e.child(0), z, a, own); f != Fault::None) {
    own = false;
    return f;
  }
  own = true;
  switch (e.kind()) {
    case NodeKind::Neg: return detail::op_neg(a, out);
    case NodeKind::Pow: return detail::op_pow(a, e.exponent(), out);
    case NodeKind::Exp: return detail::op_exp(a, out);
    case NodeKind::Sin: return detail::op_sin(a, out);
    case NodeKind::Cos: return detail::op_cos(a, out);
    default: break;
  }
  Value b;
  if (Fault f = walk(e.child(1), z, b, own); f != Fault::None) {
    if (e.kind() == NodeKind::Div && f == Fault::Overflow && own &&
        detail::absorb_overflow(a, out)) {
      return Fault::None;
    }
    own = false;
    return f;
  }
  own = true;
  switch (e.kind()) {
    case NodeKind::Add: return detail::op_add(a, b, out);
    case NodeKind::Sub: return detail::op_sub(a, b, out);
    case NodeKind::Mul: return detail::op_mul(a, b, out);
    case NodeKind::Div: return detail::op_div(a, b, out);
    default: break;
  }
  return Fault::Overflow;  // unreachable
}

Expr substitute(const Expr& f, const Expr& g) {
  switch (f.kind()) {
    case NodeKind::Var: return g;
    case NodeKind::Const: return f;
    default: break;
  }
  if (f.is_constant()) return f;
  Expr a = substitute(f.child(0), g);
  switch (f.kind()) {
    case NodeKind::Neg: return Expr::neg(std::move(a));
    case NodeKind::Pow: return Expr::pow(std::move(a), f.exponent());
    case NodeKind::Exp: return Expr::exp(std::move(a));
    case NodeKind::Sin: return Expr::sin(std::move(a));
    case NodeKind::Cos: return Expr::cos(std::move(a));
    default: break;
  }
  Expr b = substitute(f.child(1), g);
  switch (f.kind()) {
    case NodeKind::Add: return Expr::add(std::move(a), std::move(b));
    case NodeKind::Sub: return Expr::sub(std::move(a), std::move(b));
    case NodeKind::Mul: return Expr::mul(std::move(a), std::move(b));
    case NodeKind::Div: return Expr::div(std::move(a), std::move(b));
    default: break;
  }
  return f;  // unreachable
}

std::uint64_t composed_size(const Expr& f, const Expr& g) {
  // Every z in f is replaced by a copy of g.
  return sat_add(f.node_count() - f.var_count(), sat_mul(f.var_count(), g.node_count()));
}

}  // namespace

EvalResult eval(const Expr& e, Complex z, bool z_underflow) {
  Value out;
  bool own = false;
  const Fault f = walk(e, Value{z, z_underflow && is_zero(z)}, out, own);
  return detail::to_result(f, out);
}

Expr compose(const Expr& f, const Expr& g, std::uint64_t max_nodes) {
  const std::uint64_t size = composed_size(f, g);
  if (size > max_nodes) {
    throw LimitError("composition would have " + std::to_string(size) + " nodes (cap " +
                     std::to_string(max_nodes) + ")");
  }
  return substitute(f, g);
}

Expr iterate(const Expr& f, int n, std::uint64_t max_nodes) {
  if (n < 1) throw InvalidArgument("iteration count must be >= 1");
  Expr result = f;
  for (int k = 1; k < n; ++k) result = compose(f, result, max_nodes);
  return result;
}

Expr translate(const Expr& f, Complex c) { return Expr::add(f, Expr::constant(c)); }

Expr scale(const Expr& f, Complex a) { return Expr::mul(Expr::constant(a), f); }

}  // namespace bungee
