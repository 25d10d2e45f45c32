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

#include <unordered_map>
#include <vector>

#include "bungee/expr.hpp"

namespace bungee {

namespace {

bool is_const(const Expr& e, double re) {
  return e.kind() == NodeKind::Const && e.value() == Complex(re, 0.0);
}

Expr zero() { return Expr::constant(0.0); }
Expr one() { return Expr::constant(1.0); }

// Pruned builders: only the 0 and 1 identities.
Expr add(Expr a, Expr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return Expr::add(std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return Expr::neg(std::move(b));
  return Expr::sub(std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return zero();
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return Expr::mul(std::move(a), std::move(b));
}

Expr neg(Expr a) {
  if (is_const(a, 0.0)) return a;
  return Expr::neg(std::move(a));
}

class Differentiator {
 public:
  Expr d(const Expr& e) {
    // Composed maps share subtrees heavily; differentiate each shared node once.
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr r = rule(e);
    memo_.emplace(e.id(), r);
    keep_.push_back(e);
    return r;
  }

 private:
  Expr rule(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Var: return one();
      case NodeKind::Const: return zero();
      case NodeKind::Add: return add(d(e.child(0)), d(e.child(1)));
      case NodeKind::Sub: return sub(d(e.child(0)), d(e.child(1)));
      case NodeKind::Neg: return neg(d(e.child(0)));
      case NodeKind::Mul: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        return add(mul(d(u), v), mul(u, d(v)));
      }
      case NodeKind::Div: {
        const Expr& u = e.child(0);
        const Expr& v = e.child(1);
        Expr du = d(u);
        Expr dv = d(v);
        if (is_const(dv, 0.0)) {
          if (is_const(du, 0.0)) return zero();
          return Expr::div(du, v);
        }
        return Expr::div(sub(mul(du, v), mul(u, dv)), Expr::pow(v, 2));
      }
      case NodeKind::Pow: {
        const Expr& u = e.child(0);
        const int n = e.exponent();
        Expr du = d(u);
        if (is_const(du, 0.0)) return zero();
        Expr lowered = n == 1                ? one()
                       : n - 1 >= -kMaxExponent ? Expr::pow(u, n - 1)
                                                : Expr::div(e, u);
        return mul(mul(Expr::constant(static_cast<double>(n)), lowered), du);
      }
      case NodeKind::Exp: return mul(e, d(e.child(0)));
      case NodeKind::Sin: return mul(Expr::cos(e.child(0)), d(e.child(0)));
      case NodeKind::Cos: return mul(neg(Expr::sin(e.child(0))), d(e.child(0)));
    }
    return zero();
  }

  std::unordered_map<const void*, Expr> memo_;
  std::vector<Expr> keep_;  // pins keys so addresses are not reused
};

}  // namespace

Expr derivative(const Expr& e) { return Differentiator().d(e); }

}  // namespace bungee
