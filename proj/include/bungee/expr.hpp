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

#ifndef BUNGEE_EXPR_HPP
#define BUNGEE_EXPR_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "bungee/complex.hpp"

namespace bungee {

enum class NodeKind : std::uint8_t { Var, Const, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos };

const char* to_string(NodeKind kind);

/// Largest |n| accepted for an integer power.
inline constexpr int kMaxExponent = 64;

/// Default cap on the (fully expanded) node count of built expressions.
inline constexpr std::uint64_t kDefaultMaxNodes = 1'000'000;

/// Immutable expression tree for a map z -> f(z).
///
/// Subtrees are shared, so compose() and iterate() are cheap in memory even
/// though node_count() reports the size of the expanded tree. Values are safe
/// to share across threads.
class Expr {
 public:
  /// The variable z.
  Expr();

  static Expr var() { return Expr(); }
  /// Throws InvalidArgument if either component is non-finite.
  static Expr constant(Complex c);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr neg(Expr a);
  /// Throws InvalidArgument unless 0 < |n| <= kMaxExponent.
  static Expr pow(Expr base, int n);
  static Expr exp(Expr a);
  static Expr sin(Expr a);
  static Expr cos(Expr a);

  NodeKind kind() const noexcept;
  std::size_t arity() const noexcept;
  /// Child `i` (0 or 1). Precondition: i < arity().
  const Expr& child(std::size_t i) const;
  /// Payload of a Const node; zero for other kinds.
  Complex value() const noexcept;
  /// Exponent of a Pow node; zero for other kinds.
  int exponent() const noexcept;

  /// Size of the expanded tree, saturating at UINT64_MAX.
  std::uint64_t node_count() const noexcept;
  /// Occurrences of z in the expanded tree, saturating.
  std::uint64_t var_count() const noexcept;
  /// No Div node and no negative exponent anywhere.
  bool is_entire() const noexcept;
  /// No occurrence of z.
  bool is_constant() const noexcept { return var_count() == 0; }

  /// Structural equality (constants compared with ==).
  friend bool operator==(const Expr& a, const Expr& b);

  /// Identity of the shared root node; only meaningful for memoisation.
  const void* id() const noexcept { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(NodeKind kind, Complex value, int exponent, const Expr* a, const Expr* b);

  std::shared_ptr<const Node> node_;
};

enum class EvalKind : std::uint8_t { Finite, Overflow, Pole };

/// Outcome of evaluating an expression at one point.
///
/// Finite results always carry finite components. `underflow` marks a Finite
/// zero that stands for a nonzero value below the representable range; a
/// later division by such a zero is an Overflow rather than a Pole.
struct EvalResult {
  EvalKind kind = EvalKind::Finite;
  Complex value{};
  bool underflow = false;

  bool finite() const noexcept { return kind == EvalKind::Finite; }
  static EvalResult overflow() { return {EvalKind::Overflow, {}, false}; }
  static EvalResult pole() { return {EvalKind::Pole, {}, false}; }
};

const char* to_string(EvalKind kind);

/// Parse text in the expression grammar. Throws ParseError.
///
/// Constant-only subexpressions are folded to a single Const node when the
/// folded value is finite, so "2*pi*i" yields Const(2πi).
Expr parse(std::string_view text);

/// Fully parenthesised canonical text; parse(print(e)) == e for any tree
/// without constant-only internal nodes.
std::string print(const Expr& e);

/// Evaluate by walking the tree. `z_underflow` flags z as a flushed zero.
EvalResult eval(const Expr& e, Complex z, bool z_underflow = false);

/// Symbolic d/dz with 0/1 identity pruning only.
Expr derivative(const Expr& e);

/// f(g(z)). Throws LimitError if the result would exceed `max_nodes`.
Expr compose(const Expr& f, const Expr& g, std::uint64_t max_nodes = kDefaultMaxNodes);

/// f composed with itself n >= 1 times.
Expr iterate(const Expr& f, int n, std::uint64_t max_nodes = kDefaultMaxNodes);

/// f + c
Expr translate(const Expr& f, Complex c);

/// a * f, built as Mul(Const(a), f).
Expr scale(const Expr& f, Complex a);

}  // namespace bungee

#endif  // BUNGEE_EXPR_HPP
