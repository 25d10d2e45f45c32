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

// Single-step arithmetic shared by the tree walker, the compiled program and
// the parser's constant folder. All three must agree bit for bit.

#ifndef BUNGEE_SRC_VALUE_OPS_HPP
#define BUNGEE_SRC_VALUE_OPS_HPP

#include <cmath>

#include "bungee/complex.hpp"
#include "bungee/expr.hpp"

namespace bungee::detail {

/// Finite intermediate. `tiny` means z == 0 stands for a nonzero value that
/// underflowed.
struct Value {
  Complex z;
  bool tiny;
};

enum class Fault : unsigned char { None, Overflow, Pole };

inline bool exact_zero(const Value& v) { return is_zero(v.z) && !v.tiny; }

inline Fault finish(Complex r, bool zero_is_tiny, Value& out) {
  if (!is_finite(r)) return Fault::Overflow;
  out.z = r;
  out.tiny = zero_is_tiny && is_zero(r);
  return Fault::None;
}

inline Fault op_add(const Value& a, const Value& b, Value& out) {
  return finish(a.z + b.z, a.tiny || b.tiny, out);
}

inline Fault op_sub(const Value& a, const Value& b, Value& out) {
  return finish(a.z - b.z, a.tiny || b.tiny, out);
}

inline Fault op_neg(const Value& a, Value& out) {
  out = {-a.z, a.tiny};
  return Fault::None;
}

inline Fault op_mul(const Value& a, const Value& b, Value& out) {
  return finish(a.z * b.z, !exact_zero(a) && !exact_zero(b), out);
}

inline Fault op_div(const Value& a, const Value& b, Value& out) {
  if (is_zero(b.z)) {
    if (!b.tiny) return Fault::Pole;
    if (exact_zero(a)) {
      out = {{}, false};
      return Fault::None;
    }
    return Fault::Overflow;
  }
  return finish(a.z / b.z, !exact_zero(a), out);
}

inline Fault op_pow(const Value& a, int n, Value& out) {
  const unsigned m = static_cast<unsigned>(n < 0 ? -n : n);
  Value acc{{1.0, 0.0}, false};
  Value base = a;
  bool have = false;
  Fault f = Fault::None;
  for (unsigned bits = m; bits != 0 && f == Fault::None; bits >>= 1) {
    if (bits & 1U) {
      if (!have) {
        acc = base;
        have = true;
      } else {
        f = op_mul(acc, base, acc);
      }
    }
    if (bits > 1 && f == Fault::None) f = op_mul(base, base, base);
  }
  if (n > 0) {
    if (f == Fault::None) out = acc;
    return f;
  }
  // |a|^m above the double range: its reciprocal is below it.
  if (f == Fault::Overflow) {
    out = {{}, true};
    return Fault::None;
  }
  return op_div(Value{{1.0, 0.0}, false}, acc, out);
}

/// The operation at the root of a denominator overflowed, so the true
/// denominator exceeds the double range. Over a numerator of modulus <= 1 the
/// quotient is below the normal range and becomes an underflowed zero.
inline bool absorb_overflow(const Value& num, Value& out) {
  if (!(abs(num.z) <= 1.0)) return false;
  out = {{}, !exact_zero(num)};
  return true;
}

inline Fault op_exp(const Value& a, Value& out) {
  if (a.tiny) {
    out = {{1.0, 0.0}, false};
    return Fault::None;
  }
  const double m = std::exp(a.z.re);
  if (std::isinf(m)) return Fault::Overflow;
  return finish({m * std::cos(a.z.im), m * std::sin(a.z.im)}, true, out);
}

// sin(x+iy) = sin x cosh y + i cos x sinh y
inline Fault op_sin(const Value& a, Value& out) {
  if (is_zero(a.z)) {
    out = a;
    return Fault::None;
  }
  const double x = a.z.re, y = a.z.im;
  return finish({std::sin(x) * std::cosh(y), std::cos(x) * std::sinh(y)}, true, out);
}

// cos(x+iy) = cos x cosh y - i sin x sinh y
inline Fault op_cos(const Value& a, Value& out) {
  if (is_zero(a.z)) {
    out = {{1.0, 0.0}, false};
    return Fault::None;
  }
  const double x = a.z.re, y = a.z.im;
  return finish({std::cos(x) * std::cosh(y), -(std::sin(x) * std::sinh(y))}, true, out);
}

inline EvalResult to_result(Fault f, const Value& v) {
  switch (f) {
    case Fault::Overflow: return EvalResult::overflow();
    case Fault::Pole: return EvalResult::pole();
    case Fault::None: break;
  }
  return {EvalKind::Finite, v.z, v.tiny};
}

}  // namespace bungee::detail

#endif  // BUNGEE_SRC_VALUE_OPS_HPP
