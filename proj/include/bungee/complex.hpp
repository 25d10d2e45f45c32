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

#ifndef BUNGEE_COMPLEX_HPP
#define BUNGEE_COMPLEX_HPP

#include <cmath>

namespace bungee {

/// Plain complex number. std::complex is avoided on purpose in the hot paths:
/// its Annex G inf/nan recovery hides exactly the overflow we need to observe.
struct Complex {
  double re = 0.0;
  double im = 0.0;

  constexpr Complex() = default;
  constexpr Complex(double r, double i = 0.0) : re(r), im(i) {}

  friend constexpr bool operator==(const Complex&, const Complex&) = default;
};

inline bool is_finite(Complex z) { return std::isfinite(z.re) && std::isfinite(z.im); }
inline bool is_zero(Complex z) { return z.re == 0.0 && z.im == 0.0; }
inline double abs(Complex z) { return std::hypot(z.re, z.im); }

inline constexpr Complex operator+(Complex a, Complex b) { return {a.re + b.re, a.im + b.im}; }
inline constexpr Complex operator-(Complex a, Complex b) { return {a.re - b.re, a.im - b.im}; }
inline constexpr Complex operator-(Complex a) { return {-a.re, -a.im}; }
inline constexpr Complex operator*(Complex a, Complex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// Smith's algorithm; avoids premature overflow in |b|^2.
inline Complex operator/(Complex a, Complex b) {
  if (std::fabs(b.re) >= std::fabs(b.im)) {
    const double r = b.im / b.re;
    const double den = b.re + b.im * r;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  const double r = b.re / b.im;
  const double den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

/// log10 |z|; -inf for zero.
inline double log10_abs(Complex z) {
  if (is_zero(z)) return -INFINITY;
  const double m = std::fmax(std::fabs(z.re), std::fabs(z.im));
  if (m > 1e-150 && m < 1e150) return 0.5 * std::log10(z.re * z.re + z.im * z.im);
  return std::log10(abs(z));
}

/// Relative distance |a-b| / max(|a|,|b|), 0 when both are zero.
inline double relative_difference(Complex a, Complex b) {
  const double scale = std::fmax(abs(a), abs(b));
  if (scale == 0.0) return 0.0;
  return abs(a - b) / scale;
}

}  // namespace bungee

#endif  // BUNGEE_COMPLEX_HPP
