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

#include <algorithm>
#include <cmath>

#include "bungee/errors.hpp"
#include "bungee/orbit.hpp"

namespace bungee {

namespace {

struct Residual {
  bool ok = false;
  Complex h{};   // f(z) - z
  Complex dh{};  // f'(z) - 1
  Complex d2h{}; // f''(z)
};

class FixedPointProblem {
 public:
  explicit FixedPointProblem(const Expr& f)
      : f_(f), df_(derivative(f)), d2f_(derivative(derivative(f))) {}

  Residual at(Complex z) const {
    Residual r;
    const EvalResult a = f_(z);
    const EvalResult b = df_(z);
    if (!a.finite() || !b.finite()) return r;
    r.h = a.value - z;
    r.dh = b.value - Complex(1.0);
    const EvalResult c = d2f_(z);
    r.d2h = c.finite() ? c.value : Complex(NAN, NAN);
    r.ok = is_finite(r.h) && is_finite(r.dh);
    return r;
  }

  Complex multiplier(Complex z) const {
    const EvalResult b = df_(z);
    return b.finite() ? b.value : Complex(NAN, NAN);
  }

  double residual(Complex z) const {
    const EvalResult a = f_(z);
    return a.finite() ? abs(a.value - z) : INFINITY;
  }

 private:
  Program f_, df_, d2f_;
};

// Each step tries both a Newton step and Schröder's step
// z - h h' / (h'^2 - h h''), keeping whichever lands on the smaller residual.
// Schröder's iteration stays quadratic at multiple roots (f(z) - z has a
// triple root at a parabolic point like z e^{-z^2} at 0), where Newton alone
// would crawl linearly into the flat region of the floating residual.
std::optional<Complex> solve(const FixedPointProblem& pb, Complex z, int max_steps) {
  for (int k = 0; k < max_steps; ++k) {
    const Residual r = pb.at(z);
    if (!r.ok) return std::nullopt;
    if (is_zero(r.h)) return z;

    Complex best = z;
    double best_res = INFINITY;
    auto consider = [&](Complex cand) {
      if (!is_finite(cand)) return;
      const double res = pb.residual(cand);
      if (res < best_res) {
        best = cand;
        best_res = res;
      }
    };
    if (!is_zero(r.dh)) consider(z - r.h / r.dh);
    if (is_finite(r.d2h)) {
      const Complex den = r.dh * r.dh - r.h * r.d2h;
      if (!is_zero(den)) consider(z - (r.h * r.dh) / den);
    }
    if (!std::isfinite(best_res)) return k == 0 ? std::nullopt : std::optional<Complex>(z);
    const double step = abs(best - z);
    z = best;
    if (step <= 1e-15 * (1.0 + abs(z))) return z;
  }
  return z;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "Attracting";
    case Stability::Repelling: return "Repelling";
    case Stability::Indifferent: return "Indifferent";
  }
  return "?";
}

std::pair<Stability, std::optional<int>> classify_multiplier(Complex lambda,
                                                            const FixedPointOptions& o) {
  const double m = abs(lambda);
  if (m < 1.0 - o.delta) return {Stability::Attracting, std::nullopt};
  if (m > 1.0 + o.delta) return {Stability::Repelling, std::nullopt};
  Complex power = lambda;
  for (int q = 1; q <= o.max_q; ++q) {
    if (abs(power - Complex(1.0)) < o.root_of_unity_tol) return {Stability::Indifferent, q};
    power = power * lambda;
  }
  return {Stability::Indifferent, std::nullopt};
}

std::vector<FixedPointReport> find_fixed_points(const Expr& f, const Region& region,
                                                const FixedPointOptions& o) {
  if (!(region.xmin < region.xmax) || !(region.ymin < region.ymax)) {
    throw InvalidArgument("fixed-point region must be nonempty");
  }
  if (o.starts < 1) throw InvalidArgument("starts must be positive");

  const FixedPointProblem pb(f);
  const double slack = 1e-9 * std::max({1.0, std::fabs(region.xmin), std::fabs(region.xmax),
                                        std::fabs(region.ymin), std::fabs(region.ymax)});
  std::vector<FixedPointReport> found;
  for (int a = 0; a < o.starts; ++a) {
    for (int b = 0; b < o.starts; ++b) {
      const Complex start{region.xmin + (a + 0.5) / o.starts * (region.xmax - region.xmin),
                          region.ymin + (b + 0.5) / o.starts * (region.ymax - region.ymin)};
      auto root = solve(pb, start, o.max_newton_steps);
      if (!root) continue;
      const Complex z = *root;
      const double res = pb.residual(z);
      if (!(res < o.newton_tol) || !region.contains(z, slack)) continue;

      auto dup = std::find_if(found.begin(), found.end(), [&](const FixedPointReport& r) {
        return abs(r.location - z) < o.dedupe_radius;
      });
      if (dup != found.end()) {
        if (res < dup->residual) {
          dup->location = z;
          dup->residual = res;
        }
        continue;
      }
      FixedPointReport rep;
      rep.location = z;
      rep.residual = res;
      found.push_back(rep);
    }
  }
  for (auto& r : found) {
    r.multiplier = pb.multiplier(r.location);
    std::tie(r.stability, r.rational_q) = classify_multiplier(r.multiplier, o);
  }
  std::sort(found.begin(), found.end(), [](const FixedPointReport& x, const FixedPointReport& y) {
    return x.location.re != y.location.re ? x.location.re < y.location.re
                                          : x.location.im < y.location.im;
  });
  return found;
}

}  // namespace bungee
