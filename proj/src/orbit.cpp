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

#include "bungee/orbit.hpp"

#include <cmath>
#include <string>

#include "bungee/errors.hpp"

namespace bungee {

void OrbitParams::validate() const {
  if (max_iter == 0) throw InvalidArgument("max_iter must be positive");
  if (!(escape_radius > 0.0) || !std::isfinite(escape_radius)) {
    throw InvalidArgument("escape_radius must be a positive finite number");
  }
  if (!(bound_radius > 0.0)) throw InvalidArgument("bound_radius must be positive");
  if (!(bound_radius < escape_radius)) {
    throw InvalidArgument("bound_radius must be smaller than escape_radius");
  }
  if (min_oscillations == 0) throw InvalidArgument("min_oscillations must be at least 1");
  if (tail_window == 0 || tail_window > max_iter) {
    throw InvalidArgument("tail_window must be in [1, max_iter]");
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Escaping: return "Escaping";
    case Verdict::Bounded: return "Bounded";
    case Verdict::Bungee: return "Bungee";
    case Verdict::Undecided: return "Undecided";
    case Verdict::Pole: return "Pole";
  }
  return "?";
}

const char* to_string(Confidence c) {
  return c == Confidence::Confident ? "Confident" : "Heuristic";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::Overflow: return "Overflow";
    case Termination::Pole: return "Pole";
  }
  return "?";
}

std::uint32_t count_oscillations(std::span<const double> mags, const OrbitParams& p) {
  const double hi = std::log10(p.escape_radius);
  const double lo = std::log10(p.bound_radius);
  std::uint32_t count = 0;
  bool above = false;
  for (double m : mags) {
    if (m > hi) {
      above = true;
    } else if (above && m < lo) {
      ++count;
      above = false;
    }
  }
  return count;
}

void iterate_orbit(const Program& f, Complex z0, const OrbitParams& p, OrbitTrace& t) {
  t.seed = z0;
  t.log10_magnitudes.clear();
  t.log10_magnitudes.reserve(p.max_iter + 1);
  t.log10_magnitudes.push_back(log10_abs(z0));
  t.termination = Termination::Completed;
  t.termination_step = p.max_iter;

  Complex z = z0;
  bool tiny = false;
  for (std::uint32_t n = 0; n < p.max_iter; ++n) {
    const EvalResult r = f(z, tiny);
    if (r.kind != EvalKind::Finite) {
      t.termination = r.kind == EvalKind::Pole ? Termination::Pole : Termination::Overflow;
      t.termination_step = n;
      break;
    }
    z = r.value;
    tiny = r.underflow;
    t.log10_magnitudes.push_back(log10_abs(z));
  }
  t.oscillation_count = count_oscillations(t.log10_magnitudes, p);
}

OrbitTrace iterate_orbit(const Program& f, Complex z0, const OrbitParams& p) {
  OrbitTrace t;
  iterate_orbit(f, z0, p, t);
  return t;
}

OrbitTrace iterate_orbit(const Expr& f, Complex z0, const OrbitParams& p) {
  return iterate_orbit(Program(f), z0, p);
}

Classification classify(const OrbitTrace& t, const OrbitParams& p) {
  if (t.termination == Termination::Pole) return {Verdict::Pole, Confidence::Confident};
  if (t.oscillation_count >= p.min_oscillations) return {Verdict::Bungee, Confidence::Heuristic};
  if (t.termination == Termination::Overflow) {
    if (t.oscillation_count > 0) return {Verdict::Bungee, Confidence::Heuristic};
    return {Verdict::Escaping, Confidence::Confident};
  }

  const auto& m = t.log10_magnitudes;
  const double hi = std::log10(p.escape_radius);
  if (m.size() >= p.tail_window) {
    bool escaping = true;
    for (std::size_t i = m.size() - p.tail_window; i < m.size() && escaping; ++i) {
      escaping = m[i] > hi && (i == m.size() - p.tail_window || m[i] >= m[i - 1]);
    }
    if (escaping) return {Verdict::Escaping, Confidence::Confident};
  }

  const double lo = std::log10(p.bound_radius);
  bool bounded = true;
  for (double v : m) {
    if (!(v <= lo)) {
      bounded = false;
      break;
    }
  }
  if (bounded) return {Verdict::Bounded, Confidence::Confident};
  return {Verdict::Undecided, Confidence::Heuristic};
}

std::uint32_t escape_step(const OrbitTrace& t, const OrbitParams& p) {
  if (t.termination == Termination::Overflow) return t.termination_step + 1;
  const double hi = std::log10(p.escape_radius);
  for (std::size_t i = 0; i < t.log10_magnitudes.size(); ++i) {
    if (t.log10_magnitudes[i] > hi) return static_cast<std::uint32_t>(i);
  }
  return 0;
}

Classification classify_point(const Program& f, Complex z0, const OrbitParams& p) {
  thread_local OrbitTrace scratch;
  iterate_orbit(f, z0, p, scratch);
  return classify(scratch, p);
}

}  // namespace bungee
