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

#ifndef BUNGEE_ORBIT_HPP
#define BUNGEE_ORBIT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bungee/complex.hpp"
#include "bungee/expr.hpp"
#include "bungee/program.hpp"

namespace bungee {

/// Thresholds governing iteration and classification.
struct OrbitParams {
  std::uint32_t max_iter = 1000;        ///< N
  double escape_radius = 1e8;           ///< R_esc
  double bound_radius = 1e4;            ///< R_bound, strictly below R_esc
  std::uint32_t min_oscillations = 3;   ///< k_min
  std::uint32_t tail_window = 10;       ///< W, at most N

  /// Throws InvalidArgument when an invariant is broken.
  void validate() const;

  friend bool operator==(const OrbitParams&, const OrbitParams&) = default;
};

enum class Termination : std::uint8_t { Completed, Overflow, Pole };

/// Recorded orbit z_0 = seed, z_{n+1} = f(z_n).
///
/// For Overflow and Pole, `termination_step` is the index n whose image f(z_n)
/// could not be represented; the trace then holds n+1 magnitudes. For
/// Completed it equals max_iter and the trace holds max_iter+1 magnitudes.
struct OrbitTrace {
  Complex seed{};
  std::vector<double> log10_magnitudes;  ///< -inf for zero
  Termination termination = Termination::Completed;
  std::uint32_t termination_step = 0;
  std::uint32_t oscillation_count = 0;
};

enum class Verdict : std::uint8_t { Escaping, Bounded, Bungee, Undecided, Pole };
enum class Confidence : std::uint8_t { Confident, Heuristic };

const char* to_string(Verdict v);
const char* to_string(Confidence c);
const char* to_string(Termination t);

struct Classification {
  Verdict verdict = Verdict::Undecided;
  Confidence confidence = Confidence::Heuristic;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Number of excursions above R_esc that are later followed by a value below
/// R_bound. Each excursion counts once.
std::uint32_t count_oscillations(std::span<const double> log10_magnitudes, const OrbitParams& p);

/// Iterate f from z0 for up to p.max_iter steps. Reuses `trace`'s storage.
void iterate_orbit(const Program& f, Complex z0, const OrbitParams& p, OrbitTrace& trace);
OrbitTrace iterate_orbit(const Program& f, Complex z0, const OrbitParams& p);
OrbitTrace iterate_orbit(const Expr& f, Complex z0, const OrbitParams& p);

/// Rules, first match wins:
///  1. PoleAt                                   -> Pole (Confident)
///  2. oscillations >= k_min                    -> Bungee (Heuristic)
///  3. OverflowAt after at least one oscillation -> Bungee (Heuristic)
///  4. OverflowAt with no oscillation, or a tail of W magnitudes all above
///     R_esc and nondecreasing                  -> Escaping (Confident)
///  5. Completed with every magnitude <= R_bound -> Bounded (Confident)
///  6. otherwise                                -> Undecided (Heuristic)
Classification classify(const OrbitTrace& t, const OrbitParams& p);

/// First step at which the orbit is seen to escape: termination_step + 1 on
/// overflow, else the first index above R_esc, else 0.
std::uint32_t escape_step(const OrbitTrace& t, const OrbitParams& p);

/// iterate_orbit + classify.
Classification classify_point(const Program& f, Complex z0, const OrbitParams& p);

// --- fixed points ---------------------------------------------------------

enum class Stability : std::uint8_t { Attracting, Repelling, Indifferent };

const char* to_string(Stability s);

struct FixedPointReport {
  Complex location{};
  Complex multiplier{};
  Stability stability = Stability::Indifferent;
  /// Smallest q with |λ^q - 1| < tolerance, for indifferent points only.
  std::optional<int> rational_q;
  double residual = 0.0;  ///< |f(z*) - z*|
};

struct Region {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  bool contains(Complex z, double slack = 0.0) const {
    return z.re >= xmin - slack && z.re <= xmax + slack && z.im >= ymin - slack &&
           z.im <= ymax + slack;
  }
};

struct FixedPointOptions {
  int starts = 16;               ///< starts x starts Newton seeds
  double newton_tol = 1e-10;     ///< accept when |f(z)-z| below this
  double dedupe_radius = 1e-6;
  double delta = 1e-6;           ///< half-width of the indifferent band around |λ|=1
  double root_of_unity_tol = 1e-6;
  int max_q = 64;
  int max_newton_steps = 200;
};

/// Classify a multiplier against the δ-bands.
std::pair<Stability, std::optional<int>> classify_multiplier(Complex lambda,
                                                            const FixedPointOptions& o = {});

/// Newton's method on f(z) - z from a lattice over `region`, with a
/// multiple-root polish. Results lie in the region, are deduplicated and
/// sorted by (re, im).
std::vector<FixedPointReport> find_fixed_points(const Expr& f, const Region& region,
                                                const FixedPointOptions& o = {});

}  // namespace bungee

#endif  // BUNGEE_ORBIT_HPP
