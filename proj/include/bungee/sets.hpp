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

#ifndef BUNGEE_SETS_HPP
#define BUNGEE_SETS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bungee/complex.hpp"
#include "bungee/expr.hpp"
#include "bungee/orbit.hpp"

namespace bungee {

// --- parallel runtime -----------------------------------------------------

/// Worker count for `requested` (0 = hardware concurrency), capped by the
/// BUNGEE_LAB_THREADS environment variable when it holds a positive integer.
unsigned resolve_threads(unsigned requested = 0);

/// Run body(begin, end) over [0, count) in fixed-size chunks on `threads`
/// workers. Chunk boundaries do not depend on the worker count. The first
/// exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t chunk = 256);

// --- grids ----------------------------------------------------------------

inline constexpr std::uint64_t kDefaultMaxPixels = std::uint64_t{1} << 26;

struct GridSpec {
  Complex center{};
  double width = 4.0;
  double height = 4.0;
  std::uint32_t nx = 512;
  std::uint32_t ny = 512;

  /// Throws InvalidArgument for non-positive sizes, LimitError past the cap.
  void validate(std::uint64_t max_pixels = kDefaultMaxPixels) const;

  std::uint64_t pixels() const noexcept { return std::uint64_t{nx} * ny; }

  /// Centre of pixel (j, k); k = 0 is the row with the smallest imaginary part.
  Complex point(std::uint32_t j, std::uint32_t k) const noexcept {
    return {center.re + ((j + 0.5) / nx - 0.5) * width,
            center.im + ((k + 0.5) / ny - 0.5) * height};
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Parse "cx,cy,w,h,nx,ny". Throws InvalidArgument.
GridSpec parse_grid_spec(const std::string& text);

struct ClassGrid {
  GridSpec spec;
  OrbitParams params;
  std::string function_text;
  /// Row-major, index k * nx + j.
  std::vector<Classification> verdicts;
  /// escape_step() per pixel, used for shading.
  std::vector<std::uint32_t> escape_steps;

  const Classification& at(std::uint32_t j, std::uint32_t k) const {
    return verdicts[std::size_t{k} * spec.nx + j];
  }
};

struct GridOptions {
  unsigned threads = 0;  ///< 0 = resolve_threads()
  std::uint64_t max_pixels = kDefaultMaxPixels;
};

ClassGrid classify_grid(const Expr& f, const GridSpec& spec, const OrbitParams& p,
                        const GridOptions& o = {});

struct MaskStats {
  std::uint64_t total = 0;
  std::array<std::uint64_t, 5> counts{};  ///< indexed by Verdict

  std::uint64_t count(Verdict v) const { return counts[static_cast<std::size_t>(v)]; }
  double fraction(Verdict v) const {
    return total == 0 ? 0.0 : static_cast<double>(count(v)) / static_cast<double>(total);
  }
};

/// Throws InvalidArgument for an empty grid.
MaskStats mask_stats(const ClassGrid& grid);

// --- sampling -------------------------------------------------------------

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Sample points over a rectangle: either uniform random (std::mt19937_64
/// seeded with `seed`, one 53-bit draw per coordinate) or the pixel centres of
/// an nx x ny lattice.
struct Sampler {
  enum class Kind : std::uint8_t { Uniform, Grid };
  Kind kind = Kind::Uniform;
  Region region{-2.0, 2.0, -2.0, 2.0};
  std::uint32_t count = 10000;  ///< Uniform only
  std::uint32_t nx = 100, ny = 100;  ///< Grid only
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
  std::vector<Complex> points() const;
};

/// `count` seeded points uniform in the unit disc (rejection sampling).
std::vector<Complex> unit_disc_points(std::uint32_t count, std::uint64_t seed);

/// `count` seeded points uniform in a rectangle.
std::vector<Complex> rectangle_points(const Region& r, std::uint32_t count, std::uint64_t seed);

// --- set membership -------------------------------------------------------

/// I(f), K(f), BU(f).
enum class SetKind : std::uint8_t { Escaping, Bounded, Bungee };

const char* to_string(SetKind k);
/// "I", "K", "BU" (case-insensitive) or the long names.
SetKind parse_set_kind(const std::string& text);
Verdict verdict_of(SetKind k);

enum class Membership : std::uint8_t { In, Out, Unknown };

/// Undecided and Pole are Unknown; with `strict`, Heuristic verdicts are too.
Membership membership(const Classification& c, SetKind k, bool strict);

enum class Combiner : std::uint8_t { Union, Intersection, SymmetricDifference };

const char* to_string(Combiner c);
Combiner parse_combiner(const std::string& text);

/// Three-valued combination. An empty Union is the empty set (Out); an empty
/// Intersection is everything (In).
Membership combine(Combiner c, const std::vector<Membership>& parts);

struct SetTerm {
  Expr f;
  SetKind kind = SetKind::Bungee;
};

// --- reports --------------------------------------------------------------

struct ViolationExample {
  Complex point{};
  std::vector<Verdict> lhs;  ///< verdicts behind the lhs membership
  std::vector<Verdict> rhs;  ///< verdicts behind the rhs membership
  std::string note;
};

inline constexpr std::size_t kMaxViolationExamples = 20;

struct RelationReport {
  std::string relation;
  std::string f, g;
  std::vector<std::string> expressions;  ///< every map involved, in order
  OrbitParams params;
  Sampler sampler;
  bool strict = false;
  bool conjectural = false;
  std::uint64_t samples_drawn = 0;
  std::uint64_t samples_total = 0;
  std::uint64_t samples_confident = 0;
  std::uint64_t samples_heuristic = 0;  ///< confident samples resting on a Heuristic verdict
  std::uint64_t violations = 0;
  std::vector<ViolationExample> violation_examples;
  double runtime_ms = 0.0;
};

struct VerifyOptions {
  OrbitParams params;
  Sampler sampler;
  bool strict = false;
  unsigned threads = 0;
};

/// Samples in the lhs (under lhs_combiner) whose rhs membership (under
/// rhs_combiner) is Out are violations.
RelationReport verify_containment(const std::vector<SetTerm>& lhs, Combiner lhs_combiner,
                                  const std::vector<SetTerm>& rhs, Combiner rhs_combiner,
                                  const VerifyOptions& o, std::string relation = "containment");

/// Forward half of complete invariance: z in S(f) implies g(z) in S(f).
/// Samples where g(z) is not Finite are left unconfident.
RelationReport verify_invariance(const Expr& f, const Expr& g, SetKind kind,
                                 const VerifyOptions& o);

/// For confidently Escaping g-orbits, f must send the escaping tail beyond R_esc.
RelationReport verify_property_a(const Expr& f, const Expr& g, const VerifyOptions& o);

/// Classify a grid, check the per-pixel verdict counts sum to the pixel count
/// and that `recheck` seeded pixels reproduce from scratch.
RelationReport verify_partition(const Expr& f, const GridSpec& spec, const VerifyOptions& o,
                                std::uint32_t recheck = 1000);

struct CommuteReport {
  std::string f, g;
  bool commutes = false;
  bool inconclusive = false;
  std::uint32_t samples = 0;
  std::uint32_t usable = 0;
  double tol = 1e-9;
  double max_rel_err = 0.0;
  std::optional<Complex> witness;  ///< point of max_rel_err
  std::uint64_t seed = kDefaultSeed;
  double runtime_ms = 0.0;
};

inline constexpr std::uint32_t kMinUsableSamples = 10;

/// f(g(z)) against g(f(z)) at seeded points in the unit disc.
CommuteReport verify_commute(const Expr& f, const Expr& g, std::uint32_t samples = 1000,
                             double tol = 1e-9, std::uint64_t seed = kDefaultSeed);

/// Pointwise agreement of two maps, for algebraic identities such as
/// (f o g)^2 = f^4.
struct EqualityReport {
  std::string lhs, rhs;
  bool equal = false;
  bool inconclusive = false;
  std::uint32_t target = 0;  ///< usable points wanted
  std::uint32_t drawn = 0;
  std::uint32_t usable = 0;
  double tol = 1e-9;
  double max_rel_err = 0.0;
  std::optional<Complex> witness;
  std::uint64_t seed = kDefaultSeed;
  double runtime_ms = 0.0;
};

/// Draws seeded points from the unit disc until `usable` of them give Finite
/// values for both maps (at most 100 * usable draws).
EqualityReport verify_equal(const Expr& lhs, const Expr& rhs, std::uint32_t usable = 100,
                            double tol = 1e-9, std::uint64_t seed = kDefaultSeed);

struct TranslateFailure {
  std::uint32_t n = 0;
  Complex point{};
  double error = 0.0;
  /// g^n(z) = f^n(z) + nC holds at this (n, z): C behaves as a pseudo-period.
  bool pseudo_period = false;
  double pseudo_period_error = 0.0;
};

struct TranslateReport {
  std::string f, g;
  Complex C{};
  std::uint32_t n_max = 20;
  std::uint32_t samples = 0;
  std::uint32_t usable = 0;
  double tol = 1e-9;
  bool identity_holds = false;
  bool inconclusive = false;
  /// Largest |g^n - f^n - C| / max(1, |f^n|, |g^n|) over all tested (n, z).
  double max_error = 0.0;
  /// g^n = f^n + nC held at every tested (n, z).
  bool pseudo_period_holds = false;
  double max_pseudo_period_error = 0.0;
  std::optional<TranslateFailure> first_failure;
  /// Verdicts of f and g compared point by point on the sampler.
  std::uint64_t agreement_samples = 0;
  std::uint64_t agreement_matches = 0;
  std::array<std::uint64_t, 5> f_counts{}, g_counts{};
  Sampler sampler;
  OrbitParams params;
  double runtime_ms = 0.0;
};

/// g = translate(f, C); checks g^n(z) = f^n(z) + C for n = 1..n_max at
/// `samples` seeded points of o.sampler's region.
TranslateReport verify_translate(const Expr& f, Complex C, std::uint32_t n_max,
                                 std::uint32_t samples, double tol, const VerifyOptions& o);

// --- JSON -----------------------------------------------------------------

std::string to_json(const RelationReport& r, int indent = 2);
std::string to_json(const CommuteReport& r, int indent = 2);
std::string to_json(const TranslateReport& r, int indent = 2);
std::string to_json(const EqualityReport& r, int indent = 2);
std::string to_json(const MaskStats& s, int indent = 2);
std::string to_json(const OrbitParams& p, int indent = 2);

}  // namespace bungee

#endif  // BUNGEE_SETS_HPP
