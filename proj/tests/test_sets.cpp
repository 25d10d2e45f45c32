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

#include <gtest/gtest.h>

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>

#include "bungee/errors.hpp"
#include "bungee/expr.hpp"
#include "bungee/orbit.hpp"
#include "bungee/sets.hpp"
#include "oracles.hpp"

using namespace bungee;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

VerifyOptions options(std::uint32_t count, Region region = {-2, 2, -2, 2},
                      std::uint64_t seed = 42) {
  VerifyOptions o;
  o.sampler.count = count;
  o.sampler.region = region;
  o.sampler.seed = seed;
  return o;
}

// Independent recount: verdicts from the brute-force oracle, memberships
// decided here from the verdict alone.
struct Recount {
  std::uint64_t total = 0, confident = 0, heuristic = 0, violations = 0;
};

bool oracle_heuristic(Verdict v) { return v == Verdict::Bungee || v == Verdict::Undecided; }

// 0 out, 1 in, 2 unknown
int oracle_member(Verdict v, SetKind k, bool strict) {
  if (v == Verdict::Undecided || v == Verdict::Pole) return 2;
  if (strict && oracle_heuristic(v)) return 2;
  return v == verdict_of(k) ? 1 : 0;
}

}  // namespace

// --- runtime ----------------------------------------------------------------

TEST(Runtime, ParallelForVisitsEveryIndexOnce) {
  for (unsigned threads : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(10007);
    parallel_for(hits.size(), threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) hits[i].fetch_add(1);
    });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Runtime, ParallelForRethrows) {
  EXPECT_THROW(parallel_for(5000, 4,
                            [](std::size_t b, std::size_t) {
                              if (b >= 2048) throw InvalidArgument("boom");
                            }),
               InvalidArgument);
}

TEST(Runtime, EnvironmentCapsThreads) {
  ::setenv("BUNGEE_LAB_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(8), 2u);
  EXPECT_EQ(resolve_threads(1), 1u);
  ::setenv("BUNGEE_LAB_THREADS", "junk", 1);
  EXPECT_EQ(resolve_threads(8), 8u);
  ::unsetenv("BUNGEE_LAB_THREADS");
  EXPECT_EQ(resolve_threads(5), 5u);
  EXPECT_GE(resolve_threads(0), 1u);
}

// --- grids ------------------------------------------------------------------

TEST(Grid, PixelCentres) {
  GridSpec s;
  s.center = {1.0, -1.0};
  s.width = 2.0;
  s.height = 4.0;
  s.nx = 2;
  s.ny = 4;
  EXPECT_EQ(s.point(0, 0), Complex(0.5, -2.5));
  EXPECT_EQ(s.point(1, 3), Complex(1.5, 0.5));
  EXPECT_EQ(s.pixels(), 8u);
}

TEST(Grid, ParseSpec) {
  const GridSpec s = parse_grid_spec("0.5,-1,3,2,30,20");
  EXPECT_EQ(s.center, Complex(0.5, -1.0));
  EXPECT_EQ(s.width, 3.0);
  EXPECT_EQ(s.height, 2.0);
  EXPECT_EQ(s.nx, 30u);
  EXPECT_EQ(s.ny, 20u);
  EXPECT_THROW(parse_grid_spec("0,0,4,4,10"), InvalidArgument);
  EXPECT_THROW(parse_grid_spec("0,0,4,4,10,x"), InvalidArgument);
  EXPECT_THROW(parse_grid_spec("0,0,-4,4,10,10"), InvalidArgument);
  EXPECT_THROW(parse_grid_spec("0,0,4,4,0,10"), InvalidArgument);
}

TEST(Grid, PixelCap) {
  GridSpec s;
  s.nx = 1000;
  s.ny = 1000;
  EXPECT_THROW(s.validate(999'999), LimitError);
  EXPECT_NO_THROW(s.validate(1'000'000));
  GridOptions o;
  o.max_pixels = 100;
  EXPECT_THROW(classify_grid(parse("z^2"), s, OrbitParams{}, o), LimitError);
}

TEST(Grid, AgreesWithPointwiseClassification) {
  const Expr f = parse("1/z^2");
  const GridSpec s = parse_grid_spec("0.1,-0.2,3,3,33,17");
  const ClassGrid g = classify_grid(f, s, OrbitParams{});
  ASSERT_EQ(g.verdicts.size(), 33u * 17u);
  EXPECT_EQ(g.function_text, print(f));
  const Program prog(f);
  for (std::uint32_t k = 0; k < s.ny; ++k)
    for (std::uint32_t j = 0; j < s.nx; ++j) {
      EXPECT_EQ(g.at(j, k), classify_point(prog, s.point(j, k), OrbitParams{}));
      EXPECT_EQ(g.at(j, k).verdict, oracle::classify(f, s.point(j, k), OrbitParams{}));
    }
}

TEST(Grid, ScheduleIndependent) {
  const Expr f = parse("1+z+exp(-z)");
  const GridSpec s = parse_grid_spec("-2,0,8,8,97,61");
  GridOptions one, four, all;
  one.threads = 1;
  four.threads = 4;
  all.threads = std::max(2u, std::thread::hardware_concurrency());
  const ClassGrid a = classify_grid(f, s, OrbitParams{}, one);
  const ClassGrid b = classify_grid(f, s, OrbitParams{}, four);
  const ClassGrid c = classify_grid(f, s, OrbitParams{}, all);
  EXPECT_EQ(a.verdicts, b.verdicts);
  EXPECT_EQ(a.verdicts, c.verdicts);
  EXPECT_EQ(a.escape_steps, b.escape_steps);
  EXPECT_EQ(a.escape_steps, c.escape_steps);
}

TEST(Grid, ReciprocalSquareIsBungeeOffTheCircle) {
  const ClassGrid g = classify_grid(parse("1/z^2"), parse_grid_spec("0,0,4,4,64,64"), {});
  for (std::uint32_t k = 0; k < 64; ++k)
    for (std::uint32_t j = 0; j < 64; ++j) {
      const double r = abs(g.spec.point(j, k));
      if (std::fabs(r - 1.0) > 0.05) EXPECT_EQ(g.at(j, k).verdict, Verdict::Bungee) << r;
    }
  const MaskStats st = mask_stats(g);
  EXPECT_EQ(st.total, 64u * 64u);
  EXPECT_GT(st.fraction(Verdict::Bungee), 0.8);
}

TEST(Grid, SquareHasNoBungee) {
  const MaskStats st = mask_stats(classify_grid(parse("z^2"), parse_grid_spec("0,0,4,4,64,64"), {}));
  EXPECT_EQ(st.count(Verdict::Bungee), 0u);
  std::uint64_t sum = 0;
  for (auto c : st.counts) sum += c;
  EXPECT_EQ(sum, st.total);
  EXPECT_GT(st.count(Verdict::Bounded), 0u);
  EXPECT_GT(st.count(Verdict::Escaping), 0u);
}

TEST(Grid, EmptyGridStatsThrow) {
  ClassGrid g;
  EXPECT_THROW(mask_stats(g), InvalidArgument);
}

// --- samplers ---------------------------------------------------------------

TEST(Sampler, UniformIsSeededAndInside) {
  Sampler s;
  s.region = {-1, 3, 2, 5};
  s.count = 500;
  const auto a = s.points();
  EXPECT_EQ(a, s.points());
  ASSERT_EQ(a.size(), 500u);
  for (const Complex p : a) EXPECT_TRUE(s.region.contains(p));
  // One 53-bit draw per coordinate, x first.
  std::mt19937_64 rng(s.seed);
  const double ux = static_cast<double>(rng() >> 11) / 9007199254740992.0;
  const double uy = static_cast<double>(rng() >> 11) / 9007199254740992.0;
  EXPECT_DOUBLE_EQ(a[0].re, -1 + 4 * ux);
  EXPECT_DOUBLE_EQ(a[0].im, 2 + 3 * uy);
  s.seed = 7;
  EXPECT_NE(a, s.points());
}

TEST(Sampler, GridUsesPixelCentres) {
  Sampler s;
  s.kind = Sampler::Kind::Grid;
  s.region = {0, 4, 0, 2};
  s.nx = 4;
  s.ny = 2;
  const auto pts = s.points();
  ASSERT_EQ(pts.size(), 8u);
  EXPECT_EQ(pts[0], Complex(0.5, 0.5));
  EXPECT_EQ(pts[7], Complex(3.5, 1.5));
}

TEST(Sampler, RejectsEmpty) {
  Sampler s;
  s.count = 0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.count = 1;
  s.region = {1, 1, 0, 1};
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Sampler, UnitDisc) {
  const auto pts = unit_disc_points(2000, 3);
  ASSERT_EQ(pts.size(), 2000u);
  double mean_r2 = 0;
  for (const Complex p : pts) {
    EXPECT_LT(p.re * p.re + p.im * p.im, 1.0);
    mean_r2 += p.re * p.re + p.im * p.im;
  }
  // E|z|^2 = 1/2 for the uniform disc.
  EXPECT_NEAR(mean_r2 / 2000, 0.5, 0.03);
  EXPECT_EQ(pts, unit_disc_points(2000, 3));
}

// --- membership ---------------------------------------------------------------

TEST(Membership, Table) {
  const Classification esc{Verdict::Escaping, Confidence::Confident};
  const Classification bu{Verdict::Bungee, Confidence::Heuristic};
  const Classification und{Verdict::Undecided, Confidence::Heuristic};
  const Classification pole{Verdict::Pole, Confidence::Confident};
  EXPECT_EQ(membership(esc, SetKind::Escaping, false), Membership::In);
  EXPECT_EQ(membership(esc, SetKind::Bounded, false), Membership::Out);
  EXPECT_EQ(membership(bu, SetKind::Bungee, false), Membership::In);
  EXPECT_EQ(membership(bu, SetKind::Bungee, true), Membership::Unknown);
  EXPECT_EQ(membership(esc, SetKind::Escaping, true), Membership::In);
  for (SetKind k : {SetKind::Escaping, SetKind::Bounded, SetKind::Bungee}) {
    EXPECT_EQ(membership(und, k, false), Membership::Unknown);
    EXPECT_EQ(membership(pole, k, false), Membership::Unknown);
  }
}

TEST(Membership, Names) {
  EXPECT_EQ(parse_set_kind("I"), SetKind::Escaping);
  EXPECT_EQ(parse_set_kind("k"), SetKind::Bounded);
  EXPECT_EQ(parse_set_kind("BU"), SetKind::Bungee);
  EXPECT_THROW(parse_set_kind("X"), InvalidArgument);
  EXPECT_STREQ(to_string(SetKind::Bungee), "BU");
  EXPECT_EQ(parse_combiner(to_string(Combiner::SymmetricDifference)),
            Combiner::SymmetricDifference);
}

TEST(Membership, CombineIsKleene) {
  const Membership I = Membership::In, O = Membership::Out, U = Membership::Unknown;
  EXPECT_EQ(combine(Combiner::Union, {}), O);
  EXPECT_EQ(combine(Combiner::Intersection, {}), I);
  EXPECT_EQ(combine(Combiner::Union, {O, U}), U);
  EXPECT_EQ(combine(Combiner::Union, {U, I}), I);
  EXPECT_EQ(combine(Combiner::Intersection, {I, U}), U);
  EXPECT_EQ(combine(Combiner::Intersection, {U, O}), O);
  EXPECT_EQ(combine(Combiner::SymmetricDifference, {I, O}), I);
  EXPECT_EQ(combine(Combiner::SymmetricDifference, {I, I}), O);
  EXPECT_EQ(combine(Combiner::SymmetricDifference, {I, U}), U);
  EXPECT_EQ(combine(Combiner::SymmetricDifference, {I, I, I}), I);
}

// --- containment ----------------------------------------------------------------

TEST(Containment, HoldsForNestedBoundedSets) {
  // K(z^2) and K(z^4) are both the closed unit disc.
  const auto r = verify_containment({{parse("z^2"), SetKind::Bounded}}, Combiner::Union,
                                    {{parse("z^4"), SetKind::Bounded}}, Combiner::Union,
                                    options(2000));
  EXPECT_EQ(r.samples_drawn, 2000u);
  EXPECT_GT(r.samples_total, 200u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.violation_examples.empty());
}

TEST(Containment, FindsViolationsAndCapsExamples) {
  const Expr f = parse("z^2");
  const auto r = verify_containment({{f, SetKind::Bounded}}, Combiner::Union,
                                    {{f, SetKind::Escaping}}, Combiner::Union, options(1000));
  EXPECT_EQ(r.violations, r.samples_confident);
  EXPECT_GT(r.violations, 20u);
  EXPECT_EQ(r.violation_examples.size(), kMaxViolationExamples);
  for (const auto& ex : r.violation_examples) {
    EXPECT_LE(abs(ex.point), 1.0 + 1e-12);
    EXPECT_EQ(oracle::classify(f, ex.point, OrbitParams{}), Verdict::Bounded);
  }
}

TEST(Containment, EmptyRhsUnionIsEmptySet) {
  const auto r = verify_containment({{parse("1/z^2"), SetKind::Bungee}}, Combiner::Union, {},
                                    Combiner::Union, options(500));
  EXPECT_GT(r.samples_total, 0u);
  EXPECT_EQ(r.violations, r.samples_total);
  EXPECT_THROW(verify_containment({}, Combiner::Union, {}, Combiner::Union, options(10)),
               InvalidArgument);
}

TEST(Containment, CountsMatchOracleRecount) {
  const Expr f = parse("1/z^2"), g = parse("z*exp(z^2)");
  for (bool strict : {false, true}) {
    VerifyOptions o = options(600, {-1.5, 1.5, -1.5, 1.5}, 9);
    o.strict = strict;
    o.params.max_iter = 300;
    const auto r = verify_containment({{f, SetKind::Bungee}, {g, SetKind::Bounded}},
                                      Combiner::Union, {{g, SetKind::Escaping}},
                                      Combiner::Union, o);
    Recount want;
    for (const Complex p : o.sampler.points()) {
      const Verdict vf = oracle::classify(f, p, o.params);
      const Verdict vg = oracle::classify(g, p, o.params);
      const int a = oracle_member(vf, SetKind::Bungee, strict);
      const int b = oracle_member(vg, SetKind::Bounded, strict);
      if (!(a == 1 || b == 1)) continue;
      ++want.total;
      const int m = oracle_member(vg, SetKind::Escaping, strict);
      if (m == 2) continue;
      ++want.confident;
      if ((a != 2 && oracle_heuristic(vf)) || oracle_heuristic(vg)) ++want.heuristic;
      if (m == 0) ++want.violations;
    }
    EXPECT_EQ(r.samples_total, want.total) << strict;
    EXPECT_EQ(r.samples_confident, want.confident) << strict;
    EXPECT_EQ(r.samples_heuristic, want.heuristic) << strict;
    EXPECT_EQ(r.violations, want.violations) << strict;
  }
}

TEST(Containment, ThreadCountDoesNotChangeReport) {
  VerifyOptions a = options(3000), b = options(3000);
  a.threads = 1;
  b.threads = 4;
  const std::vector<SetTerm> lhs{{parse("1+z+exp(-z)"), SetKind::Bounded}};
  const std::vector<SetTerm> rhs{{parse("1+z+exp(-z)+2*pi*i"), SetKind::Bounded}};
  const auto ra = verify_containment(lhs, Combiner::Union, rhs, Combiner::Union, a);
  const auto rb = verify_containment(lhs, Combiner::Union, rhs, Combiner::Union, b);
  EXPECT_EQ(ra.samples_total, rb.samples_total);
  EXPECT_EQ(ra.samples_confident, rb.samples_confident);
  EXPECT_EQ(ra.violations, rb.violations);
  ASSERT_EQ(ra.violation_examples.size(), rb.violation_examples.size());
  for (std::size_t i = 0; i < ra.violation_examples.size(); ++i)
    EXPECT_EQ(ra.violation_examples[i].point, rb.violation_examples[i].point);
}

// --- invariance -------------------------------------------------------------------

TEST(Invariance, NegationPreservesSquareSets) {
  const Expr f = parse("z^2"), g = parse("-z");
  for (SetKind k : {SetKind::Escaping, SetKind::Bounded}) {
    const auto r = verify_invariance(f, g, k, options(2000));
    EXPECT_GT(r.samples_confident, 300u);
    EXPECT_EQ(r.violations, 0u);
  }
}

TEST(Invariance, ShiftBreaksBoundedSet) {
  const auto r = verify_invariance(parse("z^2"), parse("z+1"), SetKind::Bounded, options(2000));
  EXPECT_GT(r.violations, 0u);
  for (const auto& ex : r.violation_examples) {
    EXPECT_EQ(oracle::classify(parse("z^2"), ex.point, OrbitParams{}), Verdict::Bounded);
    EXPECT_NE(oracle::classify(parse("z^2"), ex.point + Complex(1.0), OrbitParams{}),
              Verdict::Bounded);
  }
}

TEST(Invariance, CountsMatchOracleRecount) {
  const Expr f = parse("1+z+exp(-z)"), g = parse("1+z+exp(-z)+2*pi*i");
  VerifyOptions o = options(500, {-4, 2, -4, 4}, 11);
  o.params.max_iter = 300;
  const auto r = verify_invariance(f, g, SetKind::Escaping, o);
  Recount want;
  for (const Complex p : o.sampler.points()) {
    const Verdict v = oracle::classify(f, p, o.params);
    if (oracle_member(v, SetKind::Escaping, false) != 1) continue;
    ++want.total;
    const EvalResult w = eval(g, p);
    if (!w.finite()) continue;
    const Verdict d = oracle::classify(f, w.value, o.params);
    const int m = oracle_member(d, SetKind::Escaping, false);
    if (m == 2) continue;
    ++want.confident;
    if (m == 0) ++want.violations;
  }
  EXPECT_EQ(r.samples_total, want.total);
  EXPECT_EQ(r.samples_confident, want.confident);
  EXPECT_EQ(r.violations, want.violations);
}

// --- property A -------------------------------------------------------------------

TEST(PropertyA, PowersPushEscapingTailsOut) {
  const auto r = verify_property_a(parse("z^3"), parse("z^2"), options(2000));
  EXPECT_GT(r.samples_confident, 500u);
  EXPECT_EQ(r.violations, 0u);
}

TEST(PropertyA, ContractionFails) {
  // f = 1/z sends any escaping tail of z^2 back near zero.
  const auto r = verify_property_a(parse("1/z"), parse("z^2"), options(1000));
  EXPECT_GT(r.violations, 0u);
  EXPECT_EQ(r.violations, r.samples_confident);
}

// --- partition --------------------------------------------------------------------

TEST(Partition, ReclassificationAgrees) {
  const auto r = verify_partition(parse("1/z^2"), parse_grid_spec("0,0,4,4,40,40"), {}, 200);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GT(r.samples_confident, 0u);
}

// --- commute / equality ---------------------------------------------------------------

TEST(Commute, PowersCommute) {
  const auto r = verify_commute(parse("z^2"), parse("z^3"));
  EXPECT_TRUE(r.commutes);
  EXPECT_FALSE(r.inconclusive);
  EXPECT_EQ(r.samples, 1000u);
  EXPECT_LE(r.max_rel_err, 1e-12);
}

TEST(Commute, ReciprocalPairCommutes) {
  const auto r = verify_commute(parse("z^2"), parse("1/z^2"));
  EXPECT_TRUE(r.commutes);
}

TEST(Commute, ShiftDoesNot) {
  const auto r = verify_commute(parse("z^2"), parse("z+1"));
  EXPECT_FALSE(r.commutes);
  ASSERT_TRUE(r.witness.has_value());
  const Complex w = *r.witness;
  // (w+1)^2 vs w^2+1 differ by 2w.
  EXPECT_NEAR(r.max_rel_err, relative_difference((w + 1.0) * (w + 1.0), w * w + 1.0), 1e-12);
}

TEST(Commute, InconclusiveWithoutUsablePoints) {
  const auto r = verify_commute(parse("1/(z-z)"), parse("z"), 100);
  EXPECT_TRUE(r.inconclusive);
  EXPECT_FALSE(r.commutes);
  EXPECT_LT(r.usable, kMinUsableSamples);
}

TEST(Equal, IterateIdentity) {
  const Expr f = parse("z*exp(z^2)"), g = parse("-1*(z*exp(z^2))");
  const auto r = verify_equal(iterate(compose(f, g), 2), iterate(f, 4), 100);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.usable, 100u);
  const auto bad = verify_equal(parse("z^2"), parse("z^3"), 50);
  EXPECT_FALSE(bad.equal);
}

// --- translate -------------------------------------------------------------------------

TEST(Translate, SinePeriodIsExact) {
  VerifyOptions o = options(200, {-1, 1, -1, 1});
  const auto r = verify_translate(parse("sin(z)"), {2 * kPi, 0.0}, 20, 100, 1e-9, o);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_FALSE(r.first_failure.has_value());
  EXPECT_LT(r.max_error, 1e-9);
  EXPECT_EQ(r.agreement_samples, 200u);
}

TEST(Translate, FatouMapFailsAtTwoAsPseudoPeriod) {
  VerifyOptions o = options(200, {-1, 1, -1, 1});
  const auto r = verify_translate(parse("1+z+exp(-z)"), {0.0, 2 * kPi}, 20, 100, 1e-9, o);
  EXPECT_FALSE(r.identity_holds);
  ASSERT_TRUE(r.first_failure.has_value());
  EXPECT_EQ(r.first_failure->n, 2u);
  EXPECT_TRUE(r.first_failure->pseudo_period);
  EXPECT_LT(r.first_failure->pseudo_period_error, 1e-9);
  // The error at n = 2 is |C| / max(1, |f^2|, |g^2|).
  EXPECT_GT(r.first_failure->error, 1e-3);
}

TEST(Translate, SquarePlusOneIsNoPseudoPeriod) {
  VerifyOptions o = options(100, {-1, 1, -1, 1});
  const auto r = verify_translate(parse("z^2"), {1.0, 0.0}, 5, 50, 1e-9, o);
  ASSERT_TRUE(r.first_failure.has_value());
  EXPECT_EQ(r.first_failure->n, 2u);
  EXPECT_FALSE(r.first_failure->pseudo_period);
  EXPECT_FALSE(r.pseudo_period_holds);
}

// --- JSON -------------------------------------------------------------------------------

TEST(Json, RelationReportFields) {
  const auto r = verify_containment({{parse("z^2"), SetKind::Bounded}}, Combiner::Union,
                                    {{parse("z^4"), SetKind::Bounded}}, Combiner::Union,
                                    options(100));
  const json j = json::parse(to_json(r));
  EXPECT_EQ(j["samples_drawn"], 100);
  EXPECT_EQ(j["samples_total"], r.samples_total);
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(j["params"]["max_iter"], 1000);
  EXPECT_TRUE(j["violation_examples"].is_array());
}

TEST(Json, CommuteAndTranslate) {
  const json c = json::parse(to_json(verify_commute(parse("z^2"), parse("z+1"), 50)));
  EXPECT_EQ(c["commutes"], false);
  EXPECT_EQ(c["violations"], 1);
  VerifyOptions o = options(20, {-1, 1, -1, 1});
  const json t = json::parse(
      to_json(verify_translate(parse("1+z+exp(-z)"), {0.0, 2 * kPi}, 5, 10, 1e-9, o)));
  EXPECT_EQ(t["violations"], 1);
  EXPECT_EQ(t["first_failure"]["n"], 2);
}
