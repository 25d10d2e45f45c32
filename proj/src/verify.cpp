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
#include <chrono>
#include <cmath>
#include <random>

#include "bungee/errors.hpp"
#include "bungee/sets.hpp"

namespace bungee {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool heuristic(const Classification& c) { return c.confidence == Confidence::Heuristic; }

// Per-sample outcome, aggregated in sample order so reports do not depend on
// the worker schedule.
enum class Outcome : std::uint8_t { Outside, Unknown, Holds, Violated };

struct SampleResult {
  Outcome outcome = Outcome::Outside;
  bool heuristic = false;
  std::vector<Verdict> lhs, rhs;
  std::string note;
};

void tally(RelationReport& r, const std::vector<Complex>& pts,
           const std::vector<SampleResult>& results) {
  r.samples_drawn = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const SampleResult& s = results[i];
    if (s.outcome == Outcome::Outside) continue;
    ++r.samples_total;
    if (s.outcome == Outcome::Unknown) continue;
    ++r.samples_confident;
    r.samples_heuristic += s.heuristic;
    if (s.outcome != Outcome::Violated) continue;
    ++r.violations;
    if (r.violation_examples.size() < kMaxViolationExamples) {
      r.violation_examples.push_back({pts[i], s.lhs, s.rhs, s.note});
    }
  }
}

RelationReport start_report(std::string relation, const VerifyOptions& o) {
  o.params.validate();
  o.sampler.validate();
  RelationReport r;
  r.relation = std::move(relation);
  r.params = o.params;
  r.sampler = o.sampler;
  r.strict = o.strict;
  return r;
}

}  // namespace

RelationReport verify_containment(const std::vector<SetTerm>& lhs, Combiner lhs_combiner,
                                  const std::vector<SetTerm>& rhs, Combiner rhs_combiner,
                                  const VerifyOptions& o, std::string relation) {
  const auto t0 = Clock::now();
  if (lhs.empty()) throw InvalidArgument("containment needs at least one lhs term");
  RelationReport r = start_report(std::move(relation), o);
  for (const auto& t : lhs) r.expressions.push_back(print(t.f));
  for (const auto& t : rhs) r.expressions.push_back(print(t.f));
  r.f = r.expressions[0];
  if (r.expressions.size() > 1) r.g = r.expressions[1];

  std::vector<Program> lprog, rprog;
  for (const auto& t : lhs) lprog.emplace_back(t.f);
  for (const auto& t : rhs) rprog.emplace_back(t.f);

  const std::vector<Complex> pts = o.sampler.points();
  std::vector<SampleResult> results(pts.size());
  parallel_for(pts.size(), resolve_threads(o.threads), [&](std::size_t b, std::size_t e) {
    OrbitTrace trace;
    auto run = [&](const Program& p, Complex z) {
      iterate_orbit(p, z, o.params, trace);
      return classify(trace, o.params);
    };
    for (std::size_t i = b; i < e; ++i) {
      SampleResult& s = results[i];
      std::vector<Membership> lm, rm;
      bool heur = false;
      for (std::size_t t = 0; t < lhs.size(); ++t) {
        const Classification c = run(lprog[t], pts[i]);
        s.lhs.push_back(c.verdict);
        lm.push_back(membership(c, lhs[t].kind, o.strict));
        heur |= lm.back() != Membership::Unknown && heuristic(c);
      }
      if (combine(lhs_combiner, lm) != Membership::In) continue;
      for (std::size_t t = 0; t < rhs.size(); ++t) {
        const Classification c = run(rprog[t], pts[i]);
        s.rhs.push_back(c.verdict);
        rm.push_back(membership(c, rhs[t].kind, o.strict));
        heur |= rm.back() != Membership::Unknown && heuristic(c);
      }
      const Membership m = combine(rhs_combiner, rm);
      s.heuristic = heur;
      s.outcome = m == Membership::Unknown ? Outcome::Unknown
                  : m == Membership::In    ? Outcome::Holds
                                           : Outcome::Violated;
    }
  });
  tally(r, pts, results);
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

RelationReport verify_invariance(const Expr& f, const Expr& g, SetKind kind,
                                 const VerifyOptions& o) {
  const auto t0 = Clock::now();
  RelationReport r = start_report(std::string("invariance ") + to_string(kind), o);
  r.f = print(f);
  r.g = print(g);
  r.expressions = {r.f, r.g};
  const Program pf(f), pg(g);

  const std::vector<Complex> pts = o.sampler.points();
  std::vector<SampleResult> results(pts.size());
  parallel_for(pts.size(), resolve_threads(o.threads), [&](std::size_t b, std::size_t e) {
    OrbitTrace trace;
    for (std::size_t i = b; i < e; ++i) {
      SampleResult& s = results[i];
      iterate_orbit(pf, pts[i], o.params, trace);
      const Classification c = classify(trace, o.params);
      s.lhs = {c.verdict};
      if (membership(c, kind, o.strict) != Membership::In) continue;
      s.outcome = Outcome::Unknown;
      const EvalResult w = pg(pts[i]);
      if (!w.finite()) continue;
      // An underflowed g(z) seeds the orbit as an exact zero.
      iterate_orbit(pf, w.value, o.params, trace);
      const Classification d = classify(trace, o.params);
      s.rhs = {d.verdict};
      const Membership m = membership(d, kind, o.strict);
      if (m == Membership::Unknown) continue;
      s.heuristic = heuristic(c) || heuristic(d);
      s.outcome = m == Membership::In ? Outcome::Holds : Outcome::Violated;
      if (s.outcome == Outcome::Violated) s.note = "g(z) left the set";
    }
  });
  tally(r, pts, results);
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

RelationReport verify_property_a(const Expr& f, const Expr& g, const VerifyOptions& o) {
  const auto t0 = Clock::now();
  RelationReport r = start_report("property-a", o);
  r.f = print(f);
  r.g = print(g);
  r.expressions = {r.f, r.g};
  const Program pf(f), pg(g);
  const double hi = std::log10(o.params.escape_radius);

  const std::vector<Complex> pts = o.sampler.points();
  std::vector<SampleResult> results(pts.size());
  parallel_for(pts.size(), resolve_threads(o.threads), [&](std::size_t b, std::size_t e) {
    OrbitTrace trace;
    std::vector<Complex> orbit;
    std::vector<bool> tiny;
    for (std::size_t i = b; i < e; ++i) {
      SampleResult& s = results[i];
      iterate_orbit(pg, pts[i], o.params, trace);
      const Classification c = classify(trace, o.params);
      s.lhs = {c.verdict};
      if (c.verdict != Verdict::Escaping || c.confidence != Confidence::Confident) continue;
      s.outcome = Outcome::Unknown;

      // Recover the complex iterates behind the recorded magnitudes.
      const std::size_t len = trace.log10_magnitudes.size();
      orbit.assign(1, pts[i]);
      tiny.assign(1, false);
      while (orbit.size() < len) {
        const EvalResult v = pg(orbit.back(), tiny.back());
        orbit.push_back(v.value);
        tiny.push_back(v.underflow);
      }

      auto sends_out = [&](std::size_t n) {
        const EvalResult v = pf(orbit[n], tiny[n]);
        s.rhs.push_back(v.finite() ? (log10_abs(v.value) > hi ? Verdict::Escaping : Verdict::Bounded)
                                   : Verdict::Escaping);
        return !v.finite() || log10_abs(v.value) > hi;
      };

      const std::size_t first = len > o.params.tail_window ? len - o.params.tail_window : 0;
      bool any_tail = false, ok = true;
      for (std::size_t n = first; n < len; ++n) {
        if (!(trace.log10_magnitudes[n] > hi)) continue;
        any_tail = true;
        if (!sends_out(n)) {
          ok = false;
          s.note = "f(g^" + std::to_string(n) + "(z)) stays below the escape radius";
          break;
        }
      }
      if (!any_tail) {
        // g jumped straight to overflow; f must do the same at the last iterate.
        if (!sends_out(len - 1)) continue;
      }
      s.outcome = ok ? Outcome::Holds : Outcome::Violated;
    }
  });
  tally(r, pts, results);
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

RelationReport verify_partition(const Expr& f, const GridSpec& spec, const VerifyOptions& o,
                                std::uint32_t recheck) {
  const auto t0 = Clock::now();
  RelationReport r = start_report("partition", o);
  r.f = print(f);
  r.expressions = {r.f};
  r.sampler.kind = Sampler::Kind::Grid;
  r.sampler.region = {spec.center.re - spec.width / 2, spec.center.re + spec.width / 2,
                      spec.center.im - spec.height / 2, spec.center.im + spec.height / 2};
  r.sampler.nx = spec.nx;
  r.sampler.ny = spec.ny;

  const ClassGrid grid = classify_grid(f, spec, o.params, GridOptions{o.threads});
  const MaskStats stats = mask_stats(grid);
  std::uint64_t sum = 0;
  for (auto c : stats.counts) sum += c;
  r.samples_drawn = stats.total;
  if (sum != stats.total) {
    ++r.violations;
    r.violation_examples.push_back({{}, {}, {}, "verdict counts do not sum to the pixel count"});
  }

  const Program prog(f);
  std::mt19937_64 rng(o.sampler.seed);
  const std::uint64_t n = spec.pixels();
  for (std::uint32_t t = 0; t < recheck; ++t) {
    const std::uint64_t idx = rng() % n;
    const auto j = static_cast<std::uint32_t>(idx % spec.nx);
    const auto k = static_cast<std::uint32_t>(idx / spec.nx);
    const Complex z = spec.point(j, k);
    const Classification fresh = classify_point(prog, z, o.params);
    const Classification& stored = grid.verdicts[idx];
    ++r.samples_total;
    ++r.samples_confident;
    r.samples_heuristic += heuristic(stored);
    if (fresh == stored) continue;
    ++r.violations;
    if (r.violation_examples.size() < kMaxViolationExamples) {
      r.violation_examples.push_back({z, {stored.verdict}, {fresh.verdict}, "pixel does not reproduce"});
    }
  }
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

CommuteReport verify_commute(const Expr& f, const Expr& g, std::uint32_t samples, double tol,
                             std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (samples == 0) throw InvalidArgument("commute needs at least one sample");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  CommuteReport r;
  r.f = print(f);
  r.g = print(g);
  r.samples = samples;
  r.tol = tol;
  r.seed = seed;
  const Program pf(f), pg(g);
  for (const Complex z : unit_disc_points(samples, seed)) {
    const EvalResult gz = pg(z), fz = pf(z);
    if (!gz.finite() || !fz.finite()) continue;
    const EvalResult fg = pf(gz.value, gz.underflow), gf = pg(fz.value, fz.underflow);
    if (!fg.finite() || !gf.finite()) continue;
    ++r.usable;
    const double d = relative_difference(fg.value, gf.value);
    if (!r.witness || d > r.max_rel_err) {
      r.max_rel_err = d;
      r.witness = z;
    }
  }
  r.inconclusive = r.usable < kMinUsableSamples;
  r.commutes = !r.inconclusive && r.max_rel_err < tol;
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

EqualityReport verify_equal(const Expr& lhs, const Expr& rhs, std::uint32_t usable, double tol,
                            std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (usable == 0) throw InvalidArgument("need at least one sample");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  EqualityReport r;
  r.lhs = print(lhs);
  r.rhs = print(rhs);
  r.target = usable;
  r.tol = tol;
  r.seed = seed;
  const Program pa(lhs), pb(rhs);
  const std::uint64_t max_draws = std::uint64_t{usable} * 100;
  const std::vector<Complex> pts = unit_disc_points(static_cast<std::uint32_t>(max_draws), seed);
  for (const Complex z : pts) {
    if (r.usable == usable) break;
    ++r.drawn;
    const EvalResult a = pa(z), b = pb(z);
    if (!a.finite() || !b.finite()) continue;
    ++r.usable;
    const double d = relative_difference(a.value, b.value);
    if (!r.witness || d > r.max_rel_err) {
      r.max_rel_err = d;
      r.witness = z;
    }
  }
  r.inconclusive = r.usable < std::min(usable, kMinUsableSamples);
  r.equal = !r.inconclusive && r.usable == usable && r.max_rel_err < tol;
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

TranslateReport verify_translate(const Expr& f, Complex C, std::uint32_t n_max,
                                 std::uint32_t samples, double tol, const VerifyOptions& o) {
  const auto t0 = Clock::now();
  if (n_max == 0) throw InvalidArgument("n_max must be at least 1");
  if (samples == 0) throw InvalidArgument("translate needs at least one sample");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!is_finite(C)) throw InvalidArgument("translation constant must be finite");
  o.params.validate();
  o.sampler.validate();

  const Expr g = translate(f, C);
  TranslateReport r;
  r.f = print(f);
  r.g = print(g);
  r.C = C;
  r.n_max = n_max;
  r.samples = samples;
  r.tol = tol;
  r.sampler = o.sampler;
  r.params = o.params;
  const Program pf(f), pg(g);

  // Identity check, one row of errors per point.
  const std::vector<Complex> pts = rectangle_points(o.sampler.region, samples, o.sampler.seed);
  struct Row {
    std::vector<double> err, pseudo;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(pts.size(), resolve_threads(o.threads), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      EvalResult a{EvalKind::Finite, pts[i], false}, c = a;
      for (std::uint32_t n = 1; n <= n_max; ++n) {
        a = pf(a.value, a.underflow);
        c = pg(c.value, c.underflow);
        if (!a.finite() || !c.finite()) break;
        const double scale = std::max({1.0, abs(a.value), abs(c.value)});
        const Complex d = c.value - a.value;
        rows[i].err.push_back(abs(d - C) / scale);
        rows[i].pseudo.push_back(abs(d - Complex(n) * C) / scale);
      }
    }
  });

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Row& row = rows[i];
    if (row.err.empty()) continue;
    ++r.usable;
    for (std::size_t k = 0; k < row.err.size(); ++k) {
      r.max_error = std::max(r.max_error, row.err[k]);
      r.max_pseudo_period_error = std::max(r.max_pseudo_period_error, row.pseudo[k]);
      const auto n = static_cast<std::uint32_t>(k + 1);
      if (row.err[k] >= tol && (!r.first_failure || n < r.first_failure->n)) {
        r.first_failure = TranslateFailure{n, pts[i], row.err[k], row.pseudo[k] < tol, row.pseudo[k]};
      }
    }
  }
  r.inconclusive = r.usable < kMinUsableSamples;
  r.identity_holds = !r.inconclusive && !r.first_failure;
  r.pseudo_period_holds = !r.inconclusive && r.max_pseudo_period_error < tol;

  // Verdict agreement between f and its translate.
  const std::vector<Complex> spts = o.sampler.points();
  std::vector<std::pair<Classification, Classification>> cls(spts.size());
  parallel_for(spts.size(), resolve_threads(o.threads), [&](std::size_t b, std::size_t e) {
    OrbitTrace trace;
    for (std::size_t i = b; i < e; ++i) {
      iterate_orbit(pf, spts[i], o.params, trace);
      cls[i].first = classify(trace, o.params);
      iterate_orbit(pg, spts[i], o.params, trace);
      cls[i].second = classify(trace, o.params);
    }
  });
  r.agreement_samples = spts.size();
  for (const auto& [a, c] : cls) {
    ++r.f_counts[static_cast<std::size_t>(a.verdict)];
    ++r.g_counts[static_cast<std::size_t>(c.verdict)];
    r.agreement_matches += a.verdict == c.verdict;
  }
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

}  // namespace bungee
