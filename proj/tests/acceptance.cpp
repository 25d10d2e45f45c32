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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "bungee/expr.hpp"
#include "bungee/orbit.hpp"
#include "bungee/presets.hpp"
#include "bungee/program.hpp"
#include "bungee/render.hpp"
#include "bungee/sets.hpp"
#include "oracles.hpp"

using namespace bungee;

namespace {

// Pinned thresholds.
constexpr double kOffBandFraction = 0.99;
constexpr double kBandHalfWidth = 0.05;
constexpr double kGridSeconds = 10.0;
constexpr double kContainmentSeconds = 60.0;
constexpr std::uint32_t kContainmentSamples = 10000;
constexpr std::uint64_t kMinConfidentInvariance = 1000;
constexpr double kCommuteTol = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kTranslateTol = 1e-9;
constexpr double kFixedPointTol = 1e-8;
constexpr double kDerivativeTol = 1e-6;
constexpr std::uint64_t kGoldenReciprocalSquare = 0x6f3479e43c49f57bULL;
constexpr std::uint64_t kGoldenSquare = 0x97661df7031ef9dfULL;

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int n, const char* title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", n, title, detail.c_str());
  std::fflush(stdout);
}

const GridSpec kGrid512 = parse_grid_spec("0,0,4,4,512,512");

VerifyOptions opts(Region region, std::uint32_t count = kContainmentSamples) {
  VerifyOptions o;
  o.sampler.region = region;
  o.sampler.count = count;
  o.sampler.seed = kDefaultSeed;
  return o;
}

}  // namespace

int main() {
  criterion(1, "unit circle", [](std::string& d) {
    bool ok = true;
    for (const char* text : {"1/z^2", "1/z^4"}) {
      const auto t0 = Clock::now();
      const ClassGrid g = classify_grid(parse(text), kGrid512, OrbitParams{});
      const double secs = seconds_since(t0);
      std::uint64_t off = 0, bu = 0;
      for (std::uint32_t k = 0; k < g.spec.ny; ++k)
        for (std::uint32_t j = 0; j < g.spec.nx; ++j) {
          if (std::fabs(abs(g.spec.point(j, k)) - 1.0) <= kBandHalfWidth) continue;
          ++off;
          bu += g.at(j, k).verdict == Verdict::Bungee;
        }
      const double frac = static_cast<double>(bu) / static_cast<double>(off);
      ok = ok && frac >= kOffBandFraction && secs < kGridSeconds;
      d += std::string(text) + fmt(" off-band Bungee %.4f", frac) + fmt(" in %.2fs; ", secs);
    }
    const auto t0 = Clock::now();
    const MaskStats sq = mask_stats(classify_grid(parse("z^2"), kGrid512, OrbitParams{}));
    const double secs = seconds_since(t0);
    ok = ok && sq.count(Verdict::Bungee) == 0 && secs < kGridSeconds;
    d += "z^2 Bungee " + std::to_string(sq.count(Verdict::Bungee)) + fmt(" in %.2fs", secs);
    return ok;
  });

  criterion(2, "containment", [](std::string& d) {
    const auto t0 = Clock::now();
    bool ok = true;
    const std::pair<const char*, const char*> pairs[] = {{"z^2", "1/z^2"},
                                                         {"z*exp(z^2)", "-1*(z*exp(z^2))"}};
    for (const auto& [ft, gt] : pairs) {
      const Expr f = parse(ft), g = parse(gt), fg = compose(f, g);
      const VerifyOptions o = opts({-2, 2, -2, 2});
      const RelationReport bu =
          verify_containment({{fg, SetKind::Bungee}}, Combiner::Union,
                             {{f, SetKind::Bungee}, {g, SetKind::Bungee}}, Combiner::Union, o);
      const RelationReport kk =
          verify_containment({{f, SetKind::Bounded}, {g, SetKind::Bounded}},
                             Combiner::Intersection, {{fg, SetKind::Bounded}}, Combiner::Union, o);
      ok = ok && bu.samples_drawn >= kContainmentSamples && bu.violations == 0 &&
           kk.violations == 0;
      d += std::string(ft) + ": BU " + std::to_string(bu.violations) + "/" +
           std::to_string(bu.samples_confident) + ", K " + std::to_string(kk.violations) + "/" +
           std::to_string(kk.samples_confident) + "; ";
    }
    const double secs = seconds_since(t0);
    d += fmt("%.1fs", secs);
    return ok && secs < kContainmentSeconds;
  });

  criterion(3, "invariance", [](std::string& d) {
    bool ok = true;
    struct Pair {
      const char *f, *g;
      Region region;
    };
    const Pair pairs[] = {{"z*exp(z^2)", "-1*(z*exp(z^2))", {-2, 2, -2, 2}},
                          {"1+z+exp(-z)", "1+z+exp(-z)+2*pi*i", {-6, 2, -4, 4}}};
    for (const Pair& p : pairs) {
      const Expr f = parse(p.f), g = parse(p.g);
      for (SetKind k : {SetKind::Escaping, SetKind::Bounded}) {
        for (int dir = 0; dir < 2; ++dir) {
          const RelationReport r = dir == 0 ? verify_invariance(f, g, k, opts(p.region))
                                            : verify_invariance(g, f, k, opts(p.region));
          ok = ok && r.violations == 0 && r.samples_confident >= kMinConfidentInvariance;
          d += std::string(to_string(k)) + "(" + (dir == 0 ? p.f : p.g) + ") " +
               std::to_string(r.violations) + "/" + std::to_string(r.samples_confident) + "; ";
        }
      }
    }
    return ok;
  });

  criterion(4, "commutation", [](std::string& d) {
    bool ok = true;
    struct Case {
      const char *f, *g;
      bool want;
    };
    const Case cases[] = {{"z*exp(z^2)", "-1*(z*exp(z^2))", true},
                          {"z*exp(-z^2)", "-1*(z*exp(-z^2))", true},
                          {"z^2", "1/z^2", true},
                          {"z*exp(0.25*z)", "0.5*(z*exp(0.25*z))", false}};
    for (const Case& c : cases) {
      const CommuteReport r = verify_commute(parse(c.f), parse(c.g), 1000, kCommuteTol);
      ok = ok && !r.inconclusive && r.commutes == c.want;
      d += std::string(c.f) + (r.commutes ? " commutes" : " does not commute") +
           fmt(" (%.1e); ", r.max_rel_err);
    }
    // (f o g)^2 = f^4 at 100 points for both instances.
    for (const char* ft : {"z*exp(z^2)", "z*exp(-z^2)"}) {
      const Expr f = parse(ft), g = scale(f, -1.0);
      const Expr lhs = iterate(compose(f, g), 2), rhs = iterate(f, 4);
      std::mt19937_64 rng(kDefaultSeed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      int used = 0;
      double worst = 0;
      for (int draws = 0; used < 100 && draws < 100000; ++draws) {
        const Complex z{u(rng), u(rng)};
        if (z.re * z.re + z.im * z.im >= 1.0) continue;
        const EvalResult a = eval(lhs, z), b = eval(rhs, z);
        if (!a.finite() || !b.finite()) continue;
        worst = std::max(worst, relative_difference(a.value, b.value));
        ++used;
      }
      ok = ok && used == 100 && worst <= kIdentityTol;
      d += std::string("(f o g)^2 = f^4 for ") + ft + fmt(" max %.1e", worst) + "; ";
    }
    return ok;
  });

  criterion(5, "translate", [](std::string& d) {
    VerifyOptions o = opts({-1, 1, -1, 1}, 1000);
    const TranslateReport s = verify_translate(parse("sin(z)"), {2 * kPi, 0.0}, 20, 100,
                                               kTranslateTol, o);
    // Same error measure recomputed with std::complex at the same points.
    double oracle_max = 0;
    for (const Complex p : rectangle_points(o.sampler.region, 100, o.sampler.seed)) {
      std::complex<double> f(p.re, p.im), g = f;
      for (int n = 1; n <= 20; ++n) {
        f = std::sin(f);
        g = std::sin(g) + 2 * kPi;
        if (!std::isfinite(std::abs(f)) || !std::isfinite(std::abs(g))) break;
        const double scale = std::max({1.0, std::abs(f), std::abs(g)});
        oracle_max = std::max(oracle_max, std::abs(g - f - 2 * kPi) / scale);
      }
    }
    const TranslateReport fat = verify_translate(parse("1+z+exp(-z)"), {0.0, 2 * kPi}, 20,
                                                 100, kTranslateTol, o);
    const bool flagged = !fat.identity_holds && fat.first_failure &&
                         fat.first_failure->n == 2 && fat.first_failure->pseudo_period;
    d += fmt("sin max %.1e", s.max_error) + fmt(" (oracle %.1e); ", oracle_max);
    d += flagged ? fmt("1+z+e^-z flagged at n=2, witness re %.3f", fat.first_failure->point.re)
                 : std::string("1+z+e^-z not flagged at n=2");
    return s.identity_holds && s.usable == 100 && s.max_error < kTranslateTol &&
           oracle_max < kTranslateTol && flagged;
  });

  criterion(6, "fixed point", [](std::string& d) {
    const auto pts = find_fixed_points(parse("z*exp(-z^2)"), Region{-1, 1, -1, 1});
    for (const auto& p : pts) {
      if (abs(p.location) >= kFixedPointTol) continue;
      const double dl = abs(p.multiplier - Complex(1.0));
      d = fmt("|z*| %.1e", abs(p.location)) + fmt(", |lambda-1| %.1e, ", dl) +
          to_string(p.stability);
      return dl < kFixedPointTol && p.stability == Stability::Indifferent;
    }
    d = "no fixed point near 0";
    return false;
  });

  criterion(7, "derivative", [](std::string& d) {
    double worst = 0;
    int functions = 0;
    bool ok = true;
    for (const auto& preset : preset_catalog()) {
      for (const std::string& text : {preset.f, preset.g}) {
        const Expr f = parse(text), df = derivative(f);
        std::mt19937_64 rng(kDefaultSeed);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        int used = 0;
        for (int draws = 0; used < 100 && draws < 100000; ++draws) {
          const Complex z{u(rng), u(rng)};
          // Smooth: away from the pole of 1/z^2 and from critical points.
          if (abs(z) < 0.2) continue;
          const EvalResult v = eval(f, z), dv = eval(df, z);
          Complex fd;
          if (!v.finite() || !dv.finite() || !oracle::central_difference(f, z, fd)) continue;
          if (abs(dv.value) < 1e-3 || abs(v.value) > 1e6) continue;
          worst = std::max(worst, relative_difference(dv.value, fd));
          ++used;
        }
        ok = ok && used == 100;
        ++functions;
      }
    }
    d = std::to_string(functions) + " functions x 100 points" + fmt(", max rel err %.1e", worst);
    return ok && worst < kDerivativeTol;
  });

  criterion(8, "oracle", [](std::string& d) {
    const OrbitParams p;
    const Expr f = parse("z^2");
    const Program prog(f);
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
      const Complex z{u(rng), u(rng)};
      agree += classify_point(prog, z, p).verdict == oracle::classify(f, z, p);
    }
    d = std::to_string(agree) + "/1000 agree";
    return agree == 1000;
  });

  criterion(9, "determinism", [](std::string& d) {
    const unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
    bool same = true;
    for (const char* text : {"1/z^2", "1+z+exp(-z)"}) {
      GridOptions one, four, all;
      one.threads = 1;
      four.threads = 4;
      all.threads = max_threads;
      const Expr f = parse(text);
      const ClassGrid a = classify_grid(f, kGrid512, {}, one);
      const ClassGrid b = classify_grid(f, kGrid512, {}, four);
      const ClassGrid c = classify_grid(f, kGrid512, {}, all);
      same = same && a.verdicts == b.verdicts && a.verdicts == c.verdicts &&
             a.escape_steps == b.escape_steps && a.escape_steps == c.escape_steps;
    }
    const std::uint64_t h1 = fnv1a64(render_ppm(classify_grid(parse("1/z^2"), kGrid512, {})));
    const std::uint64_t h2 = fnv1a64(render_ppm(classify_grid(parse("1/z^2"), kGrid512, {})));
    const std::uint64_t h3 = fnv1a64(
        render_ppm(classify_grid(parse("z^2"), parse_grid_spec("0,0,4,4,128,128"), {})));
    char buf[96];
    std::snprintf(buf, sizeof buf, "hash %016llx", static_cast<unsigned long long>(h1));
    d = std::string(same ? "grids identical at 1/4/" : "grids differ at 1/4/") +
        std::to_string(max_threads) + " workers; " + buf;
    return same && h1 == h2 && h1 == kGoldenReciprocalSquare && h3 == kGoldenSquare;
  });

  criterion(10, "parser", [](std::string& d) {
    oracle::RandomExpr gen(kDefaultSeed);
    int exact = 0;
    for (int i = 0; i < 1000; ++i) {
      const Expr e = gen(1 + i % 8);
      exact += parse(print(e)) == e;
    }
    int presets = 0, lossless = 0;
    for (const auto& p : preset_catalog()) {
      for (const std::string& text : {p.f, p.g}) {
        ++presets;
        const Expr e = parse(text);
        lossless += print(e) == text && parse(print(e)) == e;
      }
    }
    d = std::to_string(exact) + "/1000 round-trips, " + std::to_string(lossless) + "/" +
        std::to_string(presets) + " preset expressions";
    return exact == 1000 && lossless == presets;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
