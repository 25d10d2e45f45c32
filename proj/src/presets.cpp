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

#include "bungee/presets.hpp"

#include <chrono>
#include <numbers>

#include "bungee/errors.hpp"
#include "json_util.hpp"

namespace bungee {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Region kSquare2{-2.0, 2.0, -2.0, 2.0};
const Region kFatouRegion{-6.0, 2.0, -4.0, 4.0};
const Region kSquare1{-1.0, 1.0, -1.0, 1.0};

class Runner {
 public:
  Runner(std::string name, const PresetOptions& o) : o_(o) {
    result_.name = std::move(name);
    start_ = std::chrono::steady_clock::now();
  }

  VerifyOptions options(const Region& region) const {
    VerifyOptions v;
    v.params = o_.params;
    v.sampler.region = region;
    v.sampler.count = o_.samples;
    v.sampler.seed = o_.seed;
    v.strict = o_.strict;
    v.threads = o_.threads;
    return v;
  }

  void relation(const std::string& name, const RelationReport& r) {
    add(name, r.violations == 0, "zero violations", report_json(r));
  }

  void containment(const std::string& name, const std::vector<SetTerm>& lhs, Combiner lc,
                   const std::vector<SetTerm>& rhs, Combiner rc, const Region& region) {
    relation(name, verify_containment(lhs, lc, rhs, rc, options(region), name));
  }

  void invariance(const Expr& f, const Expr& g, SetKind kind, const std::string& fname,
                  const std::string& gname, const Region& region) {
    RelationReport r = verify_invariance(f, g, kind, options(region));
    const std::string set = to_string(kind);
    r.relation = gname + "(" + set + "(" + fname + ")) in " + set + "(" + fname + ")";
    relation(r.relation, r);
  }

  void property_a(const Expr& f, const Expr& g, const std::string& fname,
                  const std::string& gname, const Region& region) {
    RelationReport r = verify_property_a(f, g, options(region));
    r.relation = "property A: " + fname + " sends " + gname + "-escaping orbits to infinity";
    relation(r.relation, r);
  }

  void commute(const Expr& f, const Expr& g, bool expected) {
    const CommuteReport r = verify_commute(f, g, o_.commute_samples, o_.tol, o_.seed);
    add(expected ? "f o g = g o f" : "f o g != g o f", !r.inconclusive && r.commutes == expected,
        expected ? "commutes" : "does not commute", report_json(r));
  }

  void identity(const std::string& name, const Expr& a, const Expr& b) {
    const EqualityReport r = verify_equal(a, b, 100, o_.tol, o_.seed);
    add(name, r.equal, "equal at 100 points", report_json(r));
  }

  enum class TranslateExpect { Identity, PseudoPeriod };

  void translate_check(const Expr& f, Complex C, TranslateExpect expect, const Region& region) {
    VerifyOptions v = options(region);
    v.sampler.count = std::min<std::uint32_t>(o_.samples, 2000);
    const TranslateReport r = verify_translate(f, C, 20, 100, o_.tol, v);
    if (expect == TranslateExpect::Identity) {
      add("g^n = f^n + C", r.identity_holds, "identity holds for n <= 20", report_json(r));
    } else {
      const bool ok = !r.inconclusive && !r.identity_holds && r.first_failure &&
                      r.first_failure->n == 2 && r.first_failure->pseudo_period;
      add("g^n = f^n + nC", ok, "identity fails first at n = 2, where g^n = f^n + nC holds",
          report_json(r));
    }
  }

  void fixed_point_at_zero(const Expr& f) {
    const auto reports = find_fixed_points(f, kSquare1);
    json list = json::array();
    bool ok = false;
    for (const auto& p : reports) {
      list.push_back({{"location", complex_json(p.location)},
                      {"multiplier", complex_json(p.multiplier)},
                      {"stability", to_string(p.stability)},
                      {"rational_q", p.rational_q ? json(*p.rational_q) : json(nullptr)},
                      {"residual", p.residual}});
      if (abs(p.location) < 1e-8 && abs(p.multiplier - Complex(1.0)) < 1e-8 &&
          p.stability == Stability::Indifferent) {
        ok = true;
      }
    }
    add("indifferent fixed point at 0", ok, "fixed point within 1e-8 of 0, |lambda - 1| < 1e-8",
        json{{"relation", "fixed-points"}, {"f", print(f)}, {"fixed_points", list}});
  }

  PresetResult finish(bool conjectural = false) {
    result_.conjectural = conjectural;
    result_.passed = true;
    for (const auto& c : result_.checks) result_.passed = result_.passed && c.passed;
    result_.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    return std::move(result_);
  }

 private:
  void add(const std::string& name, bool passed, const std::string& expectation, const json& j) {
    result_.checks.push_back({name, passed, expectation, j.dump()});
  }

  const PresetOptions& o_;
  PresetResult result_;
  std::chrono::steady_clock::time_point start_;
};

SetTerm K(const Expr& f) { return {f, SetKind::Bounded}; }
SetTerm BU(const Expr& f) { return {f, SetKind::Bungee}; }

PresetResult power(const PresetOptions& o) {
  Runner run("sec4-power", o);
  const Expr f = parse("z^2"), g = parse("1/z^2"), fg = compose(f, g);
  run.containment("BU(f o g) in BU(f) u BU(g)", {BU(fg)}, Combiner::Union, {BU(f), BU(g)},
                  Combiner::Union, kSquare2);
  run.containment("K(f) n K(g) in K(f o g)", {K(f), K(g)}, Combiner::Intersection, {K(fg)},
                  Combiner::Union, kSquare2);
  run.containment("BU(f) empty", {BU(f)}, Combiner::Union, {}, Combiner::Union, kSquare2);
  run.commute(f, g, true);
  return run.finish();
}

void exp_pair_checks(Runner& run, const Expr& f, const Expr& g) {
  const Expr fg = compose(f, g);
  run.containment("BU(f o g) in BU(f) u BU(g)", {BU(fg)}, Combiner::Union, {BU(f), BU(g)},
                  Combiner::Union, kSquare2);
  run.containment("BU(f o g) in BU(f) n BU(g)", {BU(fg)}, Combiner::Union, {BU(f), BU(g)},
                  Combiner::Intersection, kSquare2);
  run.containment("K(f) n K(g) in K(f o g)", {K(f), K(g)}, Combiner::Intersection, {K(fg)},
                  Combiner::Union, kSquare2);
  run.commute(f, g, true);
  run.identity("(f o g)^2 = f^4", iterate(fg, 2), iterate(f, 4));
}

PresetResult expfamily(const PresetOptions& o) {
  Runner run("sec4-expfamily", o);
  const Expr f = parse("z*exp(z^2)"), g = scale(f, -1.0);
  exp_pair_checks(run, f, g);
  for (SetKind k : {SetKind::Escaping, SetKind::Bounded}) {
    run.invariance(f, g, k, "f", "g", kSquare2);
    run.invariance(g, f, k, "g", "f", kSquare2);
  }
  return run.finish();
}

PresetResult expfamily_neg(const PresetOptions& o) {
  Runner run("sec4-expfamily-neg", o);
  const Expr f = parse("z*exp(-z^2)"), g = scale(f, -1.0);
  exp_pair_checks(run, f, g);
  run.fixed_point_at_zero(f);
  return run.finish();
}

PresetResult family_half(const PresetOptions& o) {
  Runner run("sec4-family-half", o);
  const Expr f = parse("z*exp(0.25*z)"), g = scale(f, 0.5);
  run.commute(f, g, false);
  return run.finish();
}

// Commuting translate pair f, f + C with Property A.
void translate_pair(Runner& run, const Expr& f, Complex C, const Region& region,
                    bool invariance) {
  const Expr g = translate(f, C);
  run.commute(f, g, true);
  run.property_a(f, g, "f", "g", region);
  run.property_a(g, f, "g", "f", region);
  if (invariance) {
    for (SetKind k : {SetKind::Escaping, SetKind::Bounded}) {
      run.invariance(f, g, k, "f", "g", region);
      run.invariance(g, f, k, "g", "f", region);
    }
  }
  run.translate_check(f, C, Runner::TranslateExpect::PseudoPeriod, kSquare1);
}

PresetResult fatou(const PresetOptions& o) {
  Runner run("sec2-fatou", o);
  translate_pair(run, parse("1+z+exp(-z)"), Complex(0.0, kTwoPi), kFatouRegion, true);
  return run.finish();
}

PresetResult fatou_plus(const PresetOptions& o) {
  Runner run("sec2-fatou-plus", o);
  translate_pair(run, parse("1+z+exp(z)"), Complex(0.0, kTwoPi), kSquare2, false);
  return run.finish();
}

PresetResult sine(const PresetOptions& o) {
  Runner run("sec2-sine", o);
  translate_pair(run, parse("z+sin(z)"), Complex(kTwoPi), kSquare2, true);
  return run.finish();
}

PresetResult sine_period(const PresetOptions& o) {
  Runner run("sin-period", o);
  run.translate_check(parse("sin(z)"), Complex(kTwoPi), Runner::TranslateExpect::Identity,
                      kSquare1);
  return run.finish();
}

PresetResult question(const PresetOptions& o) {
  Runner run("sec2-question", o);
  const Expr f = parse("1+z+exp(-z)"), g = translate(f, Complex(0.0, kTwoPi));
  const Expr fg = compose(f, g);
  VerifyOptions v = run.options(kFatouRegion);
  RelationReport r = verify_containment({K(f), K(g)}, Combiner::SymmetricDifference, {K(fg)},
                                        Combiner::Union, v,
                                        "K(f) u K(g) minus K(f) n K(g) in K(f o g)");
  r.conjectural = true;
  run.relation(r.relation, r);
  return run.finish(true);
}

using PresetFn = PresetResult (*)(const PresetOptions&);

struct Entry {
  PresetMaps maps;
  PresetFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    auto text = [](const char* s) { return print(parse(s)); };
    return std::vector<Entry>{
        {{"sec4-power", text("z^2"), text("1/z^2"),
          "z^2 and 1/z^2: BU containment, K intersection, empty BU(z^2), commutation"},
         power},
        {{"sec4-expfamily", text("z*exp(z^2)"), print(scale(parse("z*exp(z^2)"), -1.0)),
          "z e^{z^2} and its negative: containments, invariance of I and K, commutation, "
          "(f o g)^2 = f^4"},
         expfamily},
        {{"sec4-expfamily-neg", text("z*exp(-z^2)"), print(scale(parse("z*exp(-z^2)"), -1.0)),
          "z e^{-z^2} and its negative: containments, commutation, indifferent fixed point at 0"},
         expfamily_neg},
        {{"sec4-family-half", text("z*exp(0.25*z)"), print(scale(parse("z*exp(0.25*z)"), 0.5)),
          "a = 0.5, k = 1: a is not a root of unity, the pair does not commute"},
         family_half},
        {{"sec2-fatou", text("1+z+exp(-z)"), text("1+z+exp(-z)+2*pi*i"),
          "Fatou map and its 2 pi i translate: commutation, Property A, invariance, "
          "pseudo-period"},
         fatou},
        {{"sec2-fatou-plus", text("1+z+exp(z)"), text("1+z+exp(z)+2*pi*i"),
          "1+z+e^z and its 2 pi i translate: commutation, Property A, pseudo-period"},
         fatou_plus},
        {{"sec2-sine", text("z+sin(z)"), text("z+sin(z)+2*pi"),
          "z+sin z and its 2 pi translate: commutation, Property A, invariance, pseudo-period"},
         sine},
        {{"sin-period", text("sin(z)"), text("sin(z)+2*pi"),
          "sin z with its strict period 2 pi: g^n = f^n + C"},
         sine_period},
        {{"sec2-question", text("1+z+exp(-z)"), text("1+z+exp(-z)+2*pi*i"),
          "conjectural: K(f) u K(g) minus K(f) n K(g) inside K(f o g)", true},
         question},
    };
  }();
  return table;
}

}  // namespace

const std::vector<PresetMaps>& preset_catalog() {
  static const std::vector<PresetMaps> maps = [] {
    std::vector<PresetMaps> out;
    for (const auto& e : entries()) out.push_back(e.maps);
    return out;
  }();
  return maps;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& e : entries()) names.push_back(e.maps.name);
  names.push_back("all-paper");
  return names;
}

std::vector<PresetResult> run_preset(const std::string& name, const PresetOptions& o) {
  o.params.validate();
  std::vector<PresetResult> out;
  for (const auto& e : entries()) {
    if (name == e.maps.name || (name == "all-paper" && !e.maps.conjectural)) {
      out.push_back(e.fn(o));
    }
  }
  if (out.empty()) throw InvalidArgument("unknown preset \"" + name + "\"");
  return out;
}

std::string to_json(const std::string& name, const std::vector<PresetResult>& results,
                    const PresetOptions& o, int indent) {
  json presets = json::array();
  bool passed = true;
  for (const auto& r : results) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"expectation", c.expectation},
                        {"report", json::parse(c.report_json)}});
    }
    json p{{"preset", r.name}, {"passed", r.passed}, {"checks", checks},
           {"runtime_ms", r.runtime_ms}};
    if (r.conjectural) p["conjectural"] = true;
    presets.push_back(std::move(p));
    passed = passed && r.passed;
  }
  return json{{"preset", name},
              {"passed", passed},
              {"seed", o.seed},
              {"samples", o.samples},
              {"commute_samples", o.commute_samples},
              {"tol", o.tol},
              {"strict", o.strict},
              {"params", params_json(o.params)},
              {"presets", presets}}
      .dump(indent);
}

}  // namespace bungee
