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

#include "json_util.hpp"

namespace bungee {

using nlohmann::json;

json complex_json(Complex z) { return json{{"re", z.re}, {"im", z.im}}; }

json params_json(const OrbitParams& p) {
  return json{{"max_iter", p.max_iter},
              {"escape_radius", p.escape_radius},
              {"bound_radius", p.bound_radius},
              {"min_osc", p.min_oscillations},
              {"tail_window", p.tail_window}};
}

json region_json(const Region& r) {
  return json{{"xmin", r.xmin}, {"xmax", r.xmax}, {"ymin", r.ymin}, {"ymax", r.ymax}};
}

json sampler_json(const Sampler& s) {
  json j{{"kind", s.kind == Sampler::Kind::Uniform ? "uniform" : "grid"},
         {"region", region_json(s.region)},
         {"seed", s.seed}};
  if (s.kind == Sampler::Kind::Uniform) {
    j["count"] = s.count;
  } else {
    j["nx"] = s.nx;
    j["ny"] = s.ny;
  }
  return j;
}

json counts_json(const std::array<std::uint64_t, 5>& counts) {
  json j = json::object();
  for (std::size_t v = 0; v < counts.size(); ++v) j[to_string(static_cast<Verdict>(v))] = counts[v];
  return j;
}

json grid_spec_json(const GridSpec& g) {
  return json{{"center", complex_json(g.center)},
              {"width", g.width},
              {"height", g.height},
              {"nx", g.nx},
              {"ny", g.ny}};
}

json report_json(const RelationReport& r) {
  json examples = json::array();
  for (const auto& e : r.violation_examples) {
    json lhs = json::array(), rhs = json::array();
    for (Verdict v : e.lhs) lhs.push_back(to_string(v));
    for (Verdict v : e.rhs) rhs.push_back(to_string(v));
    json x{{"point", complex_json(e.point)}, {"lhs", lhs}, {"rhs", rhs}};
    if (!e.note.empty()) x["note"] = e.note;
    examples.push_back(std::move(x));
  }
  json j{{"relation", r.relation},
         {"f", r.f},
         {"g", r.g},
         {"expressions", r.expressions},
         {"params", params_json(r.params)},
         {"seed", r.sampler.seed},
         {"sampler", sampler_json(r.sampler)},
         {"strict", r.strict},
         {"samples_drawn", r.samples_drawn},
         {"samples_total", r.samples_total},
         {"samples_confident", r.samples_confident},
         {"samples_heuristic", r.samples_heuristic},
         {"violations", r.violations},
         {"violation_examples", examples},
         {"runtime_ms", r.runtime_ms}};
  if (r.conjectural) j["conjectural"] = true;
  return j;
}

json report_json(const CommuteReport& r) {
  return json{{"relation", "commute"},
              {"f", r.f},
              {"g", r.g},
              {"seed", r.seed},
              {"samples", r.samples},
              {"usable", r.usable},
              {"tol", r.tol},
              {"commutes", r.commutes},
              {"inconclusive", r.inconclusive},
              {"max_rel_err", r.max_rel_err},
              {"witness", r.witness ? complex_json(*r.witness) : json(nullptr)},
              {"violations", (r.commutes || r.inconclusive) ? 0 : 1},
              {"runtime_ms", r.runtime_ms}};
}

json report_json(const TranslateReport& r) {
  json failure = nullptr;
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    failure = json{{"n", f.n},
                   {"point", complex_json(f.point)},
                   {"error", f.error},
                   {"pseudo_period", f.pseudo_period},
                   {"pseudo_period_error", f.pseudo_period_error}};
  }
  std::string diagnosis = "identity holds";
  if (r.inconclusive) {
    diagnosis = "inconclusive";
  } else if (!r.identity_holds) {
    diagnosis = r.first_failure && r.first_failure->pseudo_period
                    ? "pseudo-period: g^n = f^n + nC at the first failure"
                    : "identity fails";
  }
  return json{{"relation", "translate"},
              {"f", r.f},
              {"g", r.g},
              {"C", complex_json(r.C)},
              {"n_max", r.n_max},
              {"seed", r.sampler.seed},
              {"samples", r.samples},
              {"usable", r.usable},
              {"tol", r.tol},
              {"identity_holds", r.identity_holds},
              {"inconclusive", r.inconclusive},
              {"max_error", r.max_error},
              {"pseudo_period_holds", r.pseudo_period_holds},
              {"max_pseudo_period_error", r.max_pseudo_period_error},
              {"first_failure", failure},
              {"diagnosis", diagnosis},
              {"classification_agreement",
               json{{"samples", r.agreement_samples},
                    {"matches", r.agreement_matches},
                    {"f", counts_json(r.f_counts)},
                    {"g", counts_json(r.g_counts)}}},
              {"sampler", sampler_json(r.sampler)},
              {"params", params_json(r.params)},
              {"violations", (r.identity_holds || r.inconclusive) ? 0 : 1},
              {"runtime_ms", r.runtime_ms}};
}

json report_json(const EqualityReport& r) {
  return json{{"relation", "identity"},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"seed", r.seed},
              {"target", r.target},
              {"drawn", r.drawn},
              {"usable", r.usable},
              {"tol", r.tol},
              {"equal", r.equal},
              {"inconclusive", r.inconclusive},
              {"max_rel_err", r.max_rel_err},
              {"witness", r.witness ? complex_json(*r.witness) : json(nullptr)},
              {"violations", (r.equal || r.inconclusive) ? 0 : 1},
              {"runtime_ms", r.runtime_ms}};
}

json stats_json(const MaskStats& s) {
  json fractions = json::object();
  for (std::size_t v = 0; v < s.counts.size(); ++v) {
    fractions[to_string(static_cast<Verdict>(v))] = s.fraction(static_cast<Verdict>(v));
  }
  return json{{"total", s.total}, {"counts", counts_json(s.counts)}, {"fractions", fractions}};
}

std::string to_json(const RelationReport& r, int indent) { return report_json(r).dump(indent); }
std::string to_json(const CommuteReport& r, int indent) { return report_json(r).dump(indent); }
std::string to_json(const TranslateReport& r, int indent) { return report_json(r).dump(indent); }
std::string to_json(const EqualityReport& r, int indent) { return report_json(r).dump(indent); }
std::string to_json(const MaskStats& s, int indent) { return stats_json(s).dump(indent); }
std::string to_json(const OrbitParams& p, int indent) { return params_json(p).dump(indent); }

}  // namespace bungee
