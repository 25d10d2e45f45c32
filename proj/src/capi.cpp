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

#include "bungee/bungee_lab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bungee/errors.hpp"
#include "bungee/presets.hpp"
#include "bungee/render.hpp"
#include "bungee/sets.hpp"
#include "json_util.hpp"

struct bl_expr {
  bungee::Expr e;
};

struct bl_grid {
  bungee::ClassGrid g;
};

namespace {

using namespace bungee;
using nlohmann::json;

thread_local std::string g_error;
thread_local long long g_error_offset = -1;

bl_status fail(bl_status s, const std::string& msg, long long offset = -1) {
  g_error = msg;
  g_error_offset = offset;
  return s;
}

// Runs `body`, mapping exceptions onto status codes.
template <class F>
bl_status guarded(F&& body) {
  try {
    body();
    return BL_OK;
  } catch (const ParseError& e) {
    return fail(BL_ERR_PARSE, e.what(), static_cast<long long>(e.offset()));
  } catch (const LimitError& e) {
    return fail(BL_ERR_LIMIT, e.what());
  } catch (const InvalidArgument& e) {
    return fail(BL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BL_ERR_LIMIT, "out of memory");
  } catch (const Error& e) {
    return fail(BL_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(BL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BL_ERR_INTERNAL, "unknown error");
  }
}

bl_status null_arg(const char* name) {
  return fail(BL_ERR_NULL, std::string("argument '") + name + "' is NULL");
}

#define BL_REQUIRE(p)                  \
  do {                                 \
    if ((p) == nullptr) return null_arg(#p); \
  } while (0)

char* dup_bytes(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

Complex to_cpp(bl_complex z) { return {z.re, z.im}; }
bl_complex to_c(Complex z) { return {z.re, z.im}; }

OrbitParams to_cpp(const bl_orbit_params& p) {
  OrbitParams o;
  o.max_iter = p.max_iter;
  o.escape_radius = p.escape_radius;
  o.bound_radius = p.bound_radius;
  o.min_oscillations = p.min_oscillations;
  o.tail_window = p.tail_window;
  return o;
}

OrbitParams params_or_default(const bl_orbit_params* p) {
  return p == nullptr ? OrbitParams{} : to_cpp(*p);
}

GridSpec to_cpp(const bl_grid_spec& s) {
  return {to_cpp(s.center), s.width, s.height, s.nx, s.ny};
}

bl_classification to_c(const Classification& c) {
  return {static_cast<bl_verdict>(c.verdict), static_cast<bl_confidence>(c.confidence)};
}

SetKind to_cpp(bl_set_kind k) {
  switch (k) {
    case BL_SET_I: return SetKind::Escaping;
    case BL_SET_K: return SetKind::Bounded;
    case BL_SET_BU: return SetKind::Bungee;
  }
  throw InvalidArgument("unknown set kind");
}

Combiner to_cpp(bl_combiner c) {
  switch (c) {
    case BL_UNION: return Combiner::Union;
    case BL_INTERSECTION: return Combiner::Intersection;
    case BL_SYMMETRIC_DIFFERENCE: return Combiner::SymmetricDifference;
  }
  throw InvalidArgument("unknown combiner");
}

bl_expr* wrap(Expr e) { return new bl_expr{std::move(e)}; }

const Expr& need(const bl_expr* e, const char* what) {
  if (e == nullptr) throw InvalidArgument(std::string("request needs '") + what + "'");
  return e->e;
}

std::vector<SetTerm> terms(const bl_set_term* t, std::size_t n, const char* what) {
  if (n > 0 && t == nullptr) throw InvalidArgument(std::string("'") + what + "' is NULL");
  std::vector<SetTerm> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({need(t[i].f, what), to_cpp(t[i].set)});
  return out;
}

VerifyOptions options(const bl_verify_request& r) {
  VerifyOptions o;
  o.params = to_cpp(r.params);
  o.sampler.region = {r.xmin, r.xmax, r.ymin, r.ymax};
  o.sampler.count = r.samples;
  o.sampler.seed = r.seed;
  o.strict = r.strict != 0;
  o.threads = r.threads;
  return o;
}

}  // namespace

extern "C" {

const char* bl_version(void) { return "0.1.0"; }

const char* bl_last_error(void) { return g_error.c_str(); }

long long bl_last_error_offset(void) { return g_error_offset; }

void bl_string_free(char* s) { std::free(s); }

void bl_orbit_params_default(bl_orbit_params* out) {
  if (out == nullptr) return;
  const OrbitParams p;
  *out = {p.max_iter, p.escape_radius, p.bound_radius, p.min_oscillations, p.tail_window};
}

bl_status bl_orbit_params_validate(const bl_orbit_params* p) {
  BL_REQUIRE(p);
  return guarded([&] { to_cpp(*p).validate(); });
}

bl_status bl_expr_parse(const char* text, bl_expr** out) {
  BL_REQUIRE(text);
  BL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(parse(text)); });
}

void bl_expr_free(bl_expr* e) { delete e; }

bl_status bl_expr_print(const bl_expr* e, char** out) {
  BL_REQUIRE(e);
  BL_REQUIRE(out);
  return guarded([&] { *out = dup_bytes(print(e->e)); });
}

bl_status bl_expr_eval(const bl_expr* e, bl_complex z, bl_eval_result* out) {
  BL_REQUIRE(e);
  BL_REQUIRE(out);
  return guarded([&] {
    const EvalResult r = eval(e->e, to_cpp(z));
    *out = {static_cast<bl_eval_kind>(r.kind), to_c(r.value), r.underflow ? 1 : 0};
  });
}

bl_status bl_expr_derivative(const bl_expr* e, bl_expr** out) {
  BL_REQUIRE(e);
  BL_REQUIRE(out);
  return guarded([&] { *out = wrap(derivative(e->e)); });
}

bl_status bl_expr_compose(const bl_expr* f, const bl_expr* g, bl_expr** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(g);
  BL_REQUIRE(out);
  return guarded([&] { *out = wrap(compose(f->e, g->e)); });
}

bl_status bl_expr_iterate(const bl_expr* f, int n, bl_expr** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] { *out = wrap(iterate(f->e, n)); });
}

bl_status bl_expr_translate(const bl_expr* f, bl_complex c, bl_expr** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] { *out = wrap(translate(f->e, to_cpp(c))); });
}

bl_status bl_expr_scale(const bl_expr* f, bl_complex a, bl_expr** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] { *out = wrap(scale(f->e, to_cpp(a))); });
}

bl_status bl_expr_is_entire(const bl_expr* e, int* out) {
  BL_REQUIRE(e);
  BL_REQUIRE(out);
  *out = e->e.is_entire() ? 1 : 0;
  return BL_OK;
}

bl_status bl_expr_node_count(const bl_expr* e, uint64_t* out) {
  BL_REQUIRE(e);
  BL_REQUIRE(out);
  *out = e->e.node_count();
  return BL_OK;
}

bl_status bl_expr_equal(const bl_expr* a, const bl_expr* b, int* out) {
  BL_REQUIRE(a);
  BL_REQUIRE(b);
  BL_REQUIRE(out);
  *out = a->e == b->e ? 1 : 0;
  return BL_OK;
}

bl_status bl_constant_value(const char* text, bl_complex* out) {
  BL_REQUIRE(text);
  BL_REQUIRE(out);
  return guarded([&] {
    const Expr e = parse(text);
    if (!e.is_constant()) throw InvalidArgument(std::string("\"") + text + "\" depends on z");
    const EvalResult r = eval(e, {});
    if (!r.finite()) throw InvalidArgument(std::string("\"") + text + "\" is not finite");
    *out = to_c(r.value);
  });
}

bl_status bl_classify_point(const bl_expr* f, bl_complex z0, const bl_orbit_params* p,
                            bl_classification* out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] {
    const OrbitParams op = params_or_default(p);
    op.validate();
    *out = to_c(classify(iterate_orbit(f->e, to_cpp(z0), op), op));
  });
}

bl_status bl_classify_point_json(const bl_expr* f, bl_complex z0, const bl_orbit_params* p,
                                 char** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] {
    const OrbitParams op = params_or_default(p);
    op.validate();
    const OrbitTrace t = iterate_orbit(f->e, to_cpp(z0), op);
    const Classification c = classify(t, op);
    double lo = INFINITY, hi = -INFINITY;
    for (double m : t.log10_magnitudes) {
      lo = std::fmin(lo, m);
      hi = std::fmax(hi, m);
    }
    auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    const json j{{"f", print(f->e)},
                 {"z0", complex_json(to_cpp(z0))},
                 {"params", params_json(op)},
                 {"verdict", to_string(c.verdict)},
                 {"confidence", to_string(c.confidence)},
                 {"termination", to_string(t.termination)},
                 {"termination_step", t.termination_step},
                 {"oscillation_count", t.oscillation_count},
                 {"escape_step", escape_step(t, op)},
                 {"recorded", t.log10_magnitudes.size()},
                 {"log10_first", finite_or_null(t.log10_magnitudes.front())},
                 {"log10_last", finite_or_null(t.log10_magnitudes.back())},
                 {"log10_min", finite_or_null(lo)},
                 {"log10_max", finite_or_null(hi)}};
    *out = dup_bytes(j.dump(2));
  });
}

bl_status bl_fixed_points_json(const bl_expr* f, double xmin, double xmax, double ymin,
                               double ymax, int starts, char** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(out);
  return guarded([&] {
    FixedPointOptions o;
    o.starts = starts;
    const Region region{xmin, xmax, ymin, ymax};
    const auto reports = find_fixed_points(f->e, region, o);
    json list = json::array();
    for (const auto& r : reports) {
      json q = r.rational_q ? json(*r.rational_q) : json(nullptr);
      std::string cls = to_string(r.stability);
      if (r.rational_q) cls = "RationallyIndifferent(" + std::to_string(*r.rational_q) + ")";
      list.push_back({{"location", complex_json(r.location)},
                      {"multiplier", complex_json(r.multiplier)},
                      {"abs_multiplier", abs(r.multiplier)},
                      {"stability", to_string(r.stability)},
                      {"class", cls},
                      {"rational_q", q},
                      {"residual", r.residual}});
    }
    const json j{{"f", print(f->e)},
                 {"region", region_json(region)},
                 {"starts", starts},
                 {"newton_tol", o.newton_tol},
                 {"delta", o.delta},
                 {"fixed_points", list}};
    *out = dup_bytes(j.dump(2));
  });
}

bl_status bl_grid_spec_parse(const char* text, bl_grid_spec* out) {
  BL_REQUIRE(text);
  BL_REQUIRE(out);
  return guarded([&] {
    const GridSpec g = parse_grid_spec(text);
    *out = {to_c(g.center), g.width, g.height, g.nx, g.ny};
  });
}

bl_status bl_grid_classify(const bl_expr* f, const bl_grid_spec* spec, const bl_orbit_params* p,
                           unsigned threads, bl_grid** out) {
  BL_REQUIRE(f);
  BL_REQUIRE(spec);
  BL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    GridOptions o;
    o.threads = threads;
    *out = new bl_grid{classify_grid(f->e, to_cpp(*spec), params_or_default(p), o)};
  });
}

void bl_grid_free(bl_grid* g) { delete g; }

bl_status bl_grid_verdict(const bl_grid* g, uint32_t j, uint32_t k, bl_classification* out) {
  BL_REQUIRE(g);
  BL_REQUIRE(out);
  if (j >= g->g.spec.nx || k >= g->g.spec.ny) {
    return fail(BL_ERR_INVALID_ARGUMENT, "pixel index out of range");
  }
  *out = to_c(g->g.at(j, k));
  return BL_OK;
}

bl_status bl_grid_stats_json(const bl_grid* g, char** out) {
  BL_REQUIRE(g);
  BL_REQUIRE(out);
  return guarded([&] {
    json j = stats_json(mask_stats(g->g));
    j["f"] = g->g.function_text;
    j["grid"] = grid_spec_json(g->g.spec);
    j["params"] = params_json(g->g.params);
    *out = dup_bytes(j.dump(2));
  });
}

bl_status bl_grid_render_ppm(const bl_grid* g, char** bytes, size_t* len) {
  BL_REQUIRE(g);
  BL_REQUIRE(bytes);
  BL_REQUIRE(len);
  return guarded([&] {
    const std::string ppm = render_ppm(g->g);
    *bytes = dup_bytes(ppm);
    *len = ppm.size();
  });
}

bl_status bl_grid_write_ppm(const bl_grid* g, const char* path) {
  BL_REQUIRE(g);
  BL_REQUIRE(path);
  return guarded([&] { write_ppm(g->g, path); });
}

bl_status bl_grid_ppm_hash(const bl_grid* g, uint64_t* out) {
  BL_REQUIRE(g);
  BL_REQUIRE(out);
  return guarded([&] { *out = fnv1a64(render_ppm(g->g)); });
}

void bl_verify_request_default(bl_verify_request* out) {
  if (out == nullptr) return;
  *out = bl_verify_request{};
  out->kind = BL_VERIFY_CONTAINMENT;
  out->set = BL_SET_I;
  out->lhs_combiner = BL_UNION;
  out->rhs_combiner = BL_UNION;
  out->n_max = 20;
  out->grid = {{0.0, 0.0}, 4.0, 4.0, 256, 256};
  bl_orbit_params_default(&out->params);
  out->xmin = -2.0;
  out->xmax = 2.0;
  out->ymin = -2.0;
  out->ymax = 2.0;
  out->samples = 10000;
  out->seed = kDefaultSeed;
  out->tol = 1e-9;
}

bl_status bl_verify(const bl_verify_request* req, char** out, int* violations) {
  BL_REQUIRE(req);
  BL_REQUIRE(out);
  BL_REQUIRE(violations);
  return guarded([&] {
    const bl_verify_request& r = *req;
    const VerifyOptions o = options(r);
    json j;
    switch (r.kind) {
      case BL_VERIFY_CONTAINMENT:
        j = report_json(verify_containment(terms(r.lhs, r.lhs_count, "lhs"),
                                           to_cpp(r.lhs_combiner),
                                           terms(r.rhs, r.rhs_count, "rhs"),
                                           to_cpp(r.rhs_combiner), o));
        break;
      case BL_VERIFY_INVARIANCE:
        j = report_json(verify_invariance(need(r.f, "f"), need(r.g, "g"), to_cpp(r.set), o));
        break;
      case BL_VERIFY_COMMUTE:
        j = report_json(verify_commute(need(r.f, "f"), need(r.g, "g"), r.samples, r.tol, r.seed));
        break;
      case BL_VERIFY_TRANSLATE: {
        VerifyOptions t = o;
        t.sampler.count = std::min<std::uint32_t>(r.samples, 2000);
        j = report_json(verify_translate(need(r.f, "f"), to_cpp(r.C), r.n_max,
                                         std::min<std::uint32_t>(r.samples, 100), r.tol, t));
        break;
      }
      case BL_VERIFY_PROPERTY_A:
        j = report_json(verify_property_a(need(r.f, "f"), need(r.g, "g"), o));
        break;
      case BL_VERIFY_PARTITION:
        j = report_json(verify_partition(need(r.f, "f"), to_cpp(r.grid), o));
        break;
      default: throw InvalidArgument("unknown verification kind");
    }
    *violations = j.value("violations", 0) > 0 ? 1 : 0;
    *out = dup_bytes(j.dump(2));
  });
}

bl_status bl_verify_preset(const char* name, const bl_verify_request* opts, char** out,
                           int* passed) {
  BL_REQUIRE(name);
  BL_REQUIRE(out);
  BL_REQUIRE(passed);
  return guarded([&] {
    PresetOptions o;
    if (opts != nullptr) {
      o.params = to_cpp(opts->params);
      o.samples = opts->samples;
      o.seed = opts->seed;
      o.tol = opts->tol;
      o.strict = opts->strict != 0;
      o.threads = opts->threads;
    }
    const auto results = run_preset(name, o);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    *passed = ok ? 1 : 0;
    *out = dup_bytes(to_json(name, results, o));
  });
}

bl_status bl_preset_list_json(char** out) {
  BL_REQUIRE(out);
  return guarded([&] {
    json list = json::array();
    for (const auto& p : preset_catalog()) {
      list.push_back({{"name", p.name},
                      {"f", p.f},
                      {"g", p.g},
                      {"summary", p.summary},
                      {"conjectural", p.conjectural}});
    }
    list.push_back({{"name", "all-paper"},
                    {"summary", "every preset above except the conjectural one"},
                    {"conjectural", false}});
    *out = dup_bytes(list.dump(2));
  });
}

}  // extern "C"
