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

// bungee-lab: command-line front end over the C API.
//
// Exit codes: 0 success / no violations, 1 violations found, 2 usage or
// parse error. JSON goes to stdout, a one-line human summary to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bungee/bungee_lab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

// Failure of a C API call, carrying the exit code to use.
struct Failure {
  int code;
  std::string message;
};

void check(bl_status s, const std::string& context) {
  if (s == BL_OK) return;
  const bool usage = s == BL_ERR_PARSE || s == BL_ERR_INVALID_ARGUMENT || s == BL_ERR_NULL ||
                     s == BL_ERR_LIMIT;
  throw Failure{usage ? kExitUsage : kExitViolations, context + ": " + bl_last_error()};
}

struct ExprDeleter {
  void operator()(bl_expr* e) const { bl_expr_free(e); }
};
using ExprPtr = std::unique_ptr<bl_expr, ExprDeleter>;

struct GridDeleter {
  void operator()(bl_grid* g) const { bl_grid_free(g); }
};
using GridPtr = std::unique_ptr<bl_grid, GridDeleter>;

std::string take(char* s) {
  std::string out(s);
  bl_string_free(s);
  return out;
}

ExprPtr parse_expr(const std::string& text, const char* flag) {
  if (text.empty()) throw Failure{kExitUsage, std::string("missing ") + flag};
  bl_expr* e = nullptr;
  const bl_status s = bl_expr_parse(text.c_str(), &e);
  if (s != BL_OK) {
    std::string msg = std::string(flag) + " \"" + text + "\": " + bl_last_error();
    const long long off = bl_last_error_offset();
    if (off >= 0) {
      msg += "\n  " + text + "\n  " + std::string(static_cast<std::size_t>(off), ' ') + "^";
    }
    throw Failure{kExitUsage, msg};
  }
  return ExprPtr(e);
}

std::string print_expr(const bl_expr* e) {
  char* s = nullptr;
  check(bl_expr_print(e, &s), "print");
  return take(s);
}

bl_complex constant(const std::string& text, const char* flag) {
  bl_complex c{};
  const bl_status s = bl_constant_value(text.c_str(), &c);
  if (s != BL_OK) throw Failure{kExitUsage, std::string(flag) + " \"" + text + "\": " + bl_last_error()};
  return c;
}

std::vector<double> numbers(const std::string& text, std::size_t n, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Failure{kExitUsage, std::string(flag) + ": bad number \"" + item + "\""};
    }
  }
  if (out.size() != n) {
    throw Failure{kExitUsage, std::string(flag) + " needs " + std::to_string(n) +
                                  " comma-separated numbers"};
  }
  return out;
}

// Settings shared by every subcommand.
struct Common {
  std::string f, g;
  bl_orbit_params params{};
  std::string region = "-2,2,-2,2";
  std::uint32_t samples = 10000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  bool strict = false;
  unsigned threads = 0;
  std::string out;
};

void add_params(CLI::App* app, Common& c) {
  app->add_option("--max-iter", c.params.max_iter, "iteration count N")->capture_default_str();
  app->add_option("--escape-radius", c.params.escape_radius, "escape radius R_esc")
      ->capture_default_str();
  app->add_option("--bound-radius", c.params.bound_radius, "bound radius R_bound")
      ->capture_default_str();
  app->add_option("--min-osc", c.params.min_oscillations, "oscillations needed for Bungee")
      ->capture_default_str();
  app->add_option("--tail-window", c.params.tail_window, "escape tail window W")
      ->capture_default_str();
}

void add_sampling(CLI::App* app, Common& c) {
  app->add_option("--region", c.region, "sampling rectangle \"xmin,xmax,ymin,ymax\"")
      ->capture_default_str();
  app->add_option("--samples", c.samples, "number of sample points")->capture_default_str();
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_flag("--strict", c.strict, "treat Heuristic verdicts as unknown");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app->add_option("--out", c.out, "also write the JSON report to this file");
}

void emit(const std::string& json, const std::string& out_path) {
  std::cout << json << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw Failure{kExitUsage, "cannot write " + out_path};
    f << json << "\n";
  }
}

bl_verify_request base_request(const Common& c) {
  bl_verify_request r;
  bl_verify_request_default(&r);
  r.params = c.params;
  const auto box = numbers(c.region, 4, "--region");
  r.xmin = box[0];
  r.xmax = box[1];
  r.ymin = box[2];
  r.ymax = box[3];
  r.samples = c.samples;
  r.seed = c.seed;
  r.tol = c.tol;
  r.strict = c.strict ? 1 : 0;
  r.threads = c.threads;
  return r;
}

int run_request(const bl_verify_request& r, const Common& c) {
  char* json = nullptr;
  int violations = 0;
  check(bl_verify(&r, &json, &violations), "verify");
  const std::string text = take(json);
  emit(text, c.out);
  std::cerr << (violations ? "violations found" : "no violations") << "\n";
  return violations ? kExitViolations : kExitOk;
}

bl_set_kind set_kind(const std::string& s) {
  if (s == "I" || s == "i" || s == "escaping") return BL_SET_I;
  if (s == "K" || s == "k" || s == "bounded") return BL_SET_K;
  if (s == "BU" || s == "bu" || s == "bungee") return BL_SET_BU;
  throw Failure{kExitUsage, "unknown set \"" + s + "\" (use I, K or BU)"};
}

bl_combiner combiner(const std::string& s) {
  if (s == "union") return BL_UNION;
  if (s == "intersection") return BL_INTERSECTION;
  if (s == "symmetric-difference" || s == "xor") return BL_SYMMETRIC_DIFFERENCE;
  throw Failure{kExitUsage, "unknown combiner \"" + s + "\""};
}

const char* verdict_name(bl_verdict v) {
  switch (v) {
    case BL_ESCAPING: return "Escaping";
    case BL_BOUNDED: return "Bounded";
    case BL_BUNGEE: return "Bungee";
    case BL_UNDECIDED: return "Undecided";
    case BL_POLE: return "Pole";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit classification and set-relation checks for complex maps"};
  app.require_subcommand(1);
  Common c;
  bl_orbit_params_default(&c.params);

  // classify
  std::string z0 = "0";
  auto* classify = app.add_subcommand("classify", "classify the orbit of one point");
  classify->add_option("--f", c.f, "map, e.g. \"1/z^2\"")->required();
  classify->add_option("--z0", z0, "seed point, a constant expression such as \"0.5+2*i\"")
      ->required();
  add_params(classify, c);

  // render
  std::string grid_text = "0,0,4,4,512,512";
  auto* render = app.add_subcommand("render", "classify a grid and write a PPM image");
  render->add_option("--f", c.f, "map")->required();
  render->add_option("--grid", grid_text, "\"cx,cy,w,h,nx,ny\"")->capture_default_str();
  render->add_option("--out", c.out, "output .ppm path")->required();
  render->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  add_params(render, c);

  // verify
  std::string preset;
  auto* verify = app.add_subcommand("verify", "check a set relation or run a preset");
  verify->add_option("--preset", preset, "named example preset, or all-paper for every non-conjectural one");
  verify->require_subcommand(0, 1);
  add_params(verify, c);
  add_sampling(verify, c);
  verify->add_option("--tol", c.tol, "numerical tolerance")->capture_default_str();

  std::vector<std::string> lhs_terms, rhs_terms;
  std::string lhs_op = "union", rhs_op = "union", relation = "bu-union";
  auto* containment = verify->add_subcommand("containment", "lhs set contained in rhs set");
  containment->add_option("--f", c.f, "first map");
  containment->add_option("--g", c.g, "second map");
  containment->add_option("--relation", relation,
                          "with --f/--g: bu-union (BU(f o g) in BU(f) u BU(g)), bu-intersection, "
                          "k-intersection (K(f) n K(g) in K(f o g)), k-question")
      ->capture_default_str();
  containment->add_option("--lhs", lhs_terms, "explicit term \"SET:expr\" (repeatable)");
  containment->add_option("--rhs", rhs_terms, "explicit term \"SET:expr\" (repeatable)");
  containment->add_option("--lhs-op", lhs_op, "union, intersection or symmetric-difference");
  containment->add_option("--rhs-op", rhs_op, "union, intersection or symmetric-difference");
  add_params(containment, c);
  add_sampling(containment, c);

  std::string set = "I";
  auto* invariance = verify->add_subcommand("invariance", "g maps the set of f into itself");
  invariance->add_option("--f", c.f, "map defining the set")->required();
  invariance->add_option("--g", c.g, "map applied to the set")->required();
  invariance->add_option("--set", set, "I, K or BU")->capture_default_str();
  add_params(invariance, c);
  add_sampling(invariance, c);

  std::uint32_t commute_samples = 1000;
  auto* commute = verify->add_subcommand("commute", "f o g = g o f in the unit disc");
  commute->add_option("--f", c.f, "first map")->required();
  commute->add_option("--g", c.g, "second map")->required();
  commute->add_option("--samples", commute_samples, "sample points")->capture_default_str();
  commute->add_option("--seed", c.seed, "random seed")->capture_default_str();
  commute->add_option("--tol", c.tol, "relative tolerance")->capture_default_str();
  commute->add_option("--out", c.out, "also write the JSON report to this file");

  std::string C_text = "0", translate_region = "-1,1,-1,1";
  std::uint32_t n_max = 20, translate_samples = 100;
  auto* translate = verify->add_subcommand("translate", "g = f + C satisfies g^n = f^n + C");
  translate->add_option("--f", c.f, "map")->required();
  translate->add_option("--C", C_text, "translation constant, e.g. \"2*pi*i\"")->required();
  translate->add_option("--n-max", n_max, "largest n")->capture_default_str();
  translate->add_option("--tol", c.tol, "tolerance")->capture_default_str();
  translate->add_option("--samples", translate_samples, "sample points (at most 100 used for "
                        "the identity, at most 2000 for verdict agreement)")
      ->capture_default_str();
  translate->add_option("--region", translate_region, "sampling rectangle")->capture_default_str();
  translate->add_option("--seed", c.seed, "random seed")->capture_default_str();
  translate->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  translate->add_option("--out", c.out, "also write the JSON report to this file");
  add_params(translate, c);

  auto* property_a = verify->add_subcommand("property-a", "f sends g-escaping orbits to infinity");
  property_a->add_option("--f", c.f, "map applied to the escaping orbit")->required();
  property_a->add_option("--g", c.g, "map generating the orbit")->required();
  add_params(property_a, c);
  add_sampling(property_a, c);

  auto* partition = verify->add_subcommand("partition", "one verdict per pixel, reproducibly");
  partition->add_option("--f", c.f, "map")->required();
  std::string partition_grid = "0,0,4,4,256,256";
  partition->add_option("--grid", partition_grid, "\"cx,cy,w,h,nx,ny\"")->capture_default_str();
  add_params(partition, c);
  add_sampling(partition, c);

  // fixed-points
  std::string fp_region = "-2,2,-2,2";
  int starts = 16;
  auto* fixed = app.add_subcommand("fixed-points", "locate and classify fixed points");
  fixed->add_option("--f", c.f, "map")->required();
  fixed->add_option("--region", fp_region, "\"xmin,xmax,ymin,ymax\"")->capture_default_str();
  fixed->add_option("--starts", starts, "Newton starts per side")->capture_default_str();

  auto* presets = app.add_subcommand("presets", "list named presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      const ExprPtr f = parse_expr(c.f, "--f");
      const bl_complex z = constant(z0, "--z0");
      char* json = nullptr;
      check(bl_classify_point_json(f.get(), z, &c.params, &json), "classify");
      std::cout << take(json) << "\n";
      bl_classification cls{};
      check(bl_classify_point(f.get(), z, &c.params, &cls), "classify");
      std::cerr << print_expr(f.get()) << " at " << z0 << ": " << verdict_name(cls.verdict)
                << (cls.confidence == BL_HEURISTIC ? " (heuristic)" : "") << "\n";
      return kExitOk;
    }

    if (*render) {
      const ExprPtr f = parse_expr(c.f, "--f");
      bl_grid_spec spec{};
      check(bl_grid_spec_parse(grid_text.c_str(), &spec), "--grid");
      bl_grid* raw = nullptr;
      check(bl_grid_classify(f.get(), &spec, &c.params, c.threads, &raw), "render");
      const GridPtr grid(raw);
      check(bl_grid_write_ppm(grid.get(), c.out.c_str()), "render");
      char* json = nullptr;
      check(bl_grid_stats_json(grid.get(), &json), "render");
      std::cout << take(json) << "\n";
      std::cerr << "wrote " << c.out << "\n";
      return kExitOk;
    }

    if (*fixed) {
      const ExprPtr f = parse_expr(c.f, "--f");
      const auto box = numbers(fp_region, 4, "--region");
      char* json = nullptr;
      check(bl_fixed_points_json(f.get(), box[0], box[1], box[2], box[3], starts, &json),
            "fixed-points");
      std::cout << take(json) << "\n";
      return kExitOk;
    }

    if (*presets) {
      char* json = nullptr;
      check(bl_preset_list_json(&json), "presets");
      std::cout << take(json) << "\n";
      return kExitOk;
    }

    // verify
    if (!preset.empty()) {
      if (verify->get_subcommands().size() > 0) {
        throw Failure{kExitUsage, "--preset cannot be combined with a verify subcommand"};
      }
      bl_verify_request opts = base_request(c);
      char* json = nullptr;
      int passed = 0;
      check(bl_verify_preset(preset.c_str(), &opts, &json, &passed), "--preset");
      emit(take(json), c.out);
      std::cerr << "preset " << preset << ": " << (passed ? "all checks passed" : "FAILED") << "\n";
      return passed ? kExitOk : kExitViolations;
    }

    if (*containment) {
      bl_verify_request r = base_request(c);
      std::vector<ExprPtr> owned;
      std::vector<bl_set_term> lhs, rhs;
      auto term = [&](const std::string& spec, const char* flag) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) {
          throw Failure{kExitUsage, std::string(flag) + " expects \"SET:expr\""};
        }
        owned.push_back(parse_expr(spec.substr(colon + 1), flag));
        return bl_set_term{owned.back().get(), set_kind(spec.substr(0, colon))};
      };
      if (!lhs_terms.empty()) {
        for (const auto& t : lhs_terms) lhs.push_back(term(t, "--lhs"));
        for (const auto& t : rhs_terms) rhs.push_back(term(t, "--rhs"));
        r.lhs_combiner = combiner(lhs_op);
        r.rhs_combiner = combiner(rhs_op);
      } else {
        owned.push_back(parse_expr(c.f, "--f"));
        owned.push_back(parse_expr(c.g, "--g"));
        bl_expr* fg = nullptr;
        check(bl_expr_compose(owned[0].get(), owned[1].get(), &fg), "compose");
        owned.emplace_back(fg);
        const bl_expr *f = owned[0].get(), *g = owned[1].get();
        if (relation == "bu-union" || relation == "bu-intersection") {
          lhs = {{fg, BL_SET_BU}};
          rhs = {{f, BL_SET_BU}, {g, BL_SET_BU}};
          r.rhs_combiner = relation == "bu-union" ? BL_UNION : BL_INTERSECTION;
        } else if (relation == "k-intersection" || relation == "k-question") {
          lhs = {{f, BL_SET_K}, {g, BL_SET_K}};
          rhs = {{fg, BL_SET_K}};
          r.lhs_combiner = relation == "k-intersection" ? BL_INTERSECTION : BL_SYMMETRIC_DIFFERENCE;
        } else {
          throw Failure{kExitUsage, "unknown --relation \"" + relation + "\""};
        }
        if (relation == "k-question") std::cerr << "note: this relation is conjectural\n";
      }
      r.kind = BL_VERIFY_CONTAINMENT;
      r.lhs = lhs.data();
      r.lhs_count = lhs.size();
      r.rhs = rhs.data();
      r.rhs_count = rhs.size();
      return run_request(r, c);
    }

    if (*invariance || *property_a) {
      const ExprPtr f = parse_expr(c.f, "--f");
      const ExprPtr g = parse_expr(c.g, "--g");
      bl_verify_request r = base_request(c);
      r.kind = *invariance ? BL_VERIFY_INVARIANCE : BL_VERIFY_PROPERTY_A;
      r.f = f.get();
      r.g = g.get();
      r.set = set_kind(set);
      return run_request(r, c);
    }

    if (*commute) {
      const ExprPtr f = parse_expr(c.f, "--f");
      const ExprPtr g = parse_expr(c.g, "--g");
      bl_verify_request r = base_request(c);
      r.kind = BL_VERIFY_COMMUTE;
      r.f = f.get();
      r.g = g.get();
      r.samples = commute_samples;
      return run_request(r, c);
    }

    if (*translate) {
      const ExprPtr f = parse_expr(c.f, "--f");
      bl_verify_request r = base_request(c);
      r.kind = BL_VERIFY_TRANSLATE;
      r.f = f.get();
      r.C = constant(C_text, "--C");
      r.n_max = n_max;
      r.samples = translate_samples;
      const auto box = numbers(translate_region, 4, "--region");
      r.xmin = box[0];
      r.xmax = box[1];
      r.ymin = box[2];
      r.ymax = box[3];
      return run_request(r, c);
    }

    if (*partition) {
      const ExprPtr f = parse_expr(c.f, "--f");
      bl_verify_request r = base_request(c);
      r.kind = BL_VERIFY_PARTITION;
      r.f = f.get();
      check(bl_grid_spec_parse(partition_grid.c_str(), &r.grid), "--grid");
      return run_request(r, c);
    }

    throw Failure{kExitUsage, "verify needs --preset or a subcommand (see --help)"};
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
