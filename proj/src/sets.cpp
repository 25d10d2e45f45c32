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

#include "bungee/sets.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "bungee/errors.hpp"

namespace bungee {

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BUNGEE_LAB_THREADS")) {
    unsigned cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [p, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && p == end && cap > 0) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body, std::size_t chunk) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c * chunk, std::min(count, (c + 1) * chunk));
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      try {
        body(c * chunk, std::min(count, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// --- grids ------------------------------------------------------------------

void GridSpec::validate(std::uint64_t max_pixels) const {
  if (!is_finite(center)) throw InvalidArgument("grid centre must be finite");
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw InvalidArgument("grid width and height must be positive");
  }
  if (nx == 0 || ny == 0) throw InvalidArgument("grid must have at least one pixel");
  if (pixels() > max_pixels) {
    throw LimitError("grid has " + std::to_string(pixels()) + " pixels, cap is " +
                     std::to_string(max_pixels));
  }
}

GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 6) throw InvalidArgument("grid must be \"cx,cy,w,h,nx,ny\"");

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto real = [&](const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw InvalidArgument("bad number in grid: \"" + raw + "\"");
    }
    return v;
  };
  auto count = [&](const std::string& raw) {
    const std::string s = trim(raw);
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw InvalidArgument("bad pixel count in grid: \"" + raw + "\"");
    }
    return v;
  };
  GridSpec g;
  g.center = {real(parts[0]), real(parts[1])};
  g.width = real(parts[2]);
  g.height = real(parts[3]);
  g.nx = count(parts[4]);
  g.ny = count(parts[5]);
  g.validate(UINT64_MAX);
  return g;
}

ClassGrid classify_grid(const Expr& f, const GridSpec& spec, const OrbitParams& p,
                        const GridOptions& o) {
  spec.validate(o.max_pixels);
  p.validate();
  ClassGrid grid;
  grid.spec = spec;
  grid.params = p;
  grid.function_text = print(f);
  const std::size_t n = static_cast<std::size_t>(spec.pixels());
  grid.verdicts.resize(n);
  grid.escape_steps.resize(n);

  const Program prog(f);
  parallel_for(n, resolve_threads(o.threads), [&](std::size_t begin, std::size_t end) {
    OrbitTrace trace;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto j = static_cast<std::uint32_t>(idx % spec.nx);
      const auto k = static_cast<std::uint32_t>(idx / spec.nx);
      iterate_orbit(prog, spec.point(j, k), p, trace);
      grid.verdicts[idx] = classify(trace, p);
      grid.escape_steps[idx] = escape_step(trace, p);
    }
  });
  return grid;
}

MaskStats mask_stats(const ClassGrid& grid) {
  if (grid.verdicts.empty()) throw InvalidArgument("grid is empty");
  MaskStats s;
  s.total = grid.verdicts.size();
  for (const auto& c : grid.verdicts) ++s.counts[static_cast<std::size_t>(c.verdict)];
  return s;
}

// --- sampling ---------------------------------------------------------------

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

void Sampler::validate() const {
  if (!(region.xmin < region.xmax) || !(region.ymin < region.ymax)) {
    throw InvalidArgument("sampler region must be nonempty");
  }
  if (kind == Kind::Uniform && count == 0) throw InvalidArgument("sampler needs at least one sample");
  if (kind == Kind::Grid && (nx == 0 || ny == 0)) {
    throw InvalidArgument("sampler grid needs at least one pixel");
  }
}

std::vector<Complex> rectangle_points(const Region& r, std::uint32_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Complex> pts;
  pts.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const double x = r.xmin + unit(rng) * (r.xmax - r.xmin);
    const double y = r.ymin + unit(rng) * (r.ymax - r.ymin);
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<Complex> unit_disc_points(std::uint32_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Complex> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    const double x = 2.0 * unit(rng) - 1.0;
    const double y = 2.0 * unit(rng) - 1.0;
    if (x * x + y * y < 1.0) pts.push_back({x, y});
  }
  return pts;
}

std::vector<Complex> Sampler::points() const {
  validate();
  if (kind == Kind::Uniform) return rectangle_points(region, count, seed);
  std::vector<Complex> pts;
  pts.reserve(std::size_t{nx} * ny);
  const double w = region.xmax - region.xmin, h = region.ymax - region.ymin;
  for (std::uint32_t k = 0; k < ny; ++k) {
    for (std::uint32_t j = 0; j < nx; ++j) {
      pts.push_back({region.xmin + (j + 0.5) / nx * w, region.ymin + (k + 0.5) / ny * h});
    }
  }
  return pts;
}

// --- membership -------------------------------------------------------------

const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::Escaping: return "I";
    case SetKind::Bounded: return "K";
    case SetKind::Bungee: return "BU";
  }
  return "?";
}

SetKind parse_set_kind(const std::string& text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "i" || s == "escaping") return SetKind::Escaping;
  if (s == "k" || s == "bounded") return SetKind::Bounded;
  if (s == "bu" || s == "bungee") return SetKind::Bungee;
  throw InvalidArgument("unknown set \"" + text + "\" (expected I, K or BU)");
}

Verdict verdict_of(SetKind k) {
  switch (k) {
    case SetKind::Escaping: return Verdict::Escaping;
    case SetKind::Bounded: return Verdict::Bounded;
    case SetKind::Bungee: return Verdict::Bungee;
  }
  return Verdict::Undecided;
}

Membership membership(const Classification& c, SetKind k, bool strict) {
  if (c.verdict == Verdict::Undecided || c.verdict == Verdict::Pole) return Membership::Unknown;
  if (strict && c.confidence == Confidence::Heuristic) return Membership::Unknown;
  return c.verdict == verdict_of(k) ? Membership::In : Membership::Out;
}

const char* to_string(Combiner c) {
  switch (c) {
    case Combiner::Union: return "union";
    case Combiner::Intersection: return "intersection";
    case Combiner::SymmetricDifference: return "symmetric-difference";
  }
  return "?";
}

Combiner parse_combiner(const std::string& text) {
  if (text == "union") return Combiner::Union;
  if (text == "intersection") return Combiner::Intersection;
  if (text == "symmetric-difference" || text == "xor") return Combiner::SymmetricDifference;
  throw InvalidArgument("unknown combiner \"" + text + "\"");
}

Membership combine(Combiner c, const std::vector<Membership>& parts) {
  bool any_in = false, any_out = false, any_unknown = false;
  std::size_t ins = 0;
  for (Membership m : parts) {
    any_in |= m == Membership::In;
    any_out |= m == Membership::Out;
    any_unknown |= m == Membership::Unknown;
    ins += m == Membership::In;
  }
  switch (c) {
    case Combiner::Union:
      if (any_in) return Membership::In;
      return any_unknown ? Membership::Unknown : Membership::Out;
    case Combiner::Intersection:
      if (any_out) return Membership::Out;
      return any_unknown ? Membership::Unknown : Membership::In;
    case Combiner::SymmetricDifference:
      if (any_unknown) return Membership::Unknown;
      return ins % 2 == 1 ? Membership::In : Membership::Out;
  }
  return Membership::Unknown;
}

}  // namespace bungee
