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

#include "bungee/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bungee/errors.hpp"

namespace bungee {

Rgb pixel_color(const Classification& c, std::uint32_t escape_step, const Palette& palette) {
  switch (c.verdict) {
    case Verdict::Bounded: return palette.bounded;
    case Verdict::Bungee: return palette.bungee;
    case Verdict::Undecided: return palette.undecided;
    case Verdict::Pole: return palette.pole;
    case Verdict::Escaping: break;
  }
  const double n = std::max<std::uint32_t>(escape_step, 1);
  const double t = palette.shade_steps == 0 ? 1.0 : std::min(1.0, n / palette.shade_steps);
  auto scale = [t](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::lround(v * t));
  };
  return {scale(palette.escaping.r), scale(palette.escaping.g), scale(palette.escaping.b)};
}

std::string render_ppm(const ClassGrid& grid, const Palette& palette) {
  const GridSpec& s = grid.spec;
  if (s.nx == 0 || s.ny == 0 || grid.verdicts.size() != s.pixels() ||
      grid.escape_steps.size() != s.pixels()) {
    throw InvalidArgument("cannot render an empty or inconsistent grid");
  }
  std::string out = "P6\n" + std::to_string(s.nx) + " " + std::to_string(s.ny) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * static_cast<std::size_t>(s.pixels()));
  char* p = out.data() + header;
  for (std::uint32_t row = 0; row < s.ny; ++row) {
    const std::uint32_t k = s.ny - 1 - row;
    for (std::uint32_t j = 0; j < s.nx; ++j) {
      const std::size_t idx = std::size_t{k} * s.nx + j;
      const Rgb c = pixel_color(grid.verdicts[idx], grid.escape_steps[idx], palette);
      *p++ = static_cast<char>(c.r);
      *p++ = static_cast<char>(c.g);
      *p++ = static_cast<char>(c.b);
    }
  }
  return out;
}

void write_ppm(const ClassGrid& grid, const std::string& path, const Palette& palette) {
  const std::string bytes = render_ppm(grid, palette);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("failed writing " + path);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace bungee
