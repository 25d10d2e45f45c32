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

#ifndef BUNGEE_RENDER_HPP
#define BUNGEE_RENDER_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "bungee/sets.hpp"

namespace bungee {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  Rgb bounded{0, 0, 0};
  Rgb bungee{220, 40, 200};
  Rgb undecided{128, 128, 128};
  Rgb pole{255, 255, 255};
  /// Escaping pixels use this hue scaled by min(1, step / shade_steps).
  Rgb escaping{255, 170, 40};
  std::uint32_t shade_steps = 32;
};

/// Colour of one pixel. Escape steps below 1 are treated as 1 so an escaping
/// pixel is never pure black.
Rgb pixel_color(const Classification& c, std::uint32_t escape_step, const Palette& palette);

/// Binary PPM: "P6\n{nx} {ny}\n255\n" then 3*nx*ny bytes, top row first
/// (largest imaginary part). Throws InvalidArgument for an empty grid.
std::string render_ppm(const ClassGrid& grid, const Palette& palette = {});

/// Write render_ppm() to `path`. Throws Error on I/O failure.
void write_ppm(const ClassGrid& grid, const std::string& path, const Palette& palette = {});

/// 64-bit FNV-1a, used for golden image hashes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace bungee

#endif  // BUNGEE_RENDER_HPP
