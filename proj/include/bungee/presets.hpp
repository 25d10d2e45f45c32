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

#ifndef BUNGEE_PRESETS_HPP
#define BUNGEE_PRESETS_HPP

#include <string>
#include <vector>

#include "bungee/orbit.hpp"
#include "bungee/sets.hpp"

namespace bungee {

/// Named example maps.
struct PresetMaps {
  std::string name;
  std::string f, g;  ///< canonical text
  std::string summary;
  bool conjectural = false;
};

/// Every preset with its maps, in the order all-paper runs them. The
/// conjectural preset is listed last and is not part of all-paper.
const std::vector<PresetMaps>& preset_catalog();

/// Names accepted by run_preset(), including "all-paper".
std::vector<std::string> preset_names();

struct PresetOptions {
  OrbitParams params;
  std::uint64_t seed = kDefaultSeed;
  std::uint32_t samples = 10000;        ///< set-relation samples
  std::uint32_t commute_samples = 1000;
  double tol = 1e-9;
  bool strict = false;
  unsigned threads = 0;
};

struct PresetCheck {
  std::string name;
  bool passed = false;
  std::string expectation;
  std::string report_json;  ///< the underlying report
};

struct PresetResult {
  std::string name;
  bool passed = false;
  bool conjectural = false;
  std::vector<PresetCheck> checks;
  double runtime_ms = 0.0;
};

/// Run every check of a preset. Throws InvalidArgument for unknown names.
std::vector<PresetResult> run_preset(const std::string& name, const PresetOptions& o = {});

/// {"preset": name, "passed": .., "presets": [...]} with every check's report.
std::string to_json(const std::string& name, const std::vector<PresetResult>& results,
                    const PresetOptions& o, int indent = 2);

}  // namespace bungee

#endif  // BUNGEE_PRESETS_HPP
