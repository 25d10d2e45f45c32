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

// nlohmann::json builders shared by reports, presets and the C API.

#ifndef BUNGEE_SRC_JSON_UTIL_HPP
#define BUNGEE_SRC_JSON_UTIL_HPP

#include <json.hpp>

#include "bungee/orbit.hpp"
#include "bungee/sets.hpp"

namespace bungee {

nlohmann::json complex_json(Complex z);
nlohmann::json params_json(const OrbitParams& p);
nlohmann::json region_json(const Region& r);
nlohmann::json sampler_json(const Sampler& s);
nlohmann::json counts_json(const std::array<std::uint64_t, 5>& counts);
nlohmann::json grid_spec_json(const GridSpec& g);
nlohmann::json report_json(const RelationReport& r);
nlohmann::json report_json(const CommuteReport& r);
nlohmann::json report_json(const TranslateReport& r);
nlohmann::json report_json(const EqualityReport& r);
nlohmann::json stats_json(const MaskStats& s);

}  // namespace bungee

#endif  // BUNGEE_SRC_JSON_UTIL_HPP
