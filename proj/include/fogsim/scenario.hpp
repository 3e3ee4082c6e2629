// Copyright 2026 The fogsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGSIM_SCENARIO_HPP
#define FOGSIM_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogsim/agents.hpp"

namespace fogsim {

/// Immutable world description. All market stages are pure functions of a
/// Scenario, so one instance can be shared across concurrent workers.
struct Scenario {
    std::vector<DssAgent> dsss;
    std::vector<DsoAgent> dsos;
    std::vector<FogNodeAgent> fns;

    double mu = 0.1;              ///< service rate per CRB, jobs/ms
    double t_th = 60.0;           ///< service-delay tolerance, ms
    double theta = 0.02;          ///< network delay per km, ms/km
    double kappa = 0.1;           ///< transmission cost per CRB*km
    double cloud_distance = 100.0;///< km to the fallback data center
    std::uint64_t seed = 0;       ///< recorded for provenance
};

/// Raised when a scenario fails validation at a construction boundary
/// (file load or generation).
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Checks every scenario invariant and returns one message per violation,
/// each naming the offending agent. Empty result means the scenario is
/// valid. Notably rejects any DSS whose arrival rate reaches mu * t_th:
/// below that product no finite purchase can meet the delay bound.
std::vector<std::string> validate_scenario(const Scenario& s);

nlohmann::json scenario_to_json(const Scenario& s);

/// Parses and validates; throws ScenarioError listing every violation.
Scenario scenario_from_json(const nlohmann::json& j);

void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

} // namespace fogsim

#endif // FOGSIM_SCENARIO_HPP
