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

#ifndef FOGSIM_MARKET_HPP
#define FOGSIM_MARKET_HPP

#include <map>
#include <vector>

#include <json.hpp>

#include "fogsim/allocation.hpp"
#include "fogsim/equilibrium.hpp"
#include "fogsim/matching.hpp"
#include "fogsim/scenario.hpp"

namespace fogsim {

struct UtilityReport {
    std::vector<double> dss;
    std::vector<double> dso;
    std::vector<double> fn;
    std::vector<double> cloud; ///< data-center CRBs per DSO
    double dss_total = 0.0;
    double dso_total = 0.0;
    double fn_total = 0.0;
};

/// Full result of one market run.
struct MarketOutcome {
    std::vector<double> prices;    ///< per DSO
    std::vector<double> purchases; ///< per DSS; 0 = opted out
    std::vector<int> subscription; ///< per DSS: DSO id or -1
    Allocation dso_fn;             ///< rows DSO, cols FN; cloud per DSO
    Allocation fn_dss;             ///< rows FN, cols DSS
    UtilityReport utilities;
};

/// Proposal logs from one market run.
struct MarketTrace {
    std::vector<TraceRow> dso_fn;
    std::map<int, std::vector<TraceRow>> fn_dss; ///< per DSO
};

/// Runs the full pipeline: subscription, pricing, DSO-FN matching, then
/// one FN-DSS matching per operator over its paired nodes and served
/// subscribers. Operator demand the fog cannot cover goes to the data
/// center. Throws ScenarioError on an invalid scenario. Pass a trace to
/// capture the matching proposals.
MarketOutcome run_market(const Scenario& s, MarketTrace* trace = nullptr);

/// Same subscription and pricing, but every purchase is served by the
/// data center; no matching runs. The comparison curve for fog benefit.
MarketOutcome cloud_only_baseline(const Scenario& s);

/// Per-node utility: preference-weighted margin (rent minus transmission
/// cost kappa*distance) over every subscriber quantity the node serves.
/// Negative margins are reported as-is.
std::vector<double> fn_utilities(const MarketOutcome& outcome, const Scenario& s);

/// Per-operator utility: subscriber revenue minus node rents minus the
/// data-center cost of the cloud remainder.
std::vector<double> dso_utilities(const MarketOutcome& outcome, const Scenario& s);

/// Per-subscriber utility with the delay realized from actual serving
/// distances; split service uses the quantity-weighted mean distance,
/// cloud portions at cloud_distance. Opted-out subscribers score 0.
std::vector<double> dss_utilities(const MarketOutcome& outcome, const Scenario& s);

nlohmann::json outcome_to_json(const MarketOutcome& outcome);

} // namespace fogsim

#endif // FOGSIM_MARKET_HPP
