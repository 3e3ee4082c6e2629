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

#include "fogsim/market.hpp"

#include <algorithm>
#include <cmath>

#include "fogsim/geometry.hpp"
#include "fogsim/matching.hpp"

namespace fogsim {

namespace {

void require_valid(const Scenario& s)
{
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v;
        }
        throw ScenarioError(msg);
    }
}

std::vector<double> dso_demands(const Scenario& s, const Subscription& sub,
                                const PricingResult& pricing)
{
    std::vector<double> demand(s.dsos.size(), 0.0);
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const int i = sub.dso_of_dss[j];
        if (i != Subscription::kUnassigned) {
            demand[i] += pricing.purchase[j];
        }
    }
    return demand;
}

void fill_utilities(MarketOutcome& outcome, const Scenario& s)
{
    UtilityReport& report = outcome.utilities;
    report.dss = dss_utilities(outcome, s);
    report.dso = dso_utilities(outcome, s);
    report.fn = fn_utilities(outcome, s);
    report.cloud.assign(s.dsos.size(), 0.0);
    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        report.cloud[i] = outcome.dso_fn.cloud_at(static_cast<int>(i));
    }
    report.dss_total = 0.0;
    report.dso_total = 0.0;
    report.fn_total = 0.0;
    for (double u : report.dss) {
        report.dss_total += u;
    }
    for (double u : report.dso) {
        report.dso_total += u;
    }
    for (double u : report.fn) {
        report.fn_total += u;
    }
}

} // namespace

MarketOutcome run_market(const Scenario& s, MarketTrace* trace)
{
    require_valid(s);

    const Subscription sub = subscribe(s);
    const PricingResult pricing = set_prices(s, sub);

    MarketOutcome outcome;
    outcome.prices = pricing.price;
    outcome.purchases = pricing.purchase;
    outcome.subscription = sub.dso_of_dss;

    auto [fn_side, dso_side] = build_dso_fn_sides(s, sub, pricing);
    MatchResult dso_fn_match = run_matching(fn_side, dso_side);
    // Rows of the match are acceptors (DSOs), columns proposers (FNs),
    // which is exactly the dso_fn orientation.
    Allocation& dso_fn = dso_fn_match.allocation;
    if (trace) {
        trace->dso_fn = std::move(dso_fn_match.trace);
    }

    // Per-operator sub-markets between its paired nodes and its buyers.
    for (const DsoAgent& dso : s.dsos) {
        auto [dss_side, paired_fns] =
            build_fn_dss_sides(s, dso.id, sub, dso_fn, pricing);
        MatchResult sub_match = run_matching(dss_side, paired_fns);
        // Rows are FNs, columns DSSs.
        for (const auto& [key, q] : sub_match.allocation.entries) {
            outcome.fn_dss.add(key.first, key.second, q);
        }
        // An operator only pays for the quantity its subscribers use;
        // quota the sub-market left idle is handed back to the node.
        for (std::size_t k = 0; k < paired_fns.size(); ++k) {
            const int fn_id = paired_fns.ids[k];
            dso_fn.set(dso.id, fn_id,
                       sub_match.allocation.row_total(fn_id));
        }
        if (trace) {
            trace->fn_dss[dso.id] = std::move(sub_match.trace);
        }
    }

    // Whatever the fog did not absorb is served by the data center.
    const std::vector<double> demand = dso_demands(s, sub, pricing);
    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        const double residual = demand[i] - dso_fn.row_total(static_cast<int>(i));
        if (residual > kQuantityTol) {
            dso_fn.cloud[static_cast<int>(i)] = residual;
        }
    }

    outcome.dso_fn = std::move(dso_fn);
    fill_utilities(outcome, s);
    return outcome;
}

MarketOutcome cloud_only_baseline(const Scenario& s)
{
    require_valid(s);

    const Subscription sub = subscribe(s);
    const PricingResult pricing = set_prices(s, sub);

    MarketOutcome outcome;
    outcome.prices = pricing.price;
    outcome.purchases = pricing.purchase;
    outcome.subscription = sub.dso_of_dss;

    const std::vector<double> demand = dso_demands(s, sub, pricing);
    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        if (demand[i] > kQuantityTol) {
            outcome.dso_fn.cloud[static_cast<int>(i)] = demand[i];
        }
    }

    fill_utilities(outcome, s);
    return outcome;
}

std::vector<double> fn_utilities(const MarketOutcome& outcome, const Scenario& s)
{
    std::vector<double> utility(s.fns.size(), 0.0);
    for (const auto& [key, q] : outcome.fn_dss.entries) {
        const auto& [fn_id, dss_id] = key;
        const FogNodeAgent& fn = s.fns[fn_id];
        const DssAgent& dss = s.dsss[dss_id];
        const int dso_id = outcome.subscription[dss_id];
        const double weight = fn.dso_weights[dso_id];
        const double l = distance(fn.position, dss.position);
        utility[fn_id] += weight * (fn.rent - s.kappa * l) * q;
    }
    return utility;
}

std::vector<double> dso_utilities(const MarketOutcome& outcome, const Scenario& s)
{
    std::vector<double> utility(s.dsos.size(), 0.0);
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const int i = outcome.subscription[j];
        if (i != Subscription::kUnassigned) {
            utility[i] += outcome.prices[i] * outcome.purchases[j];
        }
    }
    for (const auto& [key, q] : outcome.dso_fn.entries) {
        const auto& [dso_id, fn_id] = key;
        utility[dso_id] -= s.fns[fn_id].rent * q;
    }
    for (const auto& [dso_id, q] : outcome.dso_fn.cloud) {
        utility[dso_id] -= s.dsos[dso_id].cloud_unit_cost * q;
    }
    return utility;
}

std::vector<double> dss_utilities(const MarketOutcome& outcome, const Scenario& s)
{
    std::vector<double> utility(s.dsss.size(), 0.0);

    // Quantity-weighted serving distance per subscriber; the cloud share
    // is whatever its purchase the fog does not cover.
    std::vector<double> fog_qty(s.dsss.size(), 0.0);
    std::vector<double> weighted_dist(s.dsss.size(), 0.0);
    for (const auto& [key, q] : outcome.fn_dss.entries) {
        const auto& [fn_id, dss_id] = key;
        const double l = distance(s.fns[fn_id].position, s.dsss[dss_id].position);
        fog_qty[dss_id] += q;
        weighted_dist[dss_id] += q * l;
    }

    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const double q = outcome.purchases[j];
        if (q <= kQuantityTol) {
            continue; // opted out
        }
        const DssAgent& dss = s.dsss[j];
        const int i = outcome.subscription[j];
        const double cloud_share = std::max(q - fog_qty[j], 0.0);
        const double mean_dist =
            (weighted_dist[j] + cloud_share * s.cloud_distance) / q;
        const DelayBreakdown delay{
            queueing_cost(dss.arrival_rate, s.mu, q),
            network_cost(s.theta, mean_dist),
        };
        utility[j] = dss_utility(dss, outcome.prices[i], q, delay.total());
    }
    return utility;
}

nlohmann::json outcome_to_json(const MarketOutcome& outcome)
{
    nlohmann::json j;
    j["prices"] = outcome.prices;
    j["purchases"] = outcome.purchases;

    j["subscription"] = nlohmann::json::array();
    for (int dso : outcome.subscription) {
        if (dso == Subscription::kUnassigned) {
            j["subscription"].push_back(nullptr);
        } else {
            j["subscription"].push_back(dso);
        }
    }

    auto triples = [](const Allocation& alloc) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [key, q] : alloc.entries) {
            rows.push_back({key.first, key.second, q});
        }
        return rows;
    };
    j["dso_fn"]["entries"] = triples(outcome.dso_fn);
    j["dso_fn"]["cloud"] = nlohmann::json::array();
    for (const auto& [row, q] : outcome.dso_fn.cloud) {
        j["dso_fn"]["cloud"].push_back({row, q});
    }
    j["fn_dss"]["entries"] = triples(outcome.fn_dss);

    j["utilities"] = {
        {"dss", outcome.utilities.dss},
        {"dso", outcome.utilities.dso},
        {"fn", outcome.utilities.fn},
        {"cloud", outcome.utilities.cloud},
        {"dss_total", outcome.utilities.dss_total},
        {"dso_total", outcome.utilities.dso_total},
        {"fn_total", outcome.utilities.fn_total},
    };
    return j;
}

} // namespace fogsim
