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

#include "fogsim/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "fogsim/market.hpp"

namespace fogsim {

const char* variable_name(SweepVariable v)
{
    switch (v) {
    case SweepVariable::n_dss: return "n_dss";
    case SweepVariable::lambda_mean: return "lambda_mean";
    case SweepVariable::mu: return "mu";
    case SweepVariable::t_th: return "t_th";
    case SweepVariable::n_fn: return "n_fn";
    }
    return "?";
}

std::optional<SweepVariable> parse_variable(std::string_view name)
{
    if (name == "n_dss") return SweepVariable::n_dss;
    if (name == "lambda_mean") return SweepVariable::lambda_mean;
    if (name == "mu") return SweepVariable::mu;
    if (name == "t_th") return SweepVariable::t_th;
    if (name == "n_fn") return SweepVariable::n_fn;
    return std::nullopt;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

GeneratorParams apply_variable(GeneratorParams base, SweepVariable var, double value)
{
    switch (var) {
    case SweepVariable::n_dss:
        base.n_dss = static_cast<int>(std::lround(value));
        break;
    case SweepVariable::lambda_mean:
        base.lambda_mean = value;
        break;
    case SweepVariable::mu:
        base.mu = value;
        break;
    case SweepVariable::t_th:
        base.t_th = value;
        break;
    case SweepVariable::n_fn:
        base.n_fn = static_cast<int>(std::lround(value));
        break;
    }
    return base;
}

void check_spec(const SweepSpec& spec)
{
    if (spec.grid.empty()) {
        throw std::invalid_argument("run_sweep: empty grid");
    }
    for (std::size_t g = 1; g < spec.grid.size(); ++g) {
        if (!(spec.grid[g] > spec.grid[g - 1])) {
            throw std::invalid_argument("run_sweep: grid must be strictly increasing");
        }
    }
    if (spec.replications < 1) {
        throw std::invalid_argument("run_sweep: replications must be >= 1");
    }
    if (spec.workers < 1) {
        throw std::invalid_argument("run_sweep: workers must be >= 1");
    }
}

SweepRow run_point(const SweepSpec& spec, int grid_index, int replicate)
{
    SweepRow row;
    row.value = spec.grid[grid_index];
    row.replicate = replicate;
    row.seed = replicate_seed(spec.base.seed, grid_index, replicate);
    try {
        GeneratorParams params =
            apply_variable(spec.base, spec.variable, row.value);
        params.seed = row.seed;
        const Scenario scenario = generate_scenario(params);
        const MarketOutcome fog = run_market(scenario);
        const MarketOutcome baseline = cloud_only_baseline(scenario);

        row.util_fn_total = fog.utilities.fn_total;
        row.util_dso_total = fog.utilities.dso_total;
        row.util_dss_total = fog.utilities.dss_total;
        row.util_dss_baseline = baseline.utilities.dss_total;
        for (double q : fog.utilities.cloud) {
            row.cloud_crbs += q;
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.util_fn_total = nan;
        row.util_dso_total = nan;
        row.util_dss_total = nan;
        row.util_dss_baseline = nan;
        row.cloud_crbs = nan;
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    check_spec(spec);

    const int reps = spec.replications;
    const std::size_t n_points = spec.grid.size() * static_cast<std::size_t>(reps);
    std::vector<SweepRow> rows(n_points);

    // Points are independent; rows land at their (grid, replicate) slot,
    // so the result is identical for any worker count.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < n_points;
             idx = next.fetch_add(1)) {
            const int g = static_cast<int>(idx) / reps;
            const int r = static_cast<int>(idx) % reps;
            rows[idx] = run_point(spec, g, r);
        }
    };

    const int n_workers = std::min<int>(spec.workers, static_cast<int>(n_points));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    return rows;
}

std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    std::string out =
        "variable,value,replicate,seed,util_fn_total,util_dso_total,"
        "util_dss_total,util_dss_baseline,cloud_crbs\n";
    const char* var = variable_name(spec.variable);
    for (const SweepRow& row : rows) {
        out += var;
        out += ',';
        out += format_double(row.value);
        out += ',';
        out += std::to_string(row.replicate);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += format_double(row.util_fn_total);
        out += ',';
        out += format_double(row.util_dso_total);
        out += ',';
        out += format_double(row.util_dss_total);
        out += ',';
        out += format_double(row.util_dss_baseline);
        out += ',';
        out += format_double(row.cloud_crbs);
        out += '\n';
    }
    return out;
}

nlohmann::json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    nlohmann::json j = nlohmann::json::array();
    const char* var = variable_name(spec.variable);
    for (const SweepRow& row : rows) {
        nlohmann::json r = {
            {"variable", var},
            {"value", row.value},
            {"replicate", row.replicate},
            {"seed", row.seed},
            {"util_fn_total", row.util_fn_total},
            {"util_dso_total", row.util_dso_total},
            {"util_dss_total", row.util_dss_total},
            {"util_dss_baseline", row.util_dss_baseline},
            {"cloud_crbs", row.cloud_crbs},
        };
        if (row.failed) {
            r["error"] = row.error;
        }
        j.push_back(std::move(r));
    }
    return j;
}

} // namespace fogsim
