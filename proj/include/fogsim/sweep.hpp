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

#ifndef FOGSIM_SWEEP_HPP
#define FOGSIM_SWEEP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fogsim/generator.hpp"

namespace fogsim {

enum class SweepVariable { n_dss, lambda_mean, mu, t_th, n_fn };

const char* variable_name(SweepVariable v);
std::optional<SweepVariable> parse_variable(std::string_view name);

/// One experiment: a grid over a single generator parameter, several
/// seeded replicates per point, fog market and cloud-only baseline side
/// by side.
struct SweepSpec {
    SweepVariable variable = SweepVariable::n_dss;
    std::vector<double> grid; ///< non-empty, strictly increasing
    int replications = 30;
    GeneratorParams base;
    int workers = 1; ///< worker threads; output is identical for any count
};

struct SweepRow {
    double value = 0.0;
    int replicate = 0;
    std::uint64_t seed = 0;
    double util_fn_total = 0.0;
    double util_dso_total = 0.0;
    double util_dss_total = 0.0;
    double util_dss_baseline = 0.0;
    double cloud_crbs = 0.0;
    bool failed = false;      ///< generation/run error; utilities are NaN
    std::string error;
};

/// Runs every (grid value, replicate) point. Points are independent and
/// may run on several threads; rows come back ordered by (grid index,
/// replicate) regardless of worker count. A failing point is reported in
/// its row and does not abort the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Shortest round-trip decimal form of a double; locale-independent.
std::string format_double(double v);

std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

} // namespace fogsim

#endif // FOGSIM_SWEEP_HPP
