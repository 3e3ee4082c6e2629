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

#include "fogsim/generator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fogsim/rng.hpp"

namespace fogsim {

namespace {

// Keep generated arrival rates strictly inside the feasible region; at
// the boundary the required purchase diverges.
constexpr double kLambdaClipFactor = 0.999;

void check_params(const GeneratorParams& p)
{
    auto fail = [](const char* what) {
        throw std::invalid_argument(std::string("generate_scenario: ") + what);
    };
    if (p.n_dss < 0 || p.n_dso < 0 || p.n_fn < 0) {
        fail("agent counts must be non-negative");
    }
    if (!(p.district_diameter >= 0.0)) {
        fail("district_diameter must be non-negative");
    }
    if (!(p.mu > 0.0)) {
        fail("mu must be positive");
    }
    if (!(p.t_th > 0.0)) {
        fail("t_th must be positive");
    }
    if (!(p.lambda_mean > 0.0)) {
        fail("lambda_mean must be positive");
    }
    if (!(p.rent_lo >= 0.0) || !(p.rent_hi >= p.rent_lo)) {
        fail("rent range invalid");
    }
    if (!(p.capacity_lo >= 0.0) || !(p.capacity_hi >= p.capacity_lo)) {
        fail("capacity range invalid");
    }
    if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.gamma > 0.0)) {
        fail("utility weights must be positive");
    }
    if (!(p.theta >= 0.0) || !(p.kappa >= 0.0)) {
        fail("theta and kappa must be non-negative");
    }
    if (!(p.cloud_distance >= 0.0)) {
        fail("cloud_distance must be non-negative");
    }
    if (!(p.cloud_unit_cost >= 0.0)) {
        fail("cloud_unit_cost must be non-negative");
    }
}

Point disk_point(Rng& rng, double diameter)
{
    const double radius = diameter / 2.0;
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace

Scenario generate_scenario(const GeneratorParams& params)
{
    GeneratorStats stats;
    return generate_scenario(params, stats);
}

Scenario generate_scenario(const GeneratorParams& params, GeneratorStats& stats)
{
    check_params(params);
    stats = GeneratorStats{};

    Rng rng(params.seed);
    Scenario s;
    s.mu = params.mu;
    s.t_th = params.t_th;
    s.theta = params.theta;
    s.kappa = params.kappa;
    s.cloud_distance = params.cloud_distance;
    s.seed = params.seed;

    const double lambda_clip = kLambdaClipFactor * params.mu * params.t_th;

    s.dsss.reserve(params.n_dss);
    for (int j = 0; j < params.n_dss; ++j) {
        DssAgent dss;
        dss.id = j;
        dss.position = disk_point(rng, params.district_diameter);
        dss.arrival_rate = rng.uniform_positive(2.0 * params.lambda_mean);
        if (dss.arrival_rate > lambda_clip) {
            dss.arrival_rate = lambda_clip;
            ++stats.clipped_lambdas;
        }
        dss.alpha = params.alpha;
        dss.beta = params.beta;
        dss.gamma = params.gamma;
        dss.dso_pref.resize(params.n_dso);
        std::iota(dss.dso_pref.begin(), dss.dso_pref.end(), 0);
        rng.shuffle(dss.dso_pref);
        s.dsss.push_back(std::move(dss));
    }

    s.dsos.reserve(params.n_dso);
    for (int i = 0; i < params.n_dso; ++i) {
        s.dsos.push_back(DsoAgent{i, params.cloud_unit_cost});
    }

    s.fns.reserve(params.n_fn);
    for (int k = 0; k < params.n_fn; ++k) {
        FogNodeAgent fn;
        fn.id = k;
        fn.position = disk_point(rng, params.district_diameter);
        fn.rent = rng.uniform(params.rent_lo, params.rent_hi);
        fn.capacity = rng.uniform(params.capacity_lo, params.capacity_hi);
        fn.dso_weights.resize(params.n_dso);
        for (int i = 0; i < params.n_dso; ++i) {
            fn.dso_weights[i] = rng.uniform();
        }
        s.fns.push_back(std::move(fn));
    }

    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "generate_scenario produced an invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v;
        }
        throw ScenarioError(msg);
    }
    return s;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, int grid_index, int replicate)
{
    const std::uint64_t g = splitmix64(
        base_seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(grid_index) + 1)));
    return splitmix64(
        g ^ (0xBF58476D1CE4E5B9ULL * (static_cast<std::uint64_t>(replicate) + 1)));
}

} // namespace fogsim
