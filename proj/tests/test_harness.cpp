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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fogsim/generator.hpp"
#include "fogsim/market.hpp"
#include "fogsim/sweep.hpp"

using namespace fogsim;

TEST_CASE("generation is deterministic in the seed")
{
    GeneratorParams params;
    params.n_dss = 25;
    params.n_fn = 9;
    params.seed = 4242;
    const Scenario a = generate_scenario(params);
    const Scenario b = generate_scenario(params);
    CHECK(scenario_to_json(a) == scenario_to_json(b));
    CHECK(scenario_to_json(a).dump() == scenario_to_json(b).dump());

    params.seed = 4243;
    const Scenario c = generate_scenario(params);
    CHECK(scenario_to_json(a) != scenario_to_json(c));
}

TEST_CASE("generated values respect the configured ranges")
{
    GeneratorParams params;
    params.seed = 99;
    const Scenario s = generate_scenario(params);
    const double radius = params.district_diameter / 2.0;
    for (const DssAgent& dss : s.dsss) {
        CHECK(dss.arrival_rate > 0.0);
        CHECK(dss.arrival_rate < 2.0 * params.lambda_mean);
        CHECK(std::hypot(dss.position.x, dss.position.y) <= radius + 1e-12);
        CHECK(dss.alpha == 50.0);
    }
    for (const FogNodeAgent& fn : s.fns) {
        CHECK(fn.rent >= 0.0);
        CHECK(fn.rent < 10.0);
        CHECK(fn.capacity >= 0.0);
        CHECK(fn.capacity < 100.0);
        CHECK(std::hypot(fn.position.x, fn.position.y) <= radius + 1e-12);
    }
}

TEST_CASE("empty-demand scenario is valid")
{
    GeneratorParams params;
    params.n_dss = 0;
    params.seed = 5;
    const Scenario s = generate_scenario(params);
    CHECK(s.dsss.empty());
    CHECK(validate_scenario(s).empty());
    const MarketOutcome outcome = run_market(s);
    CHECK(outcome.utilities.dss_total == 0.0);
}

TEST_CASE("arrival rates are clipped against the feasibility bound")
{
    GeneratorParams params;
    params.n_dss = 200;
    params.n_fn = 0;
    params.lambda_mean = 5.0; // 2*mean exceeds mu*t_th = 6
    params.seed = 12;
    GeneratorStats stats;
    const Scenario s = generate_scenario(params, stats);
    CHECK(stats.clipped_lambdas > 0);
    CHECK(validate_scenario(s).empty());
}

TEST_CASE("replicate seeds are stable under grid growth")
{
    const std::uint64_t base = 777;
    CHECK(replicate_seed(base, 0, 0) == replicate_seed(base, 0, 0));
    CHECK(replicate_seed(base, 0, 0) != replicate_seed(base, 0, 1));
    CHECK(replicate_seed(base, 0, 0) != replicate_seed(base, 1, 0));

    std::set<std::uint64_t> seen;
    for (int g = 0; g < 20; ++g) {
        for (int r = 0; r < 20; ++r) {
            seen.insert(replicate_seed(base, g, r));
        }
    }
    CHECK(seen.size() == 400);
}

TEST_CASE("a single-point sweep equals a direct market run")
{
    SweepSpec spec;
    spec.variable = SweepVariable::n_dss;
    spec.grid = {15.0};
    spec.replications = 1;
    spec.base.n_fn = 6;
    spec.base.seed = 31;

    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);

    GeneratorParams params = spec.base;
    params.n_dss = 15;
    params.seed = replicate_seed(31, 0, 0);
    const Scenario s = generate_scenario(params);
    const MarketOutcome fog = run_market(s);
    const MarketOutcome baseline = cloud_only_baseline(s);

    CHECK(rows[0].seed == params.seed);
    CHECK(rows[0].util_fn_total == fog.utilities.fn_total);
    CHECK(rows[0].util_dso_total == fog.utilities.dso_total);
    CHECK(rows[0].util_dss_total == fog.utilities.dss_total);
    CHECK(rows[0].util_dss_baseline == baseline.utilities.dss_total);
}

TEST_CASE("csv schema and row count")
{
    SweepSpec spec;
    spec.variable = SweepVariable::n_fn;
    spec.grid = {2.0, 4.0};
    spec.replications = 3;
    spec.base.n_dss = 10;
    spec.base.seed = 8;

    const auto rows = run_sweep(spec);
    const std::string csv = sweep_to_csv(spec, rows);
    CHECK(csv.rfind("variable,value,replicate,seed,util_fn_total,util_dso_total,"
                    "util_dss_total,util_dss_baseline,cloud_crbs\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
    CHECK(csv.find("n_fn,2,") != std::string::npos);
}

TEST_CASE("sweep output is identical across worker counts")
{
    SweepSpec spec;
    spec.variable = SweepVariable::n_dss;
    spec.grid = {5.0, 10.0, 15.0};
    spec.replications = 4;
    spec.base.n_fn = 4;
    spec.base.seed = 1234;

    spec.workers = 1;
    const std::string serial = sweep_to_csv(spec, run_sweep(spec));
    spec.workers = 4;
    const std::string parallel = sweep_to_csv(spec, run_sweep(spec));
    CHECK(serial == parallel);
}

TEST_CASE("a failing point reports its error and the sweep continues")
{
    SweepSpec spec;
    spec.variable = SweepVariable::lambda_mean;
    spec.grid = {-1.0, 0.5}; // first point is an invalid parameter
    spec.replications = 1;
    spec.base.n_dss = 5;
    spec.base.n_fn = 2;

    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].failed);
    CHECK(std::isnan(rows[0].util_fn_total));
    CHECK(!rows[1].failed);
    CHECK(std::isfinite(rows[1].util_dss_total));

    const std::string csv = sweep_to_csv(spec, rows);
    CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("sweep spec validation")
{
    SweepSpec spec;
    spec.grid = {};
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
    spec.grid = {2.0, 1.0};
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
    spec.grid = {1.0};
    spec.replications = 0;
    CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
}

TEST_CASE("variable names round-trip")
{
    for (SweepVariable v :
         {SweepVariable::n_dss, SweepVariable::lambda_mean, SweepVariable::mu,
          SweepVariable::t_th, SweepVariable::n_fn}) {
        CHECK(parse_variable(variable_name(v)) == v);
    }
    CHECK(!parse_variable("bogus").has_value());
}
