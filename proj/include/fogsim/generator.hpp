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

#ifndef FOGSIM_GENERATOR_HPP
#define FOGSIM_GENERATOR_HPP

#include <cstdint>

#include "fogsim/scenario.hpp"

namespace fogsim {

/// Knobs for random scenario generation. Defaults are the reference
/// configuration: 120 subscribers, 4 operators and 20 fog nodes placed
/// uniformly in a 10 km disk; mu = 0.1 /ms per CRB, 60 ms tolerance,
/// arrival rates averaging 0.5 jobs/ms, rents in (0,10), capacities in
/// (0,100), utility weights 50 / 0.01 / 0.001, 50 km/ms transmission
/// speed (theta = 0.02 ms/km).
struct GeneratorParams {
    int n_dss = 120;
    int n_dso = 4;
    int n_fn = 20;
    double district_diameter = 10.0; ///< km
    double mu = 0.1;
    double t_th = 60.0;
    double lambda_mean = 0.5;
    double rent_lo = 0.0;
    double rent_hi = 10.0;
    double capacity_lo = 0.0;
    double capacity_hi = 100.0;
    double alpha = 50.0;
    double beta = 0.01;
    double gamma = 0.001;
    double theta = 0.02;
    double kappa = 0.1;
    double cloud_distance = 100.0;
    double cloud_unit_cost = 10.0;
    std::uint64_t seed = 0;
};

struct GeneratorStats {
    int clipped_lambdas = 0; ///< arrival rates clipped to keep mu*t_th > lambda
};

/// Draws a scenario from the given parameters. Arrival rates are uniform
/// on (0, 2*lambda_mean), clipped below mu*t_th so every subscriber's
/// delay bound stays satisfiable; positions are uniform on the disk;
/// preference weights uniform on [0,1]; subscriber preference lists are
/// uniform random permutations. Identical parameters (seed included)
/// produce identical scenarios on every platform. Throws
/// std::invalid_argument on invalid parameters.
Scenario generate_scenario(const GeneratorParams& params);
Scenario generate_scenario(const GeneratorParams& params, GeneratorStats& stats);

/// Seed for one sweep point: the base seed mixed with grid index and
/// replicate index, so adding grid points or replicates never changes
/// the seed of existing ones.
std::uint64_t replicate_seed(std::uint64_t base_seed, int grid_index, int replicate);

} // namespace fogsim

#endif // FOGSIM_GENERATOR_HPP
