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

#ifndef FOGSIM_AGENTS_HPP
#define FOGSIM_AGENTS_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "fogsim/geometry.hpp"

namespace fogsim {

/// Agent ids ranked most-preferred first. Lists are strict total orders;
/// ties in the ranking key are broken by ascending id at construction.
using PreferenceList = std::vector<int>;

/// Builds a PreferenceList from per-id keys. Larger key = more preferred
/// when descending, smaller key = more preferred otherwise.
inline PreferenceList ranked_by(const std::vector<int>& ids,
                                const std::vector<double>& keys,
                                bool descending)
{
    PreferenceList order = ids;
    std::vector<std::size_t> pos(ids.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) {
            return descending ? keys[a] > keys[b] : keys[a] < keys[b];
        }
        return ids[a] < ids[b];
    });
    for (std::size_t i = 0; i < pos.size(); ++i) {
        order[i] = ids[pos[i]];
    }
    return order;
}

/// Data service subscriber: sources a workload of arrival_rate jobs/ms and
/// buys virtualized computing resource blocks from one operator.
struct DssAgent {
    int id = 0;
    Point position;
    double arrival_rate = 0.0; ///< jobs per ms
    double alpha = 0.0;        ///< revenue weight per unit workload
    double beta = 0.0;         ///< payment weight
    double gamma = 0.0;        ///< delay-cost weight
    PreferenceList dso_pref;   ///< permutation of all DSO ids, best first
};

/// Data service operator: middle tier, prices virtualized blocks and
/// procures physical ones from fog nodes or the remote data center.
struct DsoAgent {
    int id = 0;
    double cloud_unit_cost = 0.0; ///< energy-cost increment per cloud CRB
};

/// Fog node: edge supplier with finite capacity and per-unit rent.
struct FogNodeAgent {
    int id = 0;
    Point position;
    double rent = 0.0;               ///< currency per CRB
    double capacity = 0.0;           ///< CRBs on offer
    std::vector<double> dso_weights; ///< preference weight in [0,1] per DSO
};

} // namespace fogsim

#endif // FOGSIM_AGENTS_HPP
