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

#ifndef FOGSIM_ALLOCATION_HPP
#define FOGSIM_ALLOCATION_HPP

#include <climits>
#include <map>
#include <stdexcept>
#include <utility>

namespace fogsim {

/// Quantities below this threshold are treated as zero everywhere.
inline constexpr double kQuantityTol = 1e-9;

/// Sparse matrix of continuous CRB quantities between two agent tiers.
/// Rows and columns are agent ids; orientation is documented at each
/// use site. `cloud` carries the data-center fallback per row and is
/// populated only for the DSO-FN layer.
struct Allocation {
    std::map<std::pair<int, int>, double> entries;
    std::map<int, double> cloud;

    /// Accumulates quantity into (row, col). Negative quantities are
    /// rejected; totals that stay below kQuantityTol are not stored.
    void add(int row, int col, double quantity)
    {
        if (quantity < -kQuantityTol) {
            throw std::invalid_argument("Allocation: negative quantity");
        }
        if (quantity <= kQuantityTol) {
            return;
        }
        entries[{row, col}] += quantity;
    }

    void set(int row, int col, double quantity)
    {
        if (quantity < -kQuantityTol) {
            throw std::invalid_argument("Allocation: negative quantity");
        }
        if (quantity <= kQuantityTol) {
            entries.erase({row, col});
        } else {
            entries[{row, col}] = quantity;
        }
    }

    double at(int row, int col) const
    {
        auto it = entries.find({row, col});
        return it == entries.end() ? 0.0 : it->second;
    }

    double row_total(int row) const
    {
        double total = 0.0;
        for (auto it = entries.lower_bound({row, INT_MIN});
             it != entries.end() && it->first.first == row; ++it) {
            total += it->second;
        }
        return total;
    }

    double col_total(int col) const
    {
        double total = 0.0;
        for (const auto& [key, q] : entries) {
            if (key.second == col) {
                total += q;
            }
        }
        return total;
    }

    double cloud_at(int row) const
    {
        auto it = cloud.find(row);
        return it == cloud.end() ? 0.0 : it->second;
    }

    double total() const
    {
        double t = 0.0;
        for (const auto& [key, q] : entries) {
            (void)key;
            t += q;
        }
        return t;
    }

    bool empty() const { return entries.empty(); }

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

} // namespace fogsim

#endif // FOGSIM_ALLOCATION_HPP
