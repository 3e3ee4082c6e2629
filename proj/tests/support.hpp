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

#ifndef FOGSIM_TESTS_SUPPORT_HPP
#define FOGSIM_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "fogsim/matching.hpp"
#include "fogsim/rng.hpp"

namespace fogsim::test {

/// Numeric maximizer used as the independent check on the closed-form
/// purchase: expands a bracket past the peak of the (unimodal) utility,
/// then golden-section search. Never consults the closed form.
inline double golden_section_argmax(const std::function<double(double)>& f,
                                    double lo, double hi, int iters = 220)
{
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return (a + b) / 2.0;
}

/// Maximizes subscriber utility over the purchase quantity by direct
/// evaluation of revenue minus payment minus queueing-delay cost.
inline double best_purchase_by_search(double lambda, double mu, double price,
                                      double beta, double gamma,
                                      double alpha = 50.0)
{
    const double q_floor = lambda / mu;
    const auto utility = [=](double q) {
        const double delay = lambda / (mu - lambda / q);
        return alpha * lambda - beta * q * price - gamma * delay;
    };

    // Geometric expansion until the utility turns down: brackets the peak.
    const double step0 = q_floor > 0.0 ? q_floor * 1e-12 : 1e-12;
    double step = step0;
    double prev = utility(q_floor + step);
    while (true) {
        const double next = utility(q_floor + 2.0 * step);
        if (next < prev) {
            break;
        }
        prev = next;
        step *= 2.0;
    }
    return golden_section_argmax(utility, q_floor + step0 / 2.0,
                                 q_floor + 4.0 * step);
}

/// Random matching instance shaped like one of the two market layers:
/// strict preference lists derived from random keys, quantities uniform
/// on (0, hi].
struct RandomInstance {
    MatchSide proposers;
    MatchSide acceptors;
};

inline RandomInstance random_instance(Rng& rng, int n_proposers, int n_acceptors,
                                      double qty_hi = 20.0)
{
    RandomInstance inst;
    std::vector<int> prop_ids(n_proposers);
    std::vector<int> acc_ids(n_acceptors);
    for (int p = 0; p < n_proposers; ++p) {
        prop_ids[p] = p;
    }
    for (int a = 0; a < n_acceptors; ++a) {
        acc_ids[a] = a;
    }

    inst.proposers.ids = prop_ids;
    inst.acceptors.ids = acc_ids;
    for (int p = 0; p < n_proposers; ++p) {
        inst.proposers.quantity.push_back(qty_hi * (1.0 - rng.uniform()));
        std::vector<double> keys(n_acceptors);
        for (auto& k : keys) {
            k = rng.uniform();
        }
        inst.proposers.prefs.push_back(ranked_by(acc_ids, keys, true));
    }
    for (int a = 0; a < n_acceptors; ++a) {
        inst.acceptors.quantity.push_back(qty_hi * (1.0 - rng.uniform()));
        std::vector<double> keys(n_proposers);
        for (auto& k : keys) {
            k = rng.uniform();
        }
        inst.acceptors.prefs.push_back(ranked_by(prop_ids, keys, false));
    }
    return inst;
}

} // namespace fogsim::test

#endif // FOGSIM_TESTS_SUPPORT_HPP
