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

#ifndef FOGSIM_EQUILIBRIUM_HPP
#define FOGSIM_EQUILIBRIUM_HPP

#include <stdexcept>
#include <vector>

#include "fogsim/scenario.hpp"

namespace fogsim {

/// Thrown when a queue is asked to serve more load than its capacity:
/// stability requires q > lambda / mu.
class UnstableQueueError : public std::domain_error {
public:
    explicit UnstableQueueError(const std::string& what) : std::domain_error(what) {}
};

/// Service delay split into its two components (ms).
struct DelayBreakdown {
    double queueing = 0.0;
    double network = 0.0;

    double total() const { return queueing + network; }
};

/// Expected queueing delay (ms) when a workload of `lambda` jobs/ms is
/// served by `q` CRBs of rate `mu`: lambda / (mu - lambda/q). Strictly
/// decreasing in q. Throws UnstableQueueError when q <= lambda/mu.
double queueing_cost(double lambda, double mu, double q);

/// Network delay (ms) over `l` km at `theta` ms/km.
double network_cost(double theta, double l);

/// Subscriber utility: alpha*lambda - beta*q*r - gamma*t. A subscriber
/// that buys nothing (q == 0) is opted out and scores 0.
double dss_utility(const DssAgent& dss, double price, double q, double t_total);

/// The purchase quantity maximizing subscriber utility at a given price:
/// lambda / (mu * sqrt(price*beta/gamma)) + lambda / mu. Domain error for
/// price <= 0.
double optimal_purchase(double lambda, double mu, double price,
                        double beta, double gamma);

/// Smallest purchase meeting the delay tolerance: lambda*t_th /
/// (mu*t_th - lambda). queueing_cost at this quantity equals t_th
/// exactly. Domain error when mu*t_th <= lambda.
double min_purchase(double lambda, double mu, double t_th);

/// Highest price at which the subscriber's optimal purchase still meets
/// the delay tolerance: (gamma/beta) * ((mu*t_th - lambda)/lambda)^2.
/// optimal_purchase at this price equals min_purchase. Revenue is
/// increasing in price, so this cap is also the revenue-optimal price.
/// Domain error when lambda == 0 or mu*t_th <= lambda.
double price_cap(double lambda, double mu, double t_th,
                 double beta, double gamma);

/// Per-DSS operator assignment. kUnassigned when the DSS has no operator
/// (empty DSO list).
struct Subscription {
    static constexpr int kUnassigned = -1;

    std::vector<int> dso_of_dss;

    bool assigned(std::size_t dss_index) const
    {
        return dso_of_dss[dss_index] != kUnassigned;
    }
};

/// Assigns every DSS to the top-ranked operator on its preference list.
/// Operators have unlimited virtual capacity, so assignments never
/// conflict. Deterministic.
Subscription subscribe(const Scenario& s);

struct PricingResult {
    std::vector<double> price;       ///< per DSO; 0 when serving nobody
    std::vector<double> purchase;    ///< per DSS; 0 when opted out
    std::vector<bool> participating; ///< per DSS
};

/// Leader pricing plus follower best response.
///
/// Each operator charges the minimum of its subscribers' price caps, so
/// every served subscriber's delay bound stays satisfiable; each
/// subscriber then buys its optimal quantity at that price. A subscriber
/// whose utility would be negative even before matching fixes the actual
/// serving distance (network delay bounded by the worst distance any
/// server could have, data center included) opts out with q = 0.
PricingResult set_prices(const Scenario& s, const Subscription& sub);

/// Upper bound on any subscriber's network delay in this scenario: theta
/// times the larger of the worst FN-DSS distance and the cloud distance.
double worst_case_network_delay(const Scenario& s);

} // namespace fogsim

#endif // FOGSIM_EQUILIBRIUM_HPP
