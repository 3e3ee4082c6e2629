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

#include "fogsim/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fogsim {

double queueing_cost(double lambda, double mu, double q)
{
    if (lambda < 0.0) {
        throw std::domain_error("queueing_cost: negative arrival rate");
    }
    if (lambda == 0.0) {
        if (q <= 0.0) {
            throw UnstableQueueError("queueing_cost: q must be positive");
        }
        return 0.0;
    }
    if (q * mu <= lambda) {
        throw UnstableQueueError(
            "queueing_cost: unstable queue, q <= lambda/mu (q=" +
            std::to_string(q) + ", lambda=" + std::to_string(lambda) +
            ", mu=" + std::to_string(mu) + ")");
    }
    return lambda / (mu - lambda / q);
}

double network_cost(double theta, double l)
{
    if (l < 0.0) {
        throw std::domain_error("network_cost: negative distance");
    }
    return theta * l;
}

double dss_utility(const DssAgent& dss, double price, double q, double t_total)
{
    if (q == 0.0) {
        return 0.0; // opted out: no service, no terms
    }
    if (q < 0.0) {
        throw std::domain_error("dss_utility: negative purchase");
    }
    return dss.alpha * dss.arrival_rate - dss.beta * q * price - dss.gamma * t_total;
}

double optimal_purchase(double lambda, double mu, double price,
                        double beta, double gamma)
{
    if (price <= 0.0) {
        throw std::domain_error("optimal_purchase: price must be positive");
    }
    if (lambda < 0.0 || mu <= 0.0 || beta <= 0.0 || gamma <= 0.0) {
        throw std::domain_error("optimal_purchase: invalid parameters");
    }
    if (lambda == 0.0) {
        return 0.0;
    }
    return lambda / (mu * std::sqrt(price * beta / gamma)) + lambda / mu;
}

double min_purchase(double lambda, double mu, double t_th)
{
    if (lambda < 0.0 || mu <= 0.0 || t_th <= 0.0) {
        throw std::domain_error("min_purchase: invalid parameters");
    }
    if (!(mu * t_th > lambda)) {
        throw std::domain_error(
            "min_purchase: delay bound unsatisfiable, mu*t_th <= lambda");
    }
    return lambda * t_th / (mu * t_th - lambda);
}

double price_cap(double lambda, double mu, double t_th, double beta, double gamma)
{
    if (lambda <= 0.0) {
        throw std::domain_error("price_cap: arrival rate must be positive");
    }
    if (mu <= 0.0 || t_th <= 0.0 || beta <= 0.0 || gamma <= 0.0) {
        throw std::domain_error("price_cap: invalid parameters");
    }
    if (!(mu * t_th > lambda)) {
        throw std::domain_error(
            "price_cap: delay bound unsatisfiable, mu*t_th <= lambda");
    }
    const double slack = (mu * t_th - lambda) / lambda;
    return (gamma / beta) * slack * slack;
}

Subscription subscribe(const Scenario& s)
{
    Subscription sub;
    sub.dso_of_dss.assign(s.dsss.size(), Subscription::kUnassigned);
    if (s.dsos.empty()) {
        return sub;
    }
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        if (!s.dsss[j].dso_pref.empty()) {
            sub.dso_of_dss[j] = s.dsss[j].dso_pref.front();
        }
    }
    return sub;
}

double worst_case_network_delay(const Scenario& s)
{
    // Before matching, a subscriber may end up on any node or on the
    // data center, so the bound covers both.
    double worst = s.cloud_distance;
    for (const DssAgent& dss : s.dsss) {
        for (const FogNodeAgent& fn : s.fns) {
            worst = std::max(worst, distance(dss.position, fn.position));
        }
    }
    return network_cost(s.theta, worst);
}

PricingResult set_prices(const Scenario& s, const Subscription& sub)
{
    PricingResult result;
    result.price.assign(s.dsos.size(), 0.0);
    result.purchase.assign(s.dsss.size(), 0.0);
    result.participating.assign(s.dsss.size(), false);

    // Revenue r*q*(r) is increasing in r, so each operator prices at the
    // tightest cap among its subscribers: any higher and somebody's delay
    // bound becomes unsatisfiable.
    std::vector<double> cap(s.dsos.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> serves(s.dsos.size(), false);
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const int i = sub.dso_of_dss[j];
        if (i == Subscription::kUnassigned) {
            continue;
        }
        const DssAgent& dss = s.dsss[j];
        cap[i] = std::min(cap[i], price_cap(dss.arrival_rate, s.mu, s.t_th,
                                            dss.beta, dss.gamma));
        serves[i] = true;
    }
    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        result.price[i] = serves[i] ? cap[i] : 0.0;
    }

    const double worst_h = worst_case_network_delay(s);

    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const int i = sub.dso_of_dss[j];
        if (i == Subscription::kUnassigned) {
            continue;
        }
        const DssAgent& dss = s.dsss[j];
        const double q = optimal_purchase(dss.arrival_rate, s.mu,
                                          result.price[i], dss.beta, dss.gamma);
        const double o = queueing_cost(dss.arrival_rate, s.mu, q);
        const double u = dss_utility(dss, result.price[i], q, o + worst_h);
        if (u >= 0.0) {
            result.purchase[j] = q;
            result.participating[j] = true;
        }
    }

    return result;
}

} // namespace fogsim
