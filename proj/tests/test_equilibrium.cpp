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

#include "fogsim/equilibrium.hpp"
#include "fogsim/generator.hpp"
#include "support.hpp"

using namespace fogsim;

namespace {

DssAgent make_dss(double lambda, double alpha = 50.0, double beta = 0.01,
                  double gamma = 0.001)
{
    DssAgent dss;
    dss.id = 0;
    dss.arrival_rate = lambda;
    dss.alpha = alpha;
    dss.beta = beta;
    dss.gamma = gamma;
    return dss;
}

constexpr double kQ611 = 60.0 / 11.0; // recurring purchase 5.4545...

} // namespace

TEST_CASE("queueing_cost")
{
    CHECK(queueing_cost(0.5, 0.1, 10.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(queueing_cost(0.0, 0.2, 3.0) == 0.0);
    CHECK(queueing_cost(0.5, 0.1, kQ611) == doctest::Approx(60.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)queueing_cost(0.5, 0.1, 5.0), UnstableQueueError);
    CHECK_THROWS_AS((void)queueing_cost(0.5, 0.1, 4.0), UnstableQueueError);

    // Strictly decreasing in q.
    double prev = queueing_cost(0.5, 0.1, 5.1);
    for (double q = 5.5; q < 50.0; q += 0.5) {
        const double cur = queueing_cost(0.5, 0.1, q);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("network_cost")
{
    CHECK(network_cost(0.02, 5.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(network_cost(0.02, 0.0) == 0.0);
    CHECK(network_cost(0.02, 100.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dss_utility")
{
    const DssAgent dss = make_dss(0.5);
    CHECK(dss_utility(dss, 12.1, kQ611, 60.1) ==
          doctest::Approx(24.2799).epsilon(1e-9));
    CHECK(dss_utility(dss, 123.0, 0.0, 999.0) == 0.0); // opted out
    CHECK(dss_utility(dss, 0.0, 10.0, 10.1) ==
          doctest::Approx(24.9899).epsilon(1e-9));
}

TEST_CASE("optimal_purchase")
{
    CHECK(optimal_purchase(0.5, 0.1, 10.0, 0.01, 0.001) ==
          doctest::Approx(5.5).epsilon(1e-12));
    CHECK(optimal_purchase(0.0, 0.1, 3.0, 0.01, 0.001) == 0.0);
    CHECK(optimal_purchase(0.5, 0.1, 12.1, 0.01, 0.001) ==
          doctest::Approx(kQ611).epsilon(1e-12));
    CHECK_THROWS_AS((void)optimal_purchase(0.5, 0.1, 0.0, 0.01, 0.001),
                    std::domain_error);
    CHECK_THROWS_AS((void)optimal_purchase(0.5, 0.1, -2.0, 0.01, 0.001),
                    std::domain_error);
}

TEST_CASE("optimal_purchase matches direct maximization")
{
    CHECK(test::best_purchase_by_search(0.5, 0.1, 10.0, 0.01, 0.001) ==
          doctest::Approx(5.5).epsilon(1e-6));

    Rng rng(7001);
    double worst_rel = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mu = 0.1;
        const double t_th = 60.0;
        const double lambda = rng.uniform_positive(mu * t_th);
        const double r = 20.0 * (1.0 - rng.uniform());
        const double beta = 1.0 - rng.uniform();
        const double gamma = 1.0 - rng.uniform();
        const double closed = optimal_purchase(lambda, mu, r, beta, gamma);
        const double searched =
            test::best_purchase_by_search(lambda, mu, r, beta, gamma);
        worst_rel = std::max(worst_rel, std::abs(closed - searched) / closed);
    }
    CHECK(worst_rel <= 1e-3);
}

TEST_CASE("utility is locally concave at the closed-form purchase")
{
    Rng rng(7002);
    for (int i = 0; i < 50; ++i) {
        const double mu = 0.1;
        const double lambda = rng.uniform_positive(mu * 60.0);
        const double r = 20.0 * (1.0 - rng.uniform());
        const double beta = 1.0 - rng.uniform();
        const double gamma = 1.0 - rng.uniform();
        const DssAgent dss = make_dss(lambda, 50.0, beta, gamma);

        const double q_star = optimal_purchase(lambda, mu, r, beta, gamma);
        const auto value = [&](double q) {
            return dss_utility(dss, r, q, queueing_cost(lambda, mu, q));
        };
        const double eps = 1e-3 * q_star;
        CHECK(value(q_star + eps) < value(q_star));
        CHECK(value(q_star - eps) < value(q_star));
    }
}

TEST_CASE("min_purchase")
{
    CHECK(min_purchase(0.5, 0.1, 60.0) == doctest::Approx(kQ611).epsilon(1e-12));
    CHECK(min_purchase(0.5, 0.1, 10.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(min_purchase(1e-12, 0.1, 60.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS((void)min_purchase(7.0, 0.1, 60.0), std::domain_error);
    // Queueing delay at the threshold purchase is the tolerance itself.
    CHECK(queueing_cost(0.5, 0.1, min_purchase(0.5, 0.1, 60.0)) ==
          doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("price_cap")
{
    CHECK(price_cap(0.5, 0.1, 60.0, 0.01, 0.001) ==
          doctest::Approx(12.1).epsilon(1e-12));
    CHECK(price_cap(0.5, 0.1, 10.0, 0.3, 0.3) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)price_cap(0.0, 0.1, 60.0, 0.01, 0.001),
                    std::domain_error);
    CHECK_THROWS_AS((void)price_cap(6.0, 0.1, 60.0, 0.01, 0.001),
                    std::domain_error);
}

TEST_CASE("cap, threshold and revenue identities hold across random draws")
{
    Rng rng(7003);
    for (int i = 0; i < 200; ++i) {
        const double mu = 0.02 + 0.18 * rng.uniform();
        const double t_th = 10.0 + 90.0 * rng.uniform();
        const double lambda = mu * t_th * (1e-4 + (1.0 - 2e-4) * rng.uniform());
        const double beta = 1.0 - rng.uniform();
        const double gamma = 1.0 - rng.uniform();

        const double cap = price_cap(lambda, mu, t_th, beta, gamma);
        const double q_min = min_purchase(lambda, mu, t_th);
        CHECK(std::abs(optimal_purchase(lambda, mu, cap, beta, gamma) - q_min) <=
              1e-9 * std::max(1.0, q_min));
        CHECK(std::abs(queueing_cost(lambda, mu, q_min) - t_th) <= 1e-9);

        // Revenue r * q*(r) strictly increases up to the cap, which is
        // why the cap is also the revenue-optimal price.
        double prev = 0.0;
        for (int step = 1; step <= 16; ++step) {
            const double r = cap * step / 16.0;
            const double revenue = r * optimal_purchase(lambda, mu, r, beta, gamma);
            CHECK(revenue > prev);
            prev = revenue;
        }
    }
}

TEST_CASE("subscribe")
{
    Scenario s;
    s.dsos = {{0, 10.0}, {1, 10.0}, {2, 10.0}};
    DssAgent a = make_dss(0.5);
    a.dso_pref = {1, 0, 2};
    DssAgent b = make_dss(0.4);
    b.id = 1;
    b.dso_pref = {1, 0, 2};
    s.dsss = {a, b};

    const Subscription sub = subscribe(s);
    CHECK(sub.dso_of_dss[0] == 1);
    CHECK(sub.dso_of_dss[1] == 1); // same top choice: both land there

    Scenario no_dsos;
    no_dsos.dsss = {make_dss(0.5)};
    no_dsos.dsss[0].dso_pref = {};
    const Subscription none = subscribe(no_dsos);
    CHECK(none.dso_of_dss[0] == Subscription::kUnassigned);
    CHECK(!none.assigned(0));
}

TEST_CASE("set_prices single subscriber at defaults")
{
    Scenario s;
    s.dsos = {{0, 10.0}};
    DssAgent dss = make_dss(0.5);
    dss.dso_pref = {0};
    s.dsss = {dss};

    const Subscription sub = subscribe(s);
    const PricingResult pricing = set_prices(s, sub);
    CHECK(pricing.price[0] == doctest::Approx(12.1).epsilon(1e-12));
    CHECK(pricing.purchase[0] == doctest::Approx(kQ611).epsilon(1e-12));
    CHECK(pricing.participating[0]);
}

TEST_CASE("set_prices uses the tightest cap across subscribers")
{
    Scenario s;
    s.dsos = {{0, 10.0}};
    DssAgent a = make_dss(0.5); // cap 12.1
    a.dso_pref = {0};
    DssAgent b = make_dss(0.5, 50.0, 0.01, 0.01 * 8.0 / 121.0); // cap 8
    b.id = 1;
    b.dso_pref = {0};
    s.dsss = {a, b};

    const PricingResult pricing = set_prices(s, subscribe(s));
    CHECK(pricing.price[0] == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(pricing.purchase[0] ==
          doctest::Approx(optimal_purchase(0.5, 0.1, pricing.price[0], 0.01, 0.001))
              .epsilon(1e-12));
    // The binding subscriber buys exactly its threshold quantity.
    CHECK(pricing.purchase[1] == doctest::Approx(kQ611).epsilon(1e-6));
}

TEST_CASE("set_prices leaves an idle operator at price zero")
{
    Scenario s;
    s.dsos = {{0, 10.0}, {1, 10.0}};
    DssAgent dss = make_dss(0.5);
    dss.dso_pref = {1, 0};
    s.dsss = {dss};

    const PricingResult pricing = set_prices(s, subscribe(s));
    CHECK(pricing.price[0] == 0.0);
    CHECK(pricing.price[1] == doctest::Approx(12.1).epsilon(1e-12));
}

TEST_CASE("set_prices opts out a subscriber that cannot break even")
{
    Scenario s;
    s.dsos = {{0, 10.0}};
    // Tiny revenue weight: payment dominates and utility goes negative.
    DssAgent dss = make_dss(0.5, 0.1, 0.01, 0.001);
    dss.dso_pref = {0};
    s.dsss = {dss};

    const PricingResult pricing = set_prices(s, subscribe(s));
    CHECK(!pricing.participating[0]);
    CHECK(pricing.purchase[0] == 0.0);
}

TEST_CASE("worst-case network delay covers nodes and the data center")
{
    Scenario s;
    s.theta = 0.02;
    s.cloud_distance = 100.0;
    CHECK(worst_case_network_delay(s) == doctest::Approx(2.0));

    DssAgent dss = make_dss(0.5);
    dss.position = {0.0, 0.0};
    s.dsss = {dss};
    FogNodeAgent fn;
    fn.position = {150.0, 0.0}; // farther than the data center
    fn.dso_weights = {};
    s.fns = {fn};
    CHECK(worst_case_network_delay(s) == doctest::Approx(3.0));
}

TEST_CASE("served subscribers never exceed the delay tolerance")
{
    GeneratorParams params;
    params.n_dss = 60;
    params.n_fn = 10;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        params.seed = seed;
        const Scenario s = generate_scenario(params);
        const PricingResult pricing = set_prices(s, subscribe(s));
        for (std::size_t j = 0; j < s.dsss.size(); ++j) {
            if (!pricing.participating[j]) {
                continue;
            }
            const double o = queueing_cost(s.dsss[j].arrival_rate, s.mu,
                                           pricing.purchase[j]);
            CHECK(o <= s.t_th + 1e-9);
        }
    }
}
