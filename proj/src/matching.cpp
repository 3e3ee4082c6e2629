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

#include "fogsim/matching.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "fogsim/geometry.hpp"

namespace fogsim {

namespace {

std::unordered_map<int, std::size_t> index_by_id(const std::vector<int>& ids)
{
    std::unordered_map<int, std::size_t> index;
    index.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!index.emplace(ids[i], i).second) {
            throw std::invalid_argument("matching: duplicate agent id");
        }
    }
    return index;
}

// rank[agent][opponent] = position in the agent's list; list length if absent.
std::vector<std::vector<std::size_t>> rank_table(
    const MatchSide& side, const std::unordered_map<int, std::size_t>& opp_index,
    std::size_t opp_count)
{
    std::vector<std::vector<std::size_t>> rank(side.size());
    for (std::size_t a = 0; a < side.size(); ++a) {
        rank[a].assign(opp_count, side.prefs[a].size());
        for (std::size_t pos = 0; pos < side.prefs[a].size(); ++pos) {
            auto it = opp_index.find(side.prefs[a][pos]);
            if (it == opp_index.end()) {
                throw std::invalid_argument(
                    "matching: preference list names an unknown agent");
            }
            rank[a][it->second] = pos;
        }
    }
    return rank;
}

} // namespace

MatchResult run_matching(const MatchSide& proposers, const MatchSide& acceptors)
{
    const std::size_t np = proposers.size();
    const std::size_t na = acceptors.size();
    MatchResult result;
    if (np == 0 || na == 0) {
        return result;
    }

    const auto prop_index = index_by_id(proposers.ids);
    const auto acc_index = index_by_id(acceptors.ids);
    const auto acc_rank = rank_table(acceptors, prop_index, np);

    // Proposer preference lists as acceptor positions.
    std::vector<std::vector<std::size_t>> prop_lists(np);
    for (std::size_t p = 0; p < np; ++p) {
        prop_lists[p].reserve(proposers.prefs[p].size());
        for (int id : proposers.prefs[p]) {
            auto it = acc_index.find(id);
            if (it == acc_index.end()) {
                throw std::invalid_argument(
                    "matching: preference list names an unknown agent");
            }
            prop_lists[p].push_back(it->second);
        }
    }

    std::vector<double> supply = proposers.quantity;
    std::vector<std::size_t> pointer(np, 0);
    std::vector<bool> flag(np, true); // initial hold: round one proposes in place
    std::vector<bool> exhausted(np, false);
    for (std::size_t p = 0; p < np; ++p) {
        if (supply[p] < 0.0) {
            throw std::invalid_argument("matching: negative supply");
        }
        exhausted[p] = prop_lists[p].empty();
    }
    for (double d : acceptors.quantity) {
        if (d < 0.0) {
            throw std::invalid_argument("matching: negative demand");
        }
    }

    // retained[a][p]: quantity acceptor a currently holds from proposer p.
    std::vector<std::map<std::size_t, double>> retained(na);

    // Evaluates one batch of offers (proposer -> acceptor, full remaining
    // quantity). Each addressed acceptor reconsiders everything it holds
    // together with the new offers and keeps the best-ranked quantity up
    // to its demand. Proposers whose held quantity shrank get their flag
    // set; they re-propose at their held pointer within the same round
    // (the pointed acceptor may have room for the returned quantity).
    const auto evaluate =
        [&](const std::vector<std::size_t>& offer_to,
            const std::vector<double>& offer_qty,
            const std::vector<std::size_t>& offer_row) {
            for (std::size_t a = 0; a < na; ++a) {
                std::map<std::size_t, double> pool = retained[a];
                bool has_new = false;
                for (std::size_t p = 0; p < np; ++p) {
                    if (offer_to[p] == a) {
                        pool[p] += offer_qty[p];
                        has_new = true;
                    }
                }
                if (!has_new) {
                    continue;
                }

                std::vector<std::size_t> order;
                order.reserve(pool.size());
                for (const auto& [p, q] : pool) {
                    (void)q;
                    order.push_back(p);
                }
                std::sort(order.begin(), order.end(),
                          [&](std::size_t x, std::size_t y) {
                              if (acc_rank[a][x] != acc_rank[a][y]) {
                                  return acc_rank[a][x] < acc_rank[a][y];
                              }
                              return proposers.ids[x] < proposers.ids[y];
                          });

                double room = acceptors.quantity[a];
                std::map<std::size_t, double> kept;
                for (std::size_t p : order) {
                    const double take = std::min(pool[p], room);
                    if (take > kQuantityTol) {
                        kept[p] = take;
                    }
                    room -= take;
                    if (room <= kQuantityTol) {
                        room = 0.0;
                    }
                }

                for (std::size_t p : order) {
                    const double old_held = [&] {
                        auto it = retained[a].find(p);
                        return it == retained[a].end() ? 0.0 : it->second;
                    }();
                    const double now_held = [&] {
                        auto it = kept.find(p);
                        return it == kept.end() ? 0.0 : it->second;
                    }();
                    const double offered = offer_to[p] == a ? offer_qty[p] : 0.0;

                    if (now_held < old_held - kQuantityTol) {
                        // Displaced: the quantity returns to the proposer
                        // for an in-round re-proposal.
                        supply[p] += old_held - now_held;
                        flag[p] = true;
                        if (offered > 0.0) {
                            result.trace[offer_row[p]].rejected = offered;
                        }
                    } else if (offered > 0.0) {
                        double accepted =
                            std::clamp(now_held - old_held, 0.0, offered);
                        if (accepted <= kQuantityTol) {
                            accepted = 0.0;
                        }
                        supply[p] -= accepted;
                        if (supply[p] < kQuantityTol) {
                            supply[p] = 0.0;
                        }
                        result.trace[offer_row[p]].accepted = accepted;
                        result.trace[offer_row[p]].rejected = offered - accepted;
                    }
                }
                retained[a] = std::move(kept);
            }
        };

    while (true) {
        // Advance wave: every proposer with unallocated quantity moves
        // its pointer forward (held on the opening round) and offers its
        // full remaining quantity at the pointed acceptor.
        std::vector<std::size_t> offer_to(np, na); // na = no offer
        std::vector<double> offer_qty(np, 0.0);
        std::vector<std::size_t> offer_row(np, 0);
        bool any_offer = false;
        for (std::size_t p = 0; p < np; ++p) {
            if (exhausted[p] || supply[p] <= kQuantityTol) {
                continue;
            }
            if (!flag[p]) {
                ++pointer[p];
                if (pointer[p] >= prop_lists[p].size()) {
                    exhausted[p] = true;
                    continue;
                }
            }
            const std::size_t a = prop_lists[p][pointer[p]];
            offer_to[p] = a;
            offer_qty[p] = supply[p];
            any_offer = true;

            result.trace.push_back({result.rounds + 1,
                                    proposers.ids[p],
                                    acceptors.ids[a],
                                    supply[p],
                                    0.0,
                                    0.0,
                                    flag[p],
                                    static_cast<int>(pointer[p])});
            offer_row[p] = result.trace.size() - 1;
            flag[p] = false;
        }
        if (!any_offer) {
            break;
        }
        ++result.rounds;
        evaluate(offer_to, offer_qty, offer_row);

        // Displacement cascade: returned quantity re-proposes at the
        // proposer's held pointer until nothing is displaced anymore.
        // Pointers do not move here, so the round bound stays at one
        // advance wave per round.
        int cascade_guard = 0;
        while (true) {
            std::vector<std::size_t> re_to(np, na);
            std::vector<double> re_qty(np, 0.0);
            std::vector<std::size_t> re_row(np, 0);
            bool any = false;
            for (std::size_t p = 0; p < np; ++p) {
                if (!flag[p]) {
                    continue;
                }
                flag[p] = false;
                if (exhausted[p] || supply[p] <= kQuantityTol) {
                    continue;
                }
                const std::size_t a = prop_lists[p][pointer[p]];
                re_to[p] = a;
                re_qty[p] = supply[p];
                any = true;
                result.trace.push_back({result.rounds,
                                        proposers.ids[p],
                                        acceptors.ids[a],
                                        supply[p],
                                        0.0,
                                        0.0,
                                        true,
                                        static_cast<int>(pointer[p])});
                re_row[p] = result.trace.size() - 1;
            }
            if (!any) {
                break;
            }
            if (++cascade_guard > 1000000) {
                throw std::runtime_error("run_matching: displacement cascade "
                                         "did not settle");
            }
            evaluate(re_to, re_qty, re_row);
        }
    }

    for (std::size_t a = 0; a < na; ++a) {
        for (const auto& [p, q] : retained[a]) {
            result.allocation.add(acceptors.ids[a], proposers.ids[p], q);
        }
    }
    return result;
}

std::optional<BlockingPair> find_blocking_pair(const Allocation& allocation,
                                               const MatchSide& proposers,
                                               const MatchSide& acceptors)
{
    const std::size_t np = proposers.size();
    const std::size_t na = acceptors.size();
    if (np == 0 || na == 0) {
        return std::nullopt;
    }

    const auto prop_index = index_by_id(proposers.ids);
    const auto acc_index = index_by_id(acceptors.ids);
    const auto acc_rank = rank_table(acceptors, prop_index, np);

    std::vector<double> prop_allocated(np, 0.0);
    std::vector<double> acc_allocated(na, 0.0);
    for (const auto& [key, q] : allocation.entries) {
        const auto ai = acc_index.find(key.first);
        const auto pi = prop_index.find(key.second);
        if (ai == acc_index.end() || pi == prop_index.end()) {
            throw std::invalid_argument(
                "find_blocking_pair: allocation names an unknown agent");
        }
        acc_allocated[ai->second] += q;
        prop_allocated[pi->second] += q;
    }

    for (std::size_t p = 0; p < np; ++p) {
        const double residual_supply = proposers.quantity[p] - prop_allocated[p];
        for (std::size_t pos = 0; pos < proposers.prefs[p].size(); ++pos) {
            const std::size_t a = acc_index.at(proposers.prefs[p][pos]);

            // Quantity p could redirect to a: idle supply plus anything
            // it currently sells to acceptors it likes less than a.
            double freeable = std::max(residual_supply, 0.0);
            for (std::size_t pos2 = pos + 1; pos2 < proposers.prefs[p].size(); ++pos2) {
                freeable += allocation.at(proposers.prefs[p][pos2],
                                          proposers.ids[p]);
            }
            if (freeable <= kQuantityTol) {
                continue;
            }

            // Room a could make for p: idle demand plus anything it holds
            // from proposers it likes less than p.
            double room = std::max(acceptors.quantity[a] - acc_allocated[a], 0.0);
            for (std::size_t p2 = 0; p2 < np; ++p2) {
                if (acc_rank[a][p2] > acc_rank[a][p]) {
                    room += allocation.at(acceptors.ids[a], proposers.ids[p2]);
                }
            }
            const double transferable = std::min(freeable, room);
            if (transferable > kQuantityTol) {
                return BlockingPair{proposers.ids[p], acceptors.ids[a],
                                    transferable};
            }
        }
    }
    return std::nullopt;
}

std::optional<PointerViolation> assert_pointer_monotone(
    const std::vector<TraceRow>& trace)
{
    std::map<int, int> last; // proposer -> last pointer seen
    for (const TraceRow& row : trace) {
        auto it = last.find(row.proposer);
        if (it != last.end() && row.pointer < it->second) {
            return PointerViolation{row.proposer, row.round, it->second,
                                    row.pointer};
        }
        last[row.proposer] = row.pointer;
    }
    return std::nullopt;
}

nlohmann::json trace_to_json(const std::vector<TraceRow>& trace)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const TraceRow& row : trace) {
        rows.push_back({
            {"round", row.round},
            {"proposer", row.proposer},
            {"acceptor", row.acceptor},
            {"offered", row.offered},
            {"accepted", row.accepted},
            {"rejected", row.rejected},
            {"flag", row.flag_hold},
            {"pointer", row.pointer},
        });
    }
    return rows;
}

std::pair<MatchSide, MatchSide> build_dso_fn_sides(const Scenario& s,
                                                   const Subscription& sub,
                                                   const PricingResult& pricing)
{
    std::vector<int> dso_ids(s.dsos.size());
    for (std::size_t i = 0; i < s.dsos.size(); ++i) {
        dso_ids[i] = s.dsos[i].id;
    }
    std::vector<int> fn_ids(s.fns.size());
    std::vector<double> rents(s.fns.size());
    for (std::size_t k = 0; k < s.fns.size(); ++k) {
        fn_ids[k] = s.fns[k].id;
        rents[k] = s.fns[k].rent;
    }

    MatchSide fns; // proposers
    fns.ids = fn_ids;
    fns.quantity.resize(s.fns.size());
    fns.prefs.resize(s.fns.size());
    for (std::size_t k = 0; k < s.fns.size(); ++k) {
        fns.quantity[k] = s.fns[k].capacity;
        fns.prefs[k] = ranked_by(dso_ids, s.fns[k].dso_weights, /*descending=*/true);
    }

    MatchSide dsos; // acceptors
    dsos.ids = dso_ids;
    dsos.quantity.assign(s.dsos.size(), 0.0);
    dsos.prefs.assign(s.dsos.size(), ranked_by(fn_ids, rents, /*descending=*/false));
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        const int i = sub.dso_of_dss[j];
        if (i != Subscription::kUnassigned) {
            dsos.quantity[i] += pricing.purchase[j];
        }
    }

    return {std::move(fns), std::move(dsos)};
}

std::pair<MatchSide, MatchSide> build_fn_dss_sides(const Scenario& s,
                                                   int dso_id,
                                                   const Subscription& sub,
                                                   const Allocation& dso_fn,
                                                   const PricingResult& pricing)
{
    MatchSide fns; // acceptors: nodes paired to this operator
    for (const FogNodeAgent& fn : s.fns) {
        const double quota = dso_fn.at(dso_id, fn.id);
        if (quota > kQuantityTol) {
            fns.ids.push_back(fn.id);
            fns.quantity.push_back(quota);
        }
    }

    MatchSide dsss; // proposers: this operator's buying subscribers
    for (std::size_t j = 0; j < s.dsss.size(); ++j) {
        if (sub.dso_of_dss[j] == dso_id && pricing.purchase[j] > kQuantityTol) {
            dsss.ids.push_back(s.dsss[j].id);
            dsss.quantity.push_back(pricing.purchase[j]);
        }
    }

    std::vector<double> rents(fns.ids.size());
    for (std::size_t k = 0; k < fns.ids.size(); ++k) {
        rents[k] = s.fns[fns.ids[k]].rent;
    }
    dsss.prefs.assign(dsss.ids.size(),
                      ranked_by(fns.ids, rents, /*descending=*/false));

    fns.prefs.resize(fns.ids.size());
    for (std::size_t k = 0; k < fns.ids.size(); ++k) {
        std::vector<double> dist(dsss.ids.size());
        for (std::size_t j = 0; j < dsss.ids.size(); ++j) {
            dist[j] = distance(s.fns[fns.ids[k]].position,
                               s.dsss[dsss.ids[j]].position);
        }
        fns.prefs[k] = ranked_by(dsss.ids, dist, /*descending=*/false);
    }

    return {std::move(dsss), std::move(fns)};
}

} // namespace fogsim
