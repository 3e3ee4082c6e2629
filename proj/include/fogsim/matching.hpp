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

#ifndef FOGSIM_MATCHING_HPP
#define FOGSIM_MATCHING_HPP

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fogsim/allocation.hpp"
#include "fogsim/equilibrium.hpp"
#include "fogsim/scenario.hpp"

namespace fogsim {

/// One side of a quantity-based matching market. Proposers carry supply;
/// acceptors carry demand (or quota). Preference lists are strict total
/// orders over the opposite side's ids, best first.
struct MatchSide {
    std::vector<int> ids;
    std::vector<double> quantity;
    std::vector<PreferenceList> prefs;

    std::size_t size() const { return ids.size(); }
};

/// One proposal and its outcome, for debugging and the monotonicity
/// checks. `flag_hold` marks a re-proposal made with a held pointer.
struct TraceRow {
    int round = 0;
    int proposer = 0;
    int acceptor = 0;
    double offered = 0.0;
    double accepted = 0.0;
    double rejected = 0.0;
    bool flag_hold = false;
    int pointer = 0; ///< position in the proposer's preference list
};

struct MatchResult {
    /// Rows are acceptor ids, columns proposer ids.
    Allocation allocation;
    std::vector<TraceRow> trace;
    int rounds = 0;
};

/// Deferred acceptance over divisible quantities with proposer pointers.
///
/// Each round, every proposer with unallocated quantity offers all of it
/// to the acceptor at its pointer; the pointer holds if the proposer's
/// re-proposal flag is set (initially, and after a displacement) and
/// advances otherwise. Each acceptor then re-evaluates everything it
/// holds together with the new offers and keeps the best-ranked quantity
/// up to its demand, rejecting the remainder; the marginal proposer may
/// be cut partially. A proposer whose previously held quantity shrinks
/// this round gets its flag set and re-proposes at the held pointer next
/// round. Runs until no proposer with remaining quantity has list
/// positions left. Deterministic: agents are processed in id order.
MatchResult run_matching(const MatchSide& proposers, const MatchSide& acceptors);

struct BlockingPair {
    int proposer = 0;
    int acceptor = 0;
    double quantity = 0.0; ///< transferable amount, > kQuantityTol
};

/// Pairwise-stability oracle. Returns a proposer/acceptor pair that could
/// move a positive quantity between them with both sides weakly better
/// off and one strictly (the proposer frees quantity from idle supply or
/// from acceptors it ranks lower; the acceptor frees room from idle
/// demand or from proposers it ranks lower); nullopt if the allocation is
/// pairwise stable. Works on any allocation over the given sides, not
/// just engine output.
std::optional<BlockingPair> find_blocking_pair(const Allocation& allocation,
                                               const MatchSide& proposers,
                                               const MatchSide& acceptors);

struct PointerViolation {
    int proposer = 0;
    int round = 0;
    int from = 0;
    int to = 0;
};

/// Checks that every proposer's pointer is non-decreasing across a trace.
std::optional<PointerViolation> assert_pointer_monotone(
    const std::vector<TraceRow>& trace);

/// Trace rows as a JSON array, one object per proposal, for debugging.
nlohmann::json trace_to_json(const std::vector<TraceRow>& trace);

/// DSO-FN market: fog nodes propose their capacity; operators demand the
/// total purchase of their participating subscribers. Nodes rank
/// operators by descending preference weight, operators rank nodes by
/// ascending rent.
std::pair<MatchSide, MatchSide> build_dso_fn_sides(const Scenario& s,
                                                   const Subscription& sub,
                                                   const PricingResult& pricing);

/// FN-DSS sub-market within one operator: its subscribers propose their
/// purchases; the nodes paired to the operator accept up to the quantity
/// rented to it. Subscribers rank nodes by ascending rent, nodes rank
/// subscribers by ascending distance.
std::pair<MatchSide, MatchSide> build_fn_dss_sides(const Scenario& s,
                                                   int dso_id,
                                                   const Subscription& sub,
                                                   const Allocation& dso_fn,
                                                   const PricingResult& pricing);

} // namespace fogsim

#endif // FOGSIM_MATCHING_HPP
