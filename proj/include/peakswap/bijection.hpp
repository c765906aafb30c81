/*
 * Copyright 2026 The peakswap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * \file peakswap/bijection.hpp
 *
 * \brief The endowment-to-priority-order map g with SP^{g(w)} = CR^w, built
 *  from envy chains, plus exhaustive checks that g is a bijection.
 *
 * Round r: every agent still active looks at the best object left in its
 * remaining set. If the crawler gave that object to another agent j, the
 * agent envies j (edge i -> j, j must precede i) and drops the object;
 * otherwise the agent is satisfied and drops everything. After each round the
 * agents of every connected component of the accumulated envy graph are
 * re-sorted inside the component's current rank slots: a topological order of
 * the envy constraints, breaking ties by previous rank.
 *
 * The envy-chain order alone is not one-to-one in general. Under the default
 * policy the map is repaired per crawler class: endowments are visited in
 * lexicographic order, each keeps its envy-chain order unless an earlier
 * endowment already holds it, and displaced endowments receive the remaining
 * orders that reproduce the class allocation, lexicographically.
 */

#ifndef PEAKSWAP_BIJECTION_HPP
#define PEAKSWAP_BIJECTION_HPP

#include <peakswap/domain.hpp>
#include <peakswap/lotteries.hpp>
#include <peakswap/permutations.hpp>
#include <peakswap/rules.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace peakswap {

/// `envier` wants the object the crawler gave `envied`, so `envied` ranks first.
struct EnvyEdge {
    AgentId envier;
    AgentId envied;
    std::size_t round = 0;

    friend bool operator==(const EnvyEdge&, const EnvyEdge&) = default;
};

/// Snapshot of the envy-chain construction after one round.
struct ChainState {
    std::size_t round = 0;
    std::vector<std::uint32_t> remaining; ///< per agent, bitmask of objects still to examine
    std::vector<std::uint32_t> consumed;  ///< per agent, objects dropped this round
    AgentOrder order;
    std::vector<AgentWord> components; ///< partition of the agents, each sorted ascending
    std::vector<EnvyEdge> edges;       ///< accumulated, in creation order

    /// Human-readable dump; agents and objects 1-based.
    std::string dump() const {
        auto set_text = [](std::uint32_t mask) {
            std::string s = "{";
            bool first = true;
            for (int o = 0; mask; ++o, mask >>= 1) {
                if (mask & 1u) {
                    s += (first ? "o" : ",o") + std::to_string(o + 1);
                    first = false;
                }
            }
            return s + "}";
        };
        std::ostringstream os;
        os << "round " << round << "\n  order (";
        for (std::size_t k = 0; k < order.size(); ++k) {
            os << (k ? "," : "") << order.at_rank(k).index + 1;
        }
        os << ")\n  chains";
        for (const auto& c : components) {
            os << " [";
            for (std::size_t k = 0; k < c.size(); ++k) {
                os << (k ? "," : "") << c[k].index + 1;
            }
            os << "]";
        }
        os << "\n  envy";
        for (const auto& e : edges) {
            os << " " << e.envier.index + 1 << "->" << e.envied.index + 1 << "@" << e.round;
        }
        os << "\n";
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            os << "  agent " << i + 1 << " remaining " << set_text(remaining[i]) << " consumed "
               << set_text(consumed[i]) << "\n";
        }
        return os.str();
    }
};

/// The envy-chain procedure could not produce a valid order.
class construction_error : public std::runtime_error {
public:
    construction_error(const std::string& what, ChainState state)
        : std::runtime_error(what), state_(std::move(state)) {}
    const ChainState& state() const noexcept { return state_; }

private:
    ChainState state_;
};

/// Envy-chain order and the state after every round (round 0 first).
struct ChainConstruction {
    AgentOrder order;
    std::vector<ChainState> history;
};

/// Runs the envy-chain rounds exactly, without any repair.
inline ChainConstruction envy_chain_order(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_single_peaked_profile(profile, n);
    const Assignment x = crawler_unchecked(profile, endowment);
    const AgentWord holder = x.owners();

    ChainState state;
    state.remaining.assign(n, n >= 32 ? ~0u : (1u << n) - 1);
    state.consumed.assign(n, 0);
    state.order = AgentOrder(endowment.owners());
    for (std::size_t i = 0; i < n; ++i) {
        state.components.push_back(AgentWord{agent_at(i)});
    }
    ChainConstruction out;
    out.history.push_back(state);

    auto any_left = [&] {
        return std::any_of(state.remaining.begin(), state.remaining.end(), [](std::uint32_t m) { return m != 0; });
    };
    while (any_left()) {
        ++state.round;
        for (std::size_t i = 0; i < n; ++i) {
            state.consumed[i] = 0;
            if (state.remaining[i] == 0) {
                continue;
            }
            ObjectId best{};
            for (ObjectId o : profile[i].ranking()) {
                if (state.remaining[i] & (1u << o.index)) {
                    best = o;
                    break;
                }
            }
            const AgentId j = holder[best.index];
            if (j.index != i) {
                state.edges.push_back({agent_at(i), j, state.round});
                state.consumed[i] = 1u << best.index;
            } else {
                state.consumed[i] = state.remaining[i];
            }
            state.remaining[i] &= ~state.consumed[i];
        }

        // components of the accumulated envy graph
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t a) {
            while (parent[a] != a) {
                a = parent[a] = parent[parent[a]];
            }
            return a;
        };
        for (const auto& e : state.edges) {
            parent[find(e.envier.index)] = find(e.envied.index);
        }
        std::map<std::size_t, AgentWord> groups;
        for (std::size_t i = 0; i < n; ++i) {
            groups[find(i)].push_back(agent_at(i));
        }
        state.components.clear();
        for (auto& [root, members] : groups) {
            state.components.push_back(members);
        }
        std::sort(state.components.begin(), state.components.end());

        AgentWord next = state.order.agents_by_rank();
        for (const auto& comp : state.components) {
            if (comp.size() < 2) {
                continue;
            }
            std::vector<std::size_t> slots;
            std::uint32_t in_comp = 0;
            for (AgentId a : comp) {
                slots.push_back(state.order.rank_of(a));
                in_comp |= 1u << a.index;
            }
            std::sort(slots.begin(), slots.end());
            std::vector<std::uint32_t> preds(n, 0);
            for (const auto& e : state.edges) {
                if ((in_comp >> e.envier.index & 1u) && (in_comp >> e.envied.index & 1u)) {
                    preds[e.envier.index] |= 1u << e.envied.index;
                }
            }
            std::uint32_t placed = 0;
            for (std::size_t s : slots) {
                std::size_t pick = n;
                for (AgentId a : comp) {
                    if ((placed >> a.index & 1u) || (preds[a.index] & ~placed) != 0) {
                        continue;
                    }
                    if (pick == n || state.order.rank_of(a) < state.order.rank_of(agent_at(pick))) {
                        pick = a.index;
                    }
                }
                if (pick == n) {
                    throw construction_error("envy cycle in round " + std::to_string(state.round), state);
                }
                placed |= 1u << pick;
                next[s] = agent_at(pick);
            }
        }
        state.order = AgentOrder(next);
        out.history.push_back(state);
    }
    out.order = state.order;
    return out;
}

/// Lexicographically smallest order f with SP^f(P) = CR^w(P).
inline AgentOrder oracle_priority_order(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_factorial_bound(n);
    const Assignment x = crawler(profile, endowment);
    for (std::uint64_t k = 0; k < factorial(n); ++k) {
        auto f = order_at(k, n);
        if (sequential_priority(profile, f) == x) {
            return f;
        }
    }
    throw std::logic_error("no priority order reproduces the crawler allocation");
}

enum class ConstructionPolicy {
    constrained_oracle, ///< repair collisions inside each crawler class
    abort,              ///< throw construction_error on the first collision
};

struct BuildOptions {
    ConstructionPolicy policy = ConstructionPolicy::constrained_oracle;
};

/// An endowment whose envy-chain order was replaced.
struct RepairedInstance {
    Assignment endowment;
    AgentOrder chain_order; ///< what the envy chains produced
    AgentOrder assigned;    ///< what the map uses
    std::string reason;     ///< "collision" or "mismatch"
};

/// g over all n! endowments of one profile, indexed by lexicographic endowment rank.
struct PriorityOrderMap {
    std::vector<AgentOrder> orders;
    std::vector<RepairedInstance> repaired;
};

namespace detail {

/// Computes the map for the endowments in `ranks` (each a whole crawler class),
/// given envy-chain orders and the per-allocation list of reproducing orders.
inline void resolve_class(const Profile& profile, const Assignment& x, const std::vector<std::uint64_t>& ranks,
                          const std::vector<AgentOrder>& reproducing, PriorityOrderMap& map,
                          const std::vector<ChainConstruction>& chains, ConstructionPolicy policy) {
    const auto n = x.size();
    std::set<AgentOrder> claimed;
    std::vector<std::pair<std::uint64_t, std::string>> displaced;
    for (auto k : ranks) {
        const auto& g = chains[k].order;
        if (sequential_priority(profile, g) != x) {
            displaced.emplace_back(k, "mismatch");
        } else if (!claimed.insert(g).second) {
            displaced.emplace_back(k, "collision");
        } else {
            map.orders[k] = g;
        }
    }
    if (displaced.empty()) {
        return;
    }
    if (policy == ConstructionPolicy::abort) {
        const auto k = displaced.front().first;
        throw construction_error("envy-chain order for endowment rank " + std::to_string(k) + " is a " +
                                     displaced.front().second,
                                 chains[k].history.back());
    }
    auto next = reproducing.begin();
    for (const auto& [k, reason] : displaced) {
        while (next != reproducing.end() && claimed.count(*next)) {
            ++next;
        }
        if (next == reproducing.end()) {
            throw construction_error("crawler class has more endowments than reproducing orders",
                                     chains[k].history.back());
        }
        map.orders[k] = *next;
        map.repaired.push_back({assignment_at(k, n), chains[k].order, *next, reason});
        ++next;
    }
}

} // namespace detail

/// g(w) for every endowment of `profile`.
inline PriorityOrderMap priority_order_map(const Profile& profile, BuildOptions options = {}) {
    const auto n = profile.size();
    detail::require_factorial_bound(n);
    detail::require_single_peaked_profile(profile, n);
    const auto total = factorial(n);
    std::vector<ChainConstruction> chains;
    chains.reserve(total);
    std::map<Assignment, std::vector<std::uint64_t>> classes;
    for (std::uint64_t k = 0; k < total; ++k) {
        const auto w = assignment_at(k, n);
        chains.push_back(envy_chain_order(profile, w));
        classes[crawler_unchecked(profile, w)].push_back(k);
    }
    std::map<Assignment, std::vector<AgentOrder>> reproducing;
    for (std::uint64_t k = 0; k < total; ++k) {
        auto f = order_at(k, n);
        reproducing[sequential_priority(profile, f)].push_back(f);
    }
    PriorityOrderMap map;
    map.orders.resize(total);
    for (const auto& [x, ranks] : classes) {
        detail::resolve_class(profile, x, ranks, reproducing[x], map, chains, options.policy);
    }
    return map;
}

/// g(w). Under the default policy a colliding envy-chain order is repaired
/// within w's crawler class; under `abort` a collision throws.
inline AgentOrder build_priority_order(const Profile& profile, const Assignment& endowment,
                                       BuildOptions options = {}) {
    const auto n = endowment.size();
    detail::require_single_peaked_profile(profile, n);
    auto own = envy_chain_order(profile, endowment);
    if (n > kFactorialBound) {
        if (sequential_priority(profile, own.order) != crawler_unchecked(profile, endowment)) {
            throw construction_error("envy-chain order does not reproduce the crawler", own.history.back());
        }
        return own.order;
    }
    const Assignment x = crawler_unchecked(profile, endowment);
    const auto total = factorial(n);
    std::vector<std::uint64_t> ranks;
    std::vector<ChainConstruction> chains(total);
    for (std::uint64_t k = 0; k < total; ++k) {
        const auto w = assignment_at(k, n);
        if (crawler_unchecked(profile, w) == x) {
            ranks.push_back(k);
            chains[k] = w == endowment ? own : envy_chain_order(profile, w);
        }
    }
    std::vector<AgentOrder> reproducing;
    for (std::uint64_t k = 0; k < total; ++k) {
        auto f = order_at(k, n);
        if (sequential_priority(profile, f) == x) {
            reproducing.push_back(f);
        }
    }
    PriorityOrderMap map;
    map.orders.resize(total);
    std::uint64_t mine = 0;
    for (auto k : ranks) {
        if (assignment_at(k, n) == endowment) {
            mine = k;
        }
    }
    if (options.policy == ConstructionPolicy::abort) {
        // only this endowment's own collision is fatal
        std::set<AgentOrder> claimed;
        for (auto k : ranks) {
            const bool ok = sequential_priority(profile, chains[k].order) == x && claimed.insert(chains[k].order).second;
            if (k == mine) {
                if (!ok) {
                    throw construction_error("envy-chain order collides within the crawler class", own.history.back());
                }
                return own.order;
            }
        }
    }
    detail::resolve_class(profile, x, ranks, reproducing, map, chains, ConstructionPolicy::constrained_oracle);
    return map.orders[mine];
}

struct ClaimFailure {
    std::string claim; ///< equivalence | injective | surjective | count_equality | set_equality
    std::string detail;
};

struct BijectionReport {
    std::size_t n = 0;
    std::uint64_t endowments = 0;
    bool equivalence = true;
    bool injective = true;
    bool surjective = true;
    bool count_equality = true;
    bool set_equality = true;
    std::size_t chain_collisions = 0; ///< endowments whose envy-chain order was displaced
    std::vector<ClaimFailure> failures;
    std::vector<RepairedInstance> repaired;

    bool passed() const noexcept { return equivalence && injective && surjective && count_equality && set_equality; }
};

/// Checks, for one profile: SP^{g(w)} = CR^w for every w; g injective and onto
/// the n! orders; per-allocation counts of endowments and orders agree; the
/// two allocation sets agree.
inline BijectionReport verify_equivalence_for_profile(const Profile& profile, BuildOptions options = {}) {
    const auto n = profile.size();
    const auto map = priority_order_map(profile, options);
    const auto total = factorial(n);
    BijectionReport report;
    report.n = n;
    report.endowments = total;
    report.repaired = map.repaired;
    report.chain_collisions = map.repaired.size();

    std::map<AgentOrder, std::uint64_t> seen;
    for (std::uint64_t k = 0; k < total; ++k) {
        const auto w = assignment_at(k, n);
        const auto& g = map.orders[k];
        const auto cr = crawler_unchecked(profile, w);
        const auto sp = sequential_priority(profile, g);
        if (cr != sp) {
            report.equivalence = false;
            report.failures.push_back({"equivalence", "endowment " + detail::word_text(w.word()) + " order " +
                                                          detail::word_text(g.agents_by_rank()) + ": crawler " +
                                                          detail::word_text(cr.word()) + " vs priority " +
                                                          detail::word_text(sp.word())});
        }
        if (auto [it, fresh] = seen.emplace(g, k); !fresh) {
            report.injective = false;
            report.failures.push_back({"injective", "endowments " +
                                                        detail::word_text(assignment_at(it->second, n).word()) +
                                                        " and " + detail::word_text(w.word()) + " share order " +
                                                        detail::word_text(g.agents_by_rank())});
        }
    }
    if (seen.size() != total) {
        report.surjective = false;
        for (std::uint64_t k = 0; k < total; ++k) {
            const auto f = order_at(k, n);
            if (!seen.count(f)) {
                report.failures.push_back({"surjective", "order " + detail::word_text(f.agents_by_rank()) +
                                                             " is not reached"});
                break;
            }
        }
    }
    const auto rcr = crawler_from_random_endowments(profile);
    const auto rp = random_priority(profile);
    if (const auto cmp = lotteries_equal(rcr, rp); !cmp) {
        report.count_equality = false;
        report.failures.push_back({"count_equality", "allocation " + detail::word_text(cmp.first_difference->word()) +
                                                         ": " + std::to_string(cmp.left) + " endowments vs " +
                                                         std::to_string(cmp.right) + " orders"});
    }
    std::set<Assignment> from_crawler;
    std::set<Assignment> from_priority;
    for (const auto& [x, c] : rcr.entries()) {
        from_crawler.insert(x);
    }
    for (const auto& [x, c] : rp.entries()) {
        from_priority.insert(x);
    }
    if (from_crawler != from_priority) {
        report.set_equality = false;
        report.failures.push_back({"set_equality", std::to_string(from_crawler.size()) + " crawler allocations vs " +
                                                       std::to_string(from_priority.size()) + " priority allocations"});
    }
    return report;
}

} // namespace peakswap

#endif // PEAKSWAP_BIJECTION_HPP
