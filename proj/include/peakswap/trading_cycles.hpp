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
 * \file peakswap/trading_cycles.hpp
 *
 * \brief Three-agent trading cycles under a control-rights structure, and the
 *  two-structure demonstration that the crawler is not such a rule.
 */

#ifndef PEAKSWAP_TRADING_CYCLES_HPP
#define PEAKSWAP_TRADING_CYCLES_HPP

#include <peakswap/domain.hpp>
#include <peakswap/rules.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap {

inline constexpr std::size_t kTradingAgents = 3;

/// Agents assigned so far and their objects.
class PartialAllocation {
public:
    static constexpr std::int8_t kNone = -1;

    PartialAllocation() { slots_.fill(kNone); }

    static PartialAllocation empty() { return {}; }

    /// Returns a copy with `agent` assigned `object`. Both must be unassigned.
    PartialAllocation with(AgentId agent, ObjectId object) const {
        if (agent.index >= kTradingAgents || object.index >= kTradingAgents) {
            throw validation_error("partial allocation index out of range");
        }
        if (slots_[agent.index] != kNone || !object_free(object)) {
            throw validation_error("partial allocation assigns an agent or object twice");
        }
        auto out = *this;
        out.slots_[agent.index] = static_cast<std::int8_t>(object.index);
        return out;
    }

    bool assigned(AgentId a) const noexcept { return slots_[a.index] != kNone; }
    std::optional<ObjectId> object_of(AgentId a) const {
        return assigned(a) ? std::optional{object_at(static_cast<std::size_t>(slots_[a.index]))} : std::nullopt;
    }
    bool object_free(ObjectId o) const noexcept {
        for (auto s : slots_) {
            if (s == o.index) {
                return false;
            }
        }
        return true;
    }
    std::size_t assigned_count() const noexcept {
        std::size_t c = 0;
        for (auto s : slots_) {
            c += s != kNone;
        }
        return c;
    }
    bool full() const noexcept { return assigned_count() == kTradingAgents; }

    AgentWord unassigned_agents() const {
        AgentWord out;
        for (std::size_t i = 0; i < kTradingAgents; ++i) {
            if (slots_[i] == kNone) {
                out.push_back(agent_at(i));
            }
        }
        return out;
    }
    ObjectWord unassigned_objects() const {
        ObjectWord out;
        for (std::size_t o = 0; o < kTradingAgents; ++o) {
            if (object_free(object_at(o))) {
                out.push_back(object_at(o));
            }
        }
        return out;
    }

    /// Every assignment in `*this` also holds in `other`.
    bool subset_of(const PartialAllocation& other) const noexcept {
        for (std::size_t i = 0; i < kTradingAgents; ++i) {
            if (slots_[i] != kNone && slots_[i] != other.slots_[i]) {
                return false;
            }
        }
        return true;
    }

    std::string text() const {
        std::string s = "{";
        bool first = true;
        for (std::size_t i = 0; i < kTradingAgents; ++i) {
            if (slots_[i] != kNone) {
                s += (first ? "" : ",") + std::string("(") + std::to_string(i + 1) + ",o" +
                     std::to_string(slots_[i] + 1) + ")";
                first = false;
            }
        }
        return s + "}";
    }

    /// Every non-full partial allocation of three agents.
    static std::vector<PartialAllocation> all_non_full() {
        std::vector<PartialAllocation> out;
        auto grow = [&](auto&& self, const PartialAllocation& y, std::size_t agent) -> void {
            if (agent == kTradingAgents) {
                if (!y.full()) {
                    out.push_back(y);
                }
                return;
            }
            self(self, y, agent + 1);
            for (std::size_t o = 0; o < kTradingAgents; ++o) {
                if (y.object_free(object_at(o))) {
                    self(self, y.with(agent_at(agent), object_at(o)), agent + 1);
                }
            }
        };
        grow(grow, PartialAllocation{}, 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const PartialAllocation&, const PartialAllocation&) = default;
    friend auto operator<=>(const PartialAllocation&, const PartialAllocation&) = default;

private:
    std::array<std::int8_t, kTradingAgents> slots_{};
};

enum class ControlMode { ownership, brokerage };

struct Control {
    AgentId agent;
    ControlMode mode = ControlMode::ownership;

    friend bool operator==(const Control&, const Control&) = default;
};

/// Extensional control-rights table: for every non-full partial allocation,
/// who controls each unassigned object and how.
class ControlRights {
public:
    using Row = std::array<std::optional<Control>, kTradingAgents>; ///< indexed by object

    void set(const PartialAllocation& y, ObjectId o, Control c) { table_[y][o.index] = c; }

    const Control& at(const PartialAllocation& y, ObjectId o) const {
        const auto it = table_.find(y);
        if (it == table_.end() || !it->second[o.index]) {
            throw validation_error("no control entry for o" + std::to_string(o.index + 1) + " at " + y.text());
        }
        return *it->second[o.index];
    }

    bool owns(const PartialAllocation& y, AgentId a, ObjectId o) const {
        const auto& c = at(y, o);
        return c.agent == a && c.mode == ControlMode::ownership;
    }
    bool brokers(const PartialAllocation& y, AgentId a, ObjectId o) const {
        const auto& c = at(y, o);
        return c.agent == a && c.mode == ControlMode::brokerage;
    }
    bool controls(const PartialAllocation& y, AgentId a, ObjectId o) const { return at(y, o).agent == a; }

    /// Everything brokered at the empty allocation (`brokered[i]` by agent i);
    /// after one departure each remaining agent owns its brokered object if
    /// still free, otherwise the departed agent's; a lone agent owns all.
    static ControlRights from_initial_brokers(const ObjectWord& brokered) {
        if (brokered.size() != kTradingAgents ||
            !detail::is_permutation_of_indices(brokered.view(), kTradingAgents)) {
            throw validation_error("initial brokerage must give each of the three agents one object");
        }
        ControlRights cr;
        for (const auto& y : PartialAllocation::all_non_full()) {
            const auto agents = y.unassigned_agents();
            switch (y.assigned_count()) {
            case 0:
                for (std::size_t i = 0; i < kTradingAgents; ++i) {
                    cr.set(y, brokered[i], {agent_at(i), ControlMode::brokerage});
                }
                break;
            case 1: {
                ObjectId leftover{};
                for (std::size_t i = 0; i < kTradingAgents; ++i) {
                    if (y.assigned(agent_at(i))) {
                        leftover = brokered[i];
                    }
                }
                for (AgentId a : agents) {
                    const auto mine = brokered[a.index];
                    cr.set(y, y.object_free(mine) ? mine : leftover, {a, ControlMode::ownership});
                }
                break;
            }
            default:
                for (ObjectId o : y.unassigned_objects()) {
                    cr.set(y, o, {agents[0], ControlMode::ownership});
                }
            }
        }
        return cr;
    }

    /// First violated condition, named R1..R6, or a structural problem.
    std::optional<std::string> violation() const {
        const auto ys = PartialAllocation::all_non_full();
        for (const auto& y : ys) {
            const auto it = table_.find(y);
            if (it == table_.end()) {
                return "structure: no entry for " + y.text();
            }
            for (std::size_t o = 0; o < kTradingAgents; ++o) {
                const bool free = y.object_free(object_at(o));
                const auto& c = it->second[o];
                if (free != c.has_value()) {
                    return "structure: entry for o" + std::to_string(o + 1) + " at " + y.text() +
                           (free ? " missing" : " on an assigned object");
                }
                if (c && y.assigned(c->agent)) {
                    return "structure: assigned agent controls o" + std::to_string(o + 1) + " at " + y.text();
                }
            }
        }
        for (const auto& y : ys) {
            const auto agents = y.unassigned_agents();
            const auto objects = y.unassigned_objects();
            if (y.assigned_count() == 0) {
                for (ObjectId o : objects) {
                    if (at(y, o).mode != ControlMode::brokerage) {
                        return "R1: o" + std::to_string(o.index + 1) + " is not brokered at the empty allocation";
                    }
                }
            }
            if (agents.size() == 1) {
                for (ObjectId o : objects) {
                    if (!owns(y, agents[0], o)) {
                        return "R2: lone agent does not own o" + std::to_string(o.index + 1) + " at " + y.text();
                    }
                }
            }
            for (ObjectId o : objects) {
                const auto& c = at(y, o);
                if (c.mode != ControlMode::brokerage) {
                    continue;
                }
                for (ObjectId other : objects) {
                    if (other != o && controls(y, c.agent, other)) {
                        return "R3: broker " + std::to_string(c.agent.index + 1) + " controls two objects at " +
                               y.text();
                    }
                }
            }
        }
        for (const auto& y : ys) {
            for (const auto& y2 : ys) {
                if (!y.subset_of(y2)) {
                    continue;
                }
                for (AgentId i : y2.unassigned_agents()) {
                    for (ObjectId o : y2.unassigned_objects()) {
                        if (!owns(y, i, o)) {
                            continue;
                        }
                        if (!owns(y2, i, o)) {
                            return "R4: agent " + std::to_string(i.index + 1) + " loses ownership of o" +
                                   std::to_string(o.index + 1) + " from " + y.text() + " to " + y2.text();
                        }
                        for (AgentId j : y2.unassigned_agents()) {
                            for (ObjectId o2 : y2.unassigned_objects()) {
                                if (brokers(y, j, o2) && !brokers(y2, j, o2) && !owns(y2, i, o2)) {
                                    return "R5: brokerage of o" + std::to_string(o2.index + 1) + " from " +
                                           y.text() + " to " + y2.text();
                                }
                                if (j == i || !controls(y, j, o2)) {
                                    continue;
                                }
                                const auto next = y.with(i, o2);
                                if (!next.full() && !owns(next, j, o)) {
                                    return "R6: agent " + std::to_string(j.index + 1) + " does not inherit o" +
                                           std::to_string(o.index + 1) + " at " + next.text();
                                }
                            }
                        }
                    }
                }
            }
        }
        return std::nullopt;
    }

    void validate() const {
        if (auto v = violation()) {
            throw validation_error("control-rights structure violates " + *v);
        }
    }

private:
    std::map<PartialAllocation, Row> table_;
};

/// Three-agent trading cycles. Agents point to their best unassigned object,
/// objects to their controller. Cycles containing an owner clear first; with
/// only broker cycles, a broker in a cycle pointing at a contested brokered
/// object is made to point one step lower (lowest agent index first) until
/// either an owner cycle appears or no such broker is left, and then all
/// cycles clear.
inline Assignment trading_cycles_3(const Profile& profile, const ControlRights& cr) {
    detail::require_strict_profile(profile, kTradingAgents);
    cr.validate();
    PartialAllocation y;
    while (!y.full()) {
        std::array<std::size_t, kTradingAgents> depth{}; // pointing at the depth-th best unassigned object
        auto target = [&](AgentId a) {
            std::size_t seen = 0;
            for (ObjectId o : profile[a.index].ranking()) {
                if (y.object_free(o) && seen++ == depth[a.index]) {
                    return o;
                }
            }
            throw std::logic_error("broker downgraded past its last unassigned object");
        };
        for (std::size_t guard = 0;; ++guard) {
            if (guard > kTradingAgents * kTradingAgents) {
                throw std::logic_error("broker downgrades did not terminate");
            }
            // agent graph: a -> controller of a's target
            const auto agents = y.unassigned_agents();
            std::array<std::optional<AgentId>, kTradingAgents> next{};
            for (AgentId a : agents) {
                next[a.index] = cr.at(y, target(a)).agent;
            }
            std::array<bool, kTradingAgents> on_cycle{};
            std::vector<AgentWord> cycles;
            for (AgentId start : agents) {
                AgentId a = start;
                for (std::size_t k = 0; k < kTradingAgents; ++k) {
                    a = *next[a.index];
                }
                // a is now on a cycle
                if (on_cycle[a.index]) {
                    continue;
                }
                AgentWord cyc;
                AgentId b = a;
                do {
                    on_cycle[b.index] = true;
                    cyc.push_back(b);
                    b = *next[b.index];
                } while (b != a);
                cycles.push_back(cyc);
            }
            // an agent on a cycle is pointed at by the object it controls there
            auto pointed_by = [&](AgentId a) {
                for (AgentId b : agents) {
                    if (on_cycle[b.index] && *next[b.index] == a) {
                        return target(b);
                    }
                }
                throw std::logic_error("cycle member without an incoming object");
            };
            bool any_simple = false;
            std::vector<bool> simple(cycles.size(), false);
            for (std::size_t c = 0; c < cycles.size(); ++c) {
                for (AgentId a : cycles[c]) {
                    if (cr.owns(y, a, pointed_by(a))) {
                        simple[c] = true;
                    }
                }
                any_simple = any_simple || simple[c];
            }
            auto execute = [&](const AgentWord& cyc) {
                std::vector<std::pair<AgentId, ObjectId>> moves;
                for (AgentId a : cyc) {
                    moves.emplace_back(a, target(a));
                }
                for (auto [a, o] : moves) {
                    y = y.with(a, o);
                }
            };
            if (any_simple) {
                for (std::size_t c = 0; c < cycles.size(); ++c) {
                    if (simple[c]) {
                        execute(cycles[c]);
                    }
                }
                break;
            }
            std::optional<AgentId> forced;
            for (AgentId a : agents) {
                if (!on_cycle[a.index] || cr.at(y, pointed_by(a)).mode != ControlMode::brokerage) {
                    continue;
                }
                const auto o = target(a);
                if (cr.at(y, o).mode != ControlMode::brokerage) {
                    continue;
                }
                for (AgentId b : agents) {
                    if (b != a && target(b) == o) {
                        forced = a;
                        break;
                    }
                }
                if (forced) {
                    break;
                }
            }
            if (forced) {
                ++depth[forced->index];
                continue;
            }
            for (const auto& cyc : cycles) {
                execute(cyc);
            }
            break;
        }
    }
    ObjectWord word;
    for (std::size_t i = 0; i < kTradingAgents; ++i) {
        word.push_back(*y.object_of(agent_at(i)));
    }
    return Assignment(word);
}

/// The two structures under which trading cycles agree with the crawler on
/// the demonstration profile. Case 1: agents 1,2,3 broker o1,o3,o2.
/// Case 2: agents 1,2,3 broker o3,o2,o1.
inline ControlRights example3_structure(int which) {
    if (which == 1) {
        return ControlRights::from_initial_brokers(ObjectWord{object_at(0), object_at(2), object_at(1)});
    }
    if (which == 2) {
        return ControlRights::from_initial_brokers(ObjectWord{object_at(2), object_at(1), object_at(0)});
    }
    throw validation_error("structure must be 1 or 2");
}

struct Example3Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Example3Report {
    std::vector<Example3Assertion> assertions;

    bool passed() const noexcept {
        for (const auto& a : assertions) {
            if (!a.passed) {
                return false;
            }
        }
        return !assertions.empty();
    }
};

/// Evaluates both structures and the crawler (identity endowment) on the
/// demonstration profile P, on P' (everyone o1,o2,o3) and on P~ (everyone
/// o3,o2,o1). `agent1` is agent 1's ranking on P; it must start with o2.
inline Example3Report reproduce_example3(const PreferenceRelation& agent1 = PreferenceRelation::of({1, 0, 2})) {
    if (agent1.size() != 3 || agent1.peak() != object_at(1)) {
        throw validation_error("agent 1 must rank o2 first");
    }
    const auto up = PreferenceRelation::of({0, 1, 2});
    const auto down = PreferenceRelation::of({2, 1, 0});
    const Profile p{agent1, up, up};
    const Profile p_prime{up, up, up};
    const Profile p_tilde{down, down, down};
    const auto w = Assignment::identity(3);
    const auto case1 = example3_structure(1);
    const auto case2 = example3_structure(2);
    const auto target = Assignment::of({1, 0, 2});
    const auto sorted = Assignment::of({0, 1, 2});
    auto text = [](const Assignment& a) { return detail::word_text(a.word()); };

    Example3Report r;
    const auto cr_p = crawler(p, w);
    const auto tc1_p = trading_cycles_3(p, case1);
    const auto tc2_p = trading_cycles_3(p, case2);
    r.assertions.push_back({"tc_equals_cr_on_p", cr_p == target && tc1_p == cr_p && tc2_p == cr_p,
                            "CR " + text(cr_p) + ", case 1 TC " + text(tc1_p) + ", case 2 TC " + text(tc2_p)});
    const auto cr_prime = crawler(p_prime, w);
    const auto tc1_prime = trading_cycles_3(p_prime, case1);
    r.assertions.push_back({"case1_tc_differs_on_p_prime", tc1_prime != cr_prime && tc1_prime == target,
                            "case 1 TC " + text(tc1_prime) + " vs CR " + text(cr_prime)});
    const auto cr_tilde = crawler(p_tilde, w);
    const auto tc2_tilde = trading_cycles_3(p_tilde, case2);
    r.assertions.push_back({"case2_tc_differs_on_p_tilde", tc2_tilde != cr_tilde && tc2_tilde == target,
                            "case 2 TC " + text(tc2_tilde) + " vs CR " + text(cr_tilde)});
    r.assertions.push_back({"cr_on_p_prime", cr_prime == sorted, "CR " + text(cr_prime)});
    r.assertions.push_back({"cr_on_p_tilde", cr_tilde == sorted, "CR " + text(cr_tilde)});
    return r;
}

} // namespace peakswap

#endif // PEAKSWAP_TRADING_CYCLES_HPP
