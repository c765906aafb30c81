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
 * \file peakswap/rules.hpp
 *
 * \brief Deterministic allocation rules: the ascending and descending
 *  crawlers, Top Trading Cycles and sequential priority.
 *
 * The crawler sweeps agents left to right in the order of the objects they
 * currently own. The first agent who weakly prefers its current object to
 * the live object on its right receives its best live object; everyone whose
 * ownership lies between that object and the leaver's position moves one spot
 * to the right. The descending crawler is the same sweep on the reflected
 * axis.
 */

#ifndef PEAKSWAP_RULES_HPP
#define PEAKSWAP_RULES_HPP

#include <peakswap/domain.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap {

/// One removal performed by a crawler sweep.
struct StepTrace {
    std::size_t step = 0; ///< 1-based
    AgentId agent;
    ObjectId object;
    AgentWord shifted; ///< agents whose ownership moved one spot, in axis order

    friend bool operator==(const StepTrace&, const StepTrace&) = default;
};

struct CrawlResult {
    Assignment allocation;
    std::vector<StepTrace> trace;
};

enum class SweepDirection { ascending, descending };

/// Live agents and objects of an ascending sweep. The agent at position t
/// owns the live object at position t.
class SweepState {
public:
    explicit SweepState(const Assignment& endowment) {
        const auto owners = endowment.owners();
        for (std::size_t t = 0; t < endowment.size(); ++t) {
            agents_.push_back(owners[t]);
            objects_.push_back(object_at(t));
        }
    }

    std::size_t size() const noexcept { return agents_.size(); }
    bool done() const noexcept { return agents_.empty(); }
    const AgentWord& live_agents() const noexcept { return agents_; }
    const ObjectWord& live_objects() const noexcept { return objects_; }

    /// Object currently owned by the live agent at position t.
    ObjectId ownership_at(std::size_t t) const noexcept { return objects_[t]; }

    /// Leftmost position t whose agent prefers live object t to live object t+1.
    /// The rightmost agent always qualifies.
    std::size_t first_qualifying(const Profile& profile) const noexcept {
        const auto last = agents_.size() - 1;
        for (std::size_t t = 0; t < last; ++t) {
            if (profile[agents_[t].index].prefers(objects_[t], objects_[t + 1])) {
                return t;
            }
        }
        return last;
    }

    /// Position of the live object `pref` ranks best.
    std::size_t best_live(const PreferenceRelation& pref) const noexcept {
        std::size_t best = 0;
        for (std::size_t q = 1; q < objects_.size(); ++q) {
            if (pref.prefers(objects_[q], objects_[best])) {
                best = q;
            }
        }
        return best;
    }

    /// Removes the agent at position `t` together with the object at position
    /// `q <= t`; agents at positions q..t-1 move one spot to the right.
    StepTrace remove(std::size_t t, std::size_t q, std::size_t step) {
        StepTrace out{step, agents_[t], objects_[q], {}};
        for (std::size_t p = q; p < t; ++p) {
            out.shifted.push_back(agents_[p]);
        }
        agents_.erase_at(t);
        objects_.erase_at(q);
        return out;
    }

private:
    AgentWord agents_;
    ObjectWord objects_;
};

namespace detail {

inline void require_assignment(const Assignment& a, std::size_t n, const char* what) {
    if (a.size() != n) {
        throw validation_error(std::string(what) + " has " + std::to_string(a.size()) + " entries for " +
                               std::to_string(n) + " agents");
    }
}

template <bool WithTrace>
Assignment ascending_sweep(const Profile& profile, const Assignment& endowment, std::vector<StepTrace>* trace) {
    const auto n = endowment.size();
    SweepState state(endowment);
    ObjectWord result(n, ObjectId{});
    for (std::size_t step = 1; !state.done(); ++step) {
        const auto t = state.first_qualifying(profile);
        const auto agent = state.live_agents()[t];
        const auto q = state.best_live(profile[agent.index]);
        result[agent.index] = state.live_objects()[q];
        if constexpr (WithTrace) {
            trace->push_back(state.remove(t, q, step));
        } else {
            state.remove(t, q, step);
        }
    }
    return Assignment(result);
}

} // namespace detail

/// The crawler CR^w(P) without validation or tracing. `profile` must be
/// single-peaked and `endowment` a permutation of matching size.
inline Assignment crawler_unchecked(const Profile& profile, const Assignment& endowment) {
    return detail::ascending_sweep<false>(profile, endowment, nullptr);
}

/// Ascending crawler with its step trace. Throws validation_error on a
/// malformed or non-single-peaked problem.
inline CrawlResult ascending_crawler(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_single_peaked_profile(profile, n);
    CrawlResult out;
    out.allocation = detail::ascending_sweep<true>(profile, endowment, &out.trace);
    return out;
}

/// Right-to-left sweep, computed as the ascending sweep on the reflected axis.
/// Trace objects are reported on the original axis; shifts move leftwards.
inline CrawlResult descending_crawler(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_single_peaked_profile(profile, n);
    CrawlResult mirrored;
    mirrored.allocation = detail::ascending_sweep<true>(reflected(profile), endowment.reflected(), &mirrored.trace);
    CrawlResult out;
    out.allocation = mirrored.allocation.reflected();
    for (auto step : mirrored.trace) {
        step.object = object_at(n - 1 - step.object.index);
        std::reverse(step.shifted.begin(), step.shifted.end());
        out.trace.push_back(step);
    }
    return out;
}

/// CR^w(P): the crawler parameterized by the endowment, as used by the lotteries.
inline Assignment crawler(const Profile& profile, const Assignment& endowment) {
    detail::require_single_peaked_profile(profile, endowment.size());
    return crawler_unchecked(profile, endowment);
}

/// Replays a crawler trace from `endowment`, checking at every step that the
/// recorded shifts are exactly the agents owning objects between the taken
/// object and the leaver. Returns the reconstructed allocation.
inline Assignment replay_trace(const Assignment& endowment, std::span<const StepTrace> trace,
                               SweepDirection direction) {
    const auto n = endowment.size();
    ObjectWord live;
    for (std::size_t t = 0; t < n; ++t) {
        live.push_back(object_at(t));
    }
    // owned[i]: object currently owned by live agent i
    ObjectWord owned = endowment.word();
    detail::FixedVector<bool, kMaxAgents> gone(n, false);
    ObjectWord result(n, ObjectId{});
    if (trace.size() != n) {
        throw validation_error("trace has " + std::to_string(trace.size()) + " steps for " + std::to_string(n) +
                               " agents");
    }
    auto position = [&](ObjectId o) -> std::size_t {
        for (std::size_t p = 0; p < live.size(); ++p) {
            if (live[p] == o) {
                return p;
            }
        }
        throw validation_error("trace takes an object that is no longer live");
    };
    for (const auto& step : trace) {
        if (step.agent.index >= n || gone[step.agent.index]) {
            throw validation_error("trace assigns an agent twice");
        }
        const auto q = position(step.object);
        const auto t = position(owned[step.agent.index]);
        const bool asc = direction == SweepDirection::ascending;
        if (asc ? q > t : q < t) {
            throw validation_error("trace moves an object against the sweep direction");
        }
        AgentWord expected;
        const auto lo = asc ? q : t + 1;
        const auto hi = asc ? t : q + 1;
        for (std::size_t p = lo; p < hi; ++p) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!gone[i] && owned[i] == live[p]) {
                    expected.push_back(agent_at(i));
                }
            }
        }
        if (expected != step.shifted) {
            throw validation_error("trace step " + std::to_string(step.step) + " shifts the wrong agents");
        }
        for (AgentId a : step.shifted) {
            const auto p = position(owned[a.index]);
            owned[a.index] = live[asc ? p + 1 : p - 1];
        }
        result[step.agent.index] = step.object;
        gone[step.agent.index] = true;
        live.erase_at(q);
    }
    return Assignment(result);
}

/// Default object names o1..on.
inline std::vector<std::string> default_object_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t t = 0; t < n; ++t) {
        out.push_back("o" + std::to_string(t + 1));
    }
    return out;
}

/// One line per step: `step 2: agent 3 takes o1, shifted [1]`. Agents are 1-based.
inline std::string render_trace(std::span<const StepTrace> trace, const std::vector<std::string>& object_names) {
    std::ostringstream os;
    for (const auto& step : trace) {
        os << "step " << step.step << ": agent " << step.agent.index + 1 << " takes "
           << object_names.at(step.object.index) << ", shifted [";
        for (std::size_t k = 0; k < step.shifted.size(); ++k) {
            os << (k ? "," : "") << step.shifted[k].index + 1;
        }
        os << "]\n";
    }
    return os.str();
}

/// Top Trading Cycles. Single-peakedness is not required.
inline Assignment ttc(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_strict_profile(profile, n);
    const auto owner = endowment.owners();
    detail::FixedVector<bool, kMaxAgents> live(n, true);
    ObjectWord result(n, ObjectId{});
    std::size_t remaining = n;
    while (remaining > 0) {
        // each live agent points to the owner of its best live object
        detail::FixedVector<std::uint8_t, kMaxAgents> target(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!live[i]) {
                continue;
            }
            for (ObjectId o : profile[i].ranking()) {
                if (live[owner[o.index].index]) {
                    target[i] = owner[o.index].index;
                    break;
                }
            }
        }
        // every live agent reaches a cycle; clear all cycles of this round
        detail::FixedVector<std::uint8_t, kMaxAgents> mark(n, 0); // 0 new, 1 on stack, 2 finished
        detail::FixedVector<bool, kMaxAgents> trades(n, false);
        for (std::size_t start = 0; start < n; ++start) {
            if (!live[start] || mark[start]) {
                continue;
            }
            std::size_t i = start;
            while (mark[i] == 0) {
                mark[i] = 1;
                i = target[i];
            }
            if (mark[i] == 1) {
                std::size_t j = i;
                do {
                    trades[j] = true;
                    j = target[j];
                } while (j != i);
            }
            for (std::size_t k = start; mark[k] == 1; k = target[k]) {
                mark[k] = 2;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (trades[i]) {
                result[i] = endowment.at(target[i]);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (trades[i]) {
                live[i] = false;
                --remaining;
            }
        }
    }
    return Assignment(result);
}

/// Serial dictatorship: agents pick their best remaining object in order.
inline Assignment sequential_priority(const Profile& profile, const AgentOrder& order) {
    const auto n = order.size();
    detail::require_strict_profile(profile, n);
    detail::FixedVector<bool, kMaxAgents> taken(n, false);
    ObjectWord result(n, ObjectId{});
    for (AgentId i : order.agents_by_rank()) {
        for (ObjectId o : profile[i.index].ranking()) {
            if (!taken[o.index]) {
                taken[o.index] = true;
                result[i.index] = o;
                break;
            }
        }
    }
    return Assignment(result);
}

} // namespace peakswap

#endif // PEAKSWAP_RULES_HPP
