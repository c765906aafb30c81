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
 * \file peakswap/axioms.hpp
 *
 * \brief Brute-force decision procedures for efficiency, the endowment lower
 *  bound, strategy-proofness, non-bossiness, blocking and the core.
 *
 * Each search returns the first witness in a fixed enumeration order, so
 * witnesses are reproducible.
 */

#ifndef PEAKSWAP_AXIOMS_HPP
#define PEAKSWAP_AXIOMS_HPP

#include <peakswap/domain.hpp>
#include <peakswap/permutations.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace peakswap {

/// Largest n for which allocation and coalition searches run.
inline constexpr std::size_t kExhaustiveBound = 8;

enum class ViolationKind { efficiency, endowment, strategyproofness, bossiness, blocking };

inline const char* to_string(ViolationKind k) noexcept {
    switch (k) {
    case ViolationKind::efficiency: return "efficiency";
    case ViolationKind::endowment: return "endowment";
    case ViolationKind::strategyproofness: return "strategyproofness";
    case ViolationKind::bossiness: return "bossiness";
    case ViolationKind::blocking: return "blocking";
    }
    return "unknown";
}

struct ParetoImprovement {
    Assignment dominating;
};

struct EndowmentShortfall {
    AgentId agent;
    ObjectId received;
    ObjectId endowed;
};

/// Agent `agent` reports `report` instead of the truth.
struct Misreport {
    AgentId agent;
    PreferenceRelation report;
    Assignment truthful;   ///< rule output under the true profile
    Assignment misreported; ///< rule output after the misreport
};

/// Members (ascending) and the objects they receive, in member order.
struct BlockingCoalition {
    AgentWord members;
    ObjectWord objects;
};

struct Violation {
    ViolationKind kind;
    std::variant<ParetoImprovement, EndowmentShortfall, Misreport, BlockingCoalition> witness;
};

enum class MisreportDomain { single_peaked, all_strict };

namespace detail {

inline void require_exhaustive(std::size_t n, const char* what) {
    if (n > kExhaustiveBound) {
        throw capability_error(std::string(what) + " enumerates n! allocations; n = " + std::to_string(n) +
                               " exceeds the bound " + std::to_string(kExhaustiveBound));
    }
}

inline void require_same_size(const Profile& profile, const Assignment& x) {
    require_strict_profile(profile, x.size());
}

/// y_i R_i x_i for all i and y_j P_j x_j for some j, on raw words.
inline bool dominates_words(const ObjectWord& y, const ObjectWord& x, const Profile& profile) noexcept {
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto ry = profile[i].rank_of(y[i]);
        const auto rx = profile[i].rank_of(x[i]);
        if (ry > rx) {
            return false;
        }
        strict = strict || ry < rx;
    }
    return strict;
}

} // namespace detail

/// Pareto dominance of `y` over `x` under `profile`.
inline bool dominates(const Assignment& y, const Assignment& x, const Profile& profile) {
    detail::require_same_size(profile, x);
    detail::require_same_size(profile, y);
    return detail::dominates_words(y.word(), x.word(), profile);
}

/// First allocation (lexicographic) that Pareto-dominates `x`, if any.
inline std::optional<Violation> find_efficiency_violation(const Assignment& x, const Profile& profile) {
    const auto n = x.size();
    detail::require_same_size(profile, x);
    detail::require_exhaustive(n, "efficiency check");
    ObjectWord y = Assignment::identity(n).word();
    do {
        if (detail::dominates_words(y, x.word(), profile)) {
            return Violation{ViolationKind::efficiency, ParetoImprovement{Assignment(y)}};
        }
    } while (std::next_permutation(y.begin(), y.end()));
    return std::nullopt;
}

inline bool is_efficient(const Assignment& x, const Profile& profile) {
    return !find_efficiency_violation(x, profile);
}

/// First agent (lowest index) who strictly prefers the endowment to the assignment.
inline std::optional<Violation> find_endowment_violation(const Assignment& x, const Profile& profile,
                                                         const Assignment& endowment) {
    detail::require_same_size(profile, x);
    detail::require_same_size(profile, endowment);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (profile[i].prefers(endowment.at(i), x.at(i))) {
            return Violation{ViolationKind::endowment, EndowmentShortfall{agent_at(i), x.at(i), endowment.at(i)}};
        }
    }
    return std::nullopt;
}

inline bool meets_endowment_lower_bound(const Assignment& x, const Profile& profile, const Assignment& endowment) {
    return !find_endowment_violation(x, profile, endowment);
}

inline std::vector<PreferenceRelation> misreports(std::size_t n, MisreportDomain domain) {
    return domain == MisreportDomain::single_peaked ? enumerate_single_peaked(n) : enumerate_strict(n);
}

/// Searches agents in index order and reports in domain order for a misreport
/// that hands the agent something strictly better under the true preference.
/// `rule(profile, endowment)` must be total on the misreport domain.
template <typename Rule>
std::optional<Violation> find_strategyproofness_violation(Rule&& rule, const Profile& profile,
                                                          const Assignment& endowment,
                                                          MisreportDomain domain = MisreportDomain::single_peaked) {
    const auto n = endowment.size();
    detail::require_same_size(profile, endowment);
    const Assignment truthful = rule(profile, endowment);
    const auto reports = misreports(n, domain);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& report : reports) {
            if (report == profile[i]) {
                continue;
            }
            const Assignment lied = rule(with_report(profile, agent_at(i), report), endowment);
            if (profile[i].prefers(lied.at(i), truthful.at(i))) {
                return Violation{ViolationKind::strategyproofness, Misreport{agent_at(i), report, truthful, lied}};
            }
        }
    }
    return std::nullopt;
}

/// A misreport that leaves the reporter's assignment unchanged but changes
/// someone else's.
template <typename Rule>
std::optional<Violation> find_bossiness_violation(Rule&& rule, const Profile& profile, const Assignment& endowment,
                                                  MisreportDomain domain = MisreportDomain::single_peaked) {
    const auto n = endowment.size();
    detail::require_same_size(profile, endowment);
    const Assignment truthful = rule(profile, endowment);
    const auto reports = misreports(n, domain);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& report : reports) {
            if (report == profile[i]) {
                continue;
            }
            const Assignment lied = rule(with_report(profile, agent_at(i), report), endowment);
            if (lied.at(i) == truthful.at(i) && lied != truthful) {
                return Violation{ViolationKind::bossiness, Misreport{agent_at(i), report, truthful, lied}};
            }
        }
    }
    return std::nullopt;
}

namespace detail {

/// Coalition bitmasks by size ascending, then lexicographically by member list.
inline const std::vector<std::uint32_t>& coalitions_by_size(std::size_t n) {
    static thread_local std::vector<std::vector<std::uint32_t>> cache(kExhaustiveBound + 1);
    auto& out = cache[n];
    if (out.empty()) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            out.push_back(mask);
        }
        auto members = [](std::uint32_t m) {
            std::vector<int> v;
            for (int i = 0; m; ++i, m >>= 1) {
                if (m & 1u) {
                    v.push_back(i);
                }
            }
            return v;
        };
        std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
            const auto ma = members(a);
            const auto mb = members(b);
            if (ma.size() != mb.size()) {
                return ma.size() < mb.size();
            }
            return ma < mb;
        });
    }
    return out;
}

} // namespace detail

/// First coalition (by size, then member list) and first reallocation of its
/// endowments (lexicographic) making every member weakly and one member
/// strictly better off than under `x`.
inline std::optional<Violation> find_blocking_coalition(const Assignment& x, const Profile& profile,
                                                        const Assignment& endowment) {
    const auto n = x.size();
    detail::require_same_size(profile, x);
    detail::require_same_size(profile, endowment);
    detail::require_exhaustive(n, "blocking search");
    for (std::uint32_t mask : detail::coalitions_by_size(n)) {
        AgentWord members;
        ObjectWord pool;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                members.push_back(agent_at(i));
                pool.push_back(endowment.at(i));
            }
        }
        std::sort(pool.begin(), pool.end());
        do {
            bool strict = false;
            bool weak = true;
            for (std::size_t k = 0; k < members.size() && weak; ++k) {
                const auto& pref = profile[members[k].index];
                const auto ry = pref.rank_of(pool[k]);
                const auto rx = pref.rank_of(x[members[k]]);
                weak = ry <= rx;
                strict = strict || ry < rx;
            }
            if (weak && strict) {
                return Violation{ViolationKind::blocking, BlockingCoalition{members, pool}};
            }
        } while (std::next_permutation(pool.begin(), pool.end()));
    }
    return std::nullopt;
}

/// Every unblocked allocation, in lexicographic order.
inline std::vector<Assignment> core_allocations(const Profile& profile, const Assignment& endowment) {
    const auto n = endowment.size();
    detail::require_same_size(profile, endowment);
    detail::require_exhaustive(n, "core enumeration");
    std::vector<Assignment> out;
    for (const auto& x : all_assignments(n)) {
        if (!find_blocking_coalition(x, profile, endowment)) {
            out.push_back(x);
        }
    }
    return out;
}

} // namespace peakswap

#endif // PEAKSWAP_AXIOMS_HPP
