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

#ifndef PEAKSWAP_PERMUTATIONS_HPP
#define PEAKSWAP_PERMUTATIONS_HPP

#include <peakswap/domain.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace peakswap {

/// n! for n <= 20.
constexpr std::uint64_t factorial(std::size_t n) noexcept {
    std::uint64_t out = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        out *= k;
    }
    return out;
}

/// The `rank`-th permutation of 0..n-1 in lexicographic order (factorial number system).
inline detail::FixedVector<std::uint8_t, kMaxAgents> unrank_permutation(std::uint64_t rank, std::size_t n) {
    detail::FixedVector<std::uint8_t, kMaxAgents> pool;
    for (std::size_t i = 0; i < n; ++i) {
        pool.push_back(static_cast<std::uint8_t>(i));
    }
    detail::FixedVector<std::uint8_t, kMaxAgents> out;
    for (std::size_t k = n; k > 0; --k) {
        const auto block = factorial(k - 1);
        const auto digit = static_cast<std::size_t>(rank / block);
        rank %= block;
        out.push_back(pool[digit]);
        pool.erase_at(digit);
    }
    return out;
}

/// The `rank`-th allocation of n objects in lexicographic order of words.
inline Assignment assignment_at(std::uint64_t rank, std::size_t n) {
    ObjectWord word;
    for (auto v : unrank_permutation(rank, n)) {
        word.push_back(object_at(v));
    }
    return Assignment(word);
}

/// The `rank`-th order of n agents in lexicographic order of words.
inline AgentOrder order_at(std::uint64_t rank, std::size_t n) {
    AgentWord word;
    for (auto v : unrank_permutation(rank, n)) {
        word.push_back(agent_at(v));
    }
    return AgentOrder(word);
}

/// Every allocation of n objects, lexicographic.
inline std::vector<Assignment> all_assignments(std::size_t n) {
    std::vector<Assignment> out;
    ObjectWord word;
    for (std::size_t i = 0; i < n; ++i) {
        word.push_back(object_at(i));
    }
    do {
        out.emplace_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

/// Every priority order over n agents, lexicographic.
inline std::vector<AgentOrder> all_orders(std::size_t n) {
    std::vector<AgentOrder> out;
    AgentWord word;
    for (std::size_t i = 0; i < n; ++i) {
        word.push_back(agent_at(i));
    }
    do {
        out.emplace_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

/// Decodes a profile index over a per-agent preference list. Agent 1 is the
/// most significant digit, so increasing indices are lexicographic profiles.
inline Profile profile_at(std::uint64_t index, std::size_t n, const std::vector<PreferenceRelation>& domain) {
    Profile profile(n, PreferenceRelation{});
    for (std::size_t i = n; i > 0; --i) {
        profile[i - 1] = domain[index % domain.size()];
        index /= domain.size();
    }
    return profile;
}

/// |domain|^n
inline std::uint64_t profile_count(std::size_t n, std::size_t domain_size) noexcept {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        out *= domain_size;
    }
    return out;
}

} // namespace peakswap

#endif // PEAKSWAP_PERMUTATIONS_HPP
