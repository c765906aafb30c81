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

#ifndef PEAKSWAP_TESTS_SUPPORT_HPP
#define PEAKSWAP_TESTS_SUPPORT_HPP

#include "oracles.hpp"

#include <peakswap/domain.hpp>
#include <peakswap/permutations.hpp>

#include <functional>
#include <string>
#include <vector>

namespace support {

using namespace peakswap;

inline oracle::Word to_word(const Assignment& x) {
    oracle::Word w;
    for (ObjectId o : x.word()) {
        w.push_back(o.index);
    }
    return w;
}

inline oracle::Word to_word(const AgentOrder& f) {
    oracle::Word w;
    for (AgentId a : f.agents_by_rank()) {
        w.push_back(a.index);
    }
    return w;
}

inline oracle::Prefs to_prefs(const Profile& p) {
    oracle::Prefs out;
    for (const auto& pref : p) {
        oracle::Word w;
        for (ObjectId o : pref.ranking()) {
            w.push_back(o.index);
        }
        out.push_back(w);
    }
    return out;
}

inline Assignment to_assignment(const oracle::Word& w) {
    ObjectWord word;
    for (int o : w) {
        word.push_back(object_at(static_cast<std::size_t>(o)));
    }
    return Assignment(word);
}

inline PreferenceRelation pref(std::initializer_list<int> one_based) {
    ObjectWord word;
    for (int o : one_based) {
        word.push_back(object_at(static_cast<std::size_t>(o - 1)));
    }
    return PreferenceRelation(word);
}

inline Assignment alloc(std::initializer_list<int> one_based) {
    ObjectWord word;
    for (int o : one_based) {
        word.push_back(object_at(static_cast<std::size_t>(o - 1)));
    }
    return Assignment(word);
}

inline AgentOrder order(std::initializer_list<int> one_based) {
    AgentWord word;
    for (int a : one_based) {
        word.push_back(agent_at(static_cast<std::size_t>(a - 1)));
    }
    return AgentOrder(word);
}

// Worked four-agent problem, identity endowment.
inline Profile four_agent_profile() {
    return Profile{pref({4, 3, 2, 1}), pref({2, 1, 3, 4}), pref({1, 2, 3, 4}), pref({2, 1, 3, 4})};
}

// Worked seven-agent problem, identity endowment.
inline Profile seven_agent_profile() {
    return Profile{pref({7, 6, 5, 4, 3, 2, 1}), pref({2, 1, 3, 4, 5, 6, 7}), pref({7, 6, 5, 4, 3, 2, 1}),
                   pref({6, 7, 5, 4, 3, 2, 1}), pref({7, 6, 5, 4, 3, 2, 1}), pref({3, 4, 2, 5, 1, 6, 7}),
                   pref({5, 6, 4, 7, 3, 2, 1})};
}

// Calls fn(profile) for every single-peaked profile of n agents.
inline void for_each_profile(std::size_t n, const std::function<void(const Profile&)>& fn) {
    const auto domain = enumerate_single_peaked(n);
    for (std::uint64_t k = 0; k < profile_count(n, domain.size()); ++k) {
        fn(profile_at(k, n, domain));
    }
}

// Calls fn(profile, endowment) for every single-peaked profile and endowment.
inline void for_each_instance(std::size_t n, const std::function<void(const Profile&, const Assignment&)>& fn) {
    const auto endowments = all_assignments(n);
    for_each_profile(n, [&](const Profile& p) {
        for (const auto& w : endowments) {
            fn(p, w);
        }
    });
}

inline std::string text(const Assignment& x) { return detail::word_text(x.word()); }
inline std::string text(const AgentOrder& f) { return detail::word_text(f.agents_by_rank()); }

}  // namespace support

#endif  // PEAKSWAP_TESTS_SUPPORT_HPP
