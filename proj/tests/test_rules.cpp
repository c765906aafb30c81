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

#include "support.hpp"

#include <peakswap/rules.hpp>

#include <gtest/gtest.h>

using namespace peakswap;
using support::alloc;
using support::order;
using support::pref;

TEST(Crawler, FourAgentAscending) {
    const auto r = ascending_crawler(support::four_agent_profile(), Assignment::identity(4));
    EXPECT_EQ(r.allocation, alloc({4, 2, 1, 3}));
}

TEST(Crawler, FourAgentDescending) {
    const auto r = descending_crawler(support::four_agent_profile(), Assignment::identity(4));
    EXPECT_EQ(r.allocation, alloc({4, 2, 1, 3}));
}

TEST(Crawler, FourAgentAscendingTrace) {
    const auto r = ascending_crawler(support::four_agent_profile(), Assignment::identity(4));
    EXPECT_EQ(render_trace(r.trace, default_object_names(4)),
              "step 1: agent 2 takes o2, shifted []\n"
              "step 2: agent 3 takes o1, shifted [1]\n"
              "step 3: agent 4 takes o3, shifted [1]\n"
              "step 4: agent 1 takes o4, shifted []\n");
}

TEST(Crawler, FourAgentDescendingTrace) {
    const auto r = descending_crawler(support::four_agent_profile(), Assignment::identity(4));
    ASSERT_EQ(r.trace.size(), 4u);
    EXPECT_EQ(r.trace[1].agent, agent_at(0));
    EXPECT_EQ(r.trace[1].object, object_at(3));
    EXPECT_EQ(r.trace[1].shifted, (AgentWord{agent_at(2), agent_at(3)}));
}

TEST(Crawler, SevenAgent) {
    EXPECT_EQ(crawler(support::seven_agent_profile(), Assignment::identity(7)), alloc({1, 2, 4, 6, 7, 3, 5}));
    EXPECT_EQ(descending_crawler(support::seven_agent_profile(), Assignment::identity(7)).allocation,
              alloc({1, 2, 4, 6, 7, 3, 5}));
}

TEST(Crawler, PeaksAtEndowmentsAreFixed) {
    const Profile p{pref({3, 2, 1, 4}), pref({1, 2, 3, 4}), pref({4, 3, 2, 1}), pref({2, 1, 3, 4})};
    const auto w = alloc({3, 1, 4, 2});
    EXPECT_EQ(ascending_crawler(p, w).allocation, w);
    EXPECT_EQ(descending_crawler(p, w).allocation, w);
    EXPECT_EQ(ttc(p, w), w);
}

TEST(Crawler, MatchesQuerySweepOracleUpToFour) {
    for (std::size_t n = 1; n <= 4; ++n) {
        support::for_each_instance(n, [](const Profile& p, const Assignment& w) {
            const auto got = crawler(p, w);
            ASSERT_EQ(support::to_word(got), oracle::crawler(support::to_prefs(p), support::to_word(w)))
                << support::text(w);
        });
    }
}

TEST(Crawler, AscendingEqualsDescendingUpToFour) {
    for (std::size_t n = 1; n <= 4; ++n) {
        support::for_each_instance(n, [](const Profile& p, const Assignment& w) {
            ASSERT_EQ(ascending_crawler(p, w).allocation, descending_crawler(p, w).allocation);
        });
    }
}

TEST(Crawler, TraceReplayReconstructsAllocation) {
    for (std::size_t n = 1; n <= 4; ++n) {
        support::for_each_instance(n, [](const Profile& p, const Assignment& w) {
            const auto a = ascending_crawler(p, w);
            const auto d = descending_crawler(p, w);
            ASSERT_EQ(replay_trace(w, a.trace, SweepDirection::ascending), a.allocation);
            ASSERT_EQ(replay_trace(w, d.trace, SweepDirection::descending), d.allocation);
        });
    }
}

TEST(Crawler, TamperedTraceIsRejected) {
    const auto w = Assignment::identity(4);
    auto r = ascending_crawler(support::four_agent_profile(), w);
    r.trace[1].shifted.clear();
    EXPECT_THROW(replay_trace(w, r.trace, SweepDirection::ascending), validation_error);
    r = ascending_crawler(support::four_agent_profile(), w);
    r.trace.pop_back();
    EXPECT_THROW(replay_trace(w, r.trace, SweepDirection::ascending), validation_error);
}

TEST(Crawler, StepsAreNumberedAndObjectsLive) {
    support::for_each_instance(3, [](const Profile& p, const Assignment& w) {
        const auto r = ascending_crawler(p, w);
        std::set<std::size_t> taken;
        for (std::size_t k = 0; k < r.trace.size(); ++k) {
            EXPECT_EQ(r.trace[k].step, k + 1);
            EXPECT_TRUE(taken.insert(r.trace[k].object.index).second);
        }
    });
}

TEST(Crawler, RejectsNonSinglePeakedProfile) {
    const Profile p{pref({1, 3, 2}), pref({1, 2, 3}), pref({1, 2, 3})};
    EXPECT_THROW(ascending_crawler(p, Assignment::identity(3)), validation_error);
    EXPECT_THROW(descending_crawler(p, Assignment::identity(3)), validation_error);
    EXPECT_THROW(crawler(p, Assignment::identity(3)), validation_error);
}

TEST(Crawler, RejectsSizeMismatch) {
    EXPECT_THROW(crawler(support::four_agent_profile(), Assignment::identity(3)), validation_error);
}

TEST(Ttc, FourAgent) { EXPECT_EQ(ttc(support::four_agent_profile(), Assignment::identity(4)), alloc({4, 2, 3, 1})); }

TEST(Ttc, ThreeAgentDemonstration) {
    for (const auto& first : {pref({2, 1, 3}), pref({2, 3, 1})}) {
        const Profile p{first, pref({1, 2, 3}), pref({1, 2, 3})};
        EXPECT_EQ(ttc(p, Assignment::identity(3)), alloc({2, 1, 3}));
    }
}

TEST(Ttc, UniqueCoreAllocationOnStrictProfiles) {
    const auto prefs = enumerate_strict(3);
    for (const auto& a : prefs) {
        for (const auto& b : prefs) {
            for (const auto& c : prefs) {
                const Profile p{a, b, c};
                for (const auto& w : all_assignments(3)) {
                    const auto core = oracle::core(support::to_prefs(p), support::to_word(w));
                    ASSERT_EQ(core.size(), 1u);
                    ASSERT_EQ(support::to_word(ttc(p, w)), core.front());
                }
            }
        }
    }
}

TEST(SequentialPriority, FourAgentIdentityOrder) {
    EXPECT_EQ(sequential_priority(support::four_agent_profile(), AgentOrder::identity(4)), alloc({4, 2, 1, 3}));
}

TEST(SequentialPriority, SevenAgentOrder) {
    EXPECT_EQ(sequential_priority(support::seven_agent_profile(), order({5, 2, 4, 7, 3, 6, 1})),
              alloc({1, 2, 4, 6, 7, 3, 5}));
}

TEST(SequentialPriority, CommonRankingFollowsOrder) {
    const auto common = pref({3, 1, 4, 2});
    const Profile p{common, common, common, common};
    const auto f = order({2, 4, 1, 3});
    const auto x = sequential_priority(p, f);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(x[f.at_rank(k)], common.at(k));
    }
}

TEST(SequentialPriority, MatchesEnvyOrderCharacterization) {
    const auto prefs = enumerate_strict(3);
    for (const auto& a : prefs) {
        for (const auto& b : prefs) {
            for (const auto& c : prefs) {
                const Profile p{a, b, c};
                const auto op = support::to_prefs(p);
                for (const auto& f : all_orders(3)) {
                    const auto x = sequential_priority(p, f);
                    for (const auto& y : all_assignments(3)) {
                        ASSERT_EQ(x == y, oracle::order_reproduces(op, support::to_word(f), support::to_word(y)));
                    }
                }
            }
        }
    }
}

TEST(SequentialPriority, RejectsMismatchedOrder) {
    EXPECT_THROW(sequential_priority(support::four_agent_profile(), AgentOrder::identity(3)), validation_error);
    EXPECT_THROW(support::order({1, 1, 2}), validation_error);
}

TEST(Rules, OutputsArePermutationsAndDivergenceExists) {
    bool diverged = false;
    for (std::size_t n = 1; n <= 4; ++n) {
        support::for_each_instance(n, [&](const Profile& p, const Assignment& w) {
            const auto c = crawler(p, w);
            const auto t = ttc(p, w);
            ASSERT_TRUE(detail::is_permutation_of_indices(c.word().view(), n));
            ASSERT_TRUE(detail::is_permutation_of_indices(t.word().view(), n));
            diverged = diverged || c != t;
        });
    }
    EXPECT_TRUE(diverged);
}
