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

#include <peakswap/axioms.hpp>
#include <peakswap/rules.hpp>

#include <gtest/gtest.h>

using namespace peakswap;
using support::alloc;
using support::pref;

namespace {

const auto acr_rule = [](const Profile& p, const Assignment& w) { return ascending_crawler(p, w).allocation; };
const auto dcr_rule = [](const Profile& p, const Assignment& w) { return descending_crawler(p, w).allocation; };
const auto ttc_rule = [](const Profile& p, const Assignment& w) { return ttc(p, w); };

}  // namespace

TEST(Efficiency, CrawlerOutcomeIsEfficient) {
    const auto p = support::four_agent_profile();
    EXPECT_TRUE(is_efficient(alloc({4, 2, 1, 3}), p));
}

TEST(Efficiency, EndowmentIsDominated) {
    const auto p = support::four_agent_profile();
    const auto v = find_efficiency_violation(Assignment::identity(4), p);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->kind, ViolationKind::efficiency);
    const auto& y = std::get<ParetoImprovement>(v->witness).dominating;
    EXPECT_TRUE(dominates(y, Assignment::identity(4), p));
    EXPECT_TRUE(dominates(alloc({4, 2, 1, 3}), Assignment::identity(4), p));
}

TEST(Efficiency, IdenticalPreferencesMakeEverythingEfficient) {
    const auto common = pref({2, 3, 1, 4});
    const Profile p{common, common, common, common};
    for (const auto& x : all_assignments(4)) {
        EXPECT_TRUE(is_efficient(x, p));
    }
}

TEST(Efficiency, AgreesWithOracle) {
    support::for_each_profile(3, [](const Profile& p) {
        for (const auto& x : all_assignments(3)) {
            const auto v = find_efficiency_violation(x, p);
            ASSERT_EQ(!v, oracle::efficient(support::to_prefs(p), support::to_word(x)));
            if (v) {
                ASSERT_TRUE(dominates(std::get<ParetoImprovement>(v->witness).dominating, x, p));
            }
        }
    });
}

TEST(Efficiency, BeyondBoundIsACapabilityError) {
    Profile p;
    for (std::size_t i = 0; i < kExhaustiveBound + 1; ++i) {
        p.push_back(enumerate_single_peaked(kExhaustiveBound + 1).front());
    }
    EXPECT_THROW(is_efficient(Assignment::identity(kExhaustiveBound + 1), p), capability_error);
}

TEST(EndowmentBound, EndowmentMeetsIt) {
    EXPECT_TRUE(meets_endowment_lower_bound(Assignment::identity(4), support::four_agent_profile(),
                                            Assignment::identity(4)));
}

TEST(EndowmentBound, CrawlerOutcomeMeetsIt) {
    EXPECT_TRUE(meets_endowment_lower_bound(alloc({4, 2, 1, 3}), support::four_agent_profile(),
                                            Assignment::identity(4)));
}

TEST(EndowmentBound, WitnessIsFirstLosingAgent) {
    const auto v =
        find_endowment_violation(alloc({1, 2, 4, 3}), support::four_agent_profile(), Assignment::identity(4));
    ASSERT_TRUE(v);
    const auto& w = std::get<EndowmentShortfall>(v->witness);
    EXPECT_EQ(w.agent, agent_at(2));
    EXPECT_EQ(w.received, object_at(3));
    EXPECT_EQ(w.endowed, object_at(2));
}

TEST(StrategyProofness, CrawlersAndTtcUpToThree) {
    for (std::size_t n = 1; n <= 3; ++n) {
        support::for_each_instance(n, [](const Profile& p, const Assignment& w) {
            ASSERT_FALSE(find_strategyproofness_violation(acr_rule, p, w));
            ASSERT_FALSE(find_strategyproofness_violation(dcr_rule, p, w));
            ASSERT_FALSE(find_strategyproofness_violation(ttc_rule, p, w, MisreportDomain::all_strict));
        });
    }
}

TEST(StrategyProofness, SequentialPriorityOverStrictReports) {
    const auto prefs = enumerate_strict(3);
    for (const auto& f : all_orders(3)) {
        auto rule = [&](const Profile& p, const Assignment&) { return sequential_priority(p, f); };
        for (const auto& a : prefs) {
            for (const auto& b : prefs) {
                for (const auto& c : prefs) {
                    ASSERT_FALSE(find_strategyproofness_violation(rule, Profile{a, b, c}, Assignment::identity(3),
                                                                  MisreportDomain::all_strict));
                }
            }
        }
    }
}

TEST(StrategyProofness, ManipulableRuleIsCaught) {
    // everyone gets the object its own report ranks last, shifted by agent
    auto rule = [](const Profile& p, const Assignment&) {
        const auto n = p.size();
        const auto last = p[0].ranking()[n - 1].index;
        ObjectWord w;
        for (std::size_t i = 0; i < n; ++i) {
            w.push_back(object_at((last + i) % n));
        }
        return Assignment(w);
    };
    const Profile p{pref({1, 2, 3}), pref({2, 1, 3}), pref({3, 2, 1})};
    const auto v = find_strategyproofness_violation(rule, p, Assignment::identity(3));
    ASSERT_TRUE(v);
    const auto& m = std::get<Misreport>(v->witness);
    EXPECT_EQ(m.agent, agent_at(0));
    EXPECT_TRUE(p[0].prefers(m.misreported.at(0), m.truthful.at(0)));
    EXPECT_EQ(rule(with_report(p, m.agent, m.report), Assignment::identity(3)), m.misreported);
}

TEST(Bossiness, CrawlersAndTtcUpToThree) {
    for (std::size_t n = 1; n <= 3; ++n) {
        support::for_each_instance(n, [](const Profile& p, const Assignment& w) {
            ASSERT_FALSE(find_bossiness_violation(acr_rule, p, w));
            ASSERT_FALSE(find_bossiness_violation(dcr_rule, p, w));
            ASSERT_FALSE(find_bossiness_violation(ttc_rule, p, w));
        });
    }
}

TEST(Bossiness, BossyRuleIsCaught) {
    // agent 1 keeps o1 and decides whether agents 2 and 3 swap
    auto rule = [](const Profile& p, const Assignment&) {
        return p[0].at(1) == object_at(1) ? Assignment::of({0, 1, 2}) : Assignment::of({0, 2, 1});
    };
    const Profile p{pref({1, 2, 3}), pref({2, 1, 3}), pref({3, 2, 1})};
    const auto v = find_bossiness_violation(rule, p, Assignment::identity(3), MisreportDomain::all_strict);
    ASSERT_TRUE(v);
    const auto& m = std::get<Misreport>(v->witness);
    EXPECT_EQ(m.truthful.at(m.agent.index), m.misreported.at(m.agent.index));
    EXPECT_NE(m.truthful, m.misreported);
}

TEST(Bossiness, SingleAgentHasNoneToAffect) {
    const Profile p{pref({1})};
    EXPECT_FALSE(find_bossiness_violation(acr_rule, p, Assignment::identity(1)));
}

TEST(Blocking, EndowmentIsBlockedBySmallestCoalition) {
    const auto p = support::four_agent_profile();
    const auto v = find_blocking_coalition(Assignment::identity(4), p, Assignment::identity(4));
    ASSERT_TRUE(v);
    const auto& b = std::get<BlockingCoalition>(v->witness);
    // smallest blocking coalition found first; verify it blocks
    bool strict = false;
    for (std::size_t k = 0; k < b.members.size(); ++k) {
        const auto& pr = p[b.members[k].index];
        EXPECT_TRUE(pr.weakly_prefers(b.objects[k], object_at(b.members[k].index)));
        strict = strict || pr.prefers(b.objects[k], object_at(b.members[k].index));
    }
    EXPECT_TRUE(strict);
    EXPECT_EQ(b.members, (AgentWord{agent_at(0), agent_at(2)}));
}

TEST(Blocking, TtcIsNeverBlocked) {
    support::for_each_instance(3, [](const Profile& p, const Assignment& w) {
        ASSERT_FALSE(find_blocking_coalition(ttc(p, w), p, w));
    });
}

TEST(Blocking, SingleAgent) {
    EXPECT_FALSE(find_blocking_coalition(Assignment::identity(1), Profile{pref({1})}, Assignment::identity(1)));
}

TEST(Core, FourAgent) {
    const auto core = core_allocations(support::four_agent_profile(), Assignment::identity(4));
    ASSERT_EQ(core.size(), 1u);
    EXPECT_EQ(core.front(), alloc({4, 2, 3, 1}));
}

TEST(Core, PeaksAtEndowments) {
    const Profile p{pref({2, 1, 3}), pref({3, 2, 1}), pref({1, 2, 3})};
    const auto w = alloc({2, 3, 1});
    EXPECT_EQ(core_allocations(p, w), std::vector<Assignment>{w});
}

TEST(Core, ThreeAgentDemonstration) {
    const Profile p{pref({2, 1, 3}), pref({1, 2, 3}), pref({1, 2, 3})};
    EXPECT_EQ(core_allocations(p, Assignment::identity(3)), std::vector<Assignment>{alloc({2, 1, 3})});
}

TEST(Core, AgreesWithOracleAndBlockingSearch) {
    support::for_each_instance(3, [](const Profile& p, const Assignment& w) {
        const auto core = core_allocations(p, w);
        std::vector<oracle::Word> words;
        for (const auto& x : core) {
            words.push_back(support::to_word(x));
        }
        ASSERT_EQ(words, oracle::core(support::to_prefs(p), support::to_word(w)));
        for (const auto& x : all_assignments(3)) {
            const bool in_core = std::find(core.begin(), core.end(), x) != core.end();
            ASSERT_EQ(in_core, !find_blocking_coalition(x, p, w));
        }
    });
}

TEST(Core, AgreesWithOracleOnFourAgentSample) {
    const auto domain = enumerate_single_peaked(4);
    const auto endowments = all_assignments(4);
    for (std::uint64_t k = 0; k < profile_count(4, domain.size()); k += 97) {
        const auto p = profile_at(k, 4, domain);
        const auto& w = endowments[k % endowments.size()];
        const auto core = core_allocations(p, w);
        ASSERT_EQ(core.size(), 1u);
        ASSERT_EQ(support::to_word(core.front()), oracle::core(support::to_prefs(p), support::to_word(w)).front());
    }
}
