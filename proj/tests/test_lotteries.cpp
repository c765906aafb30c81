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

#include <peakswap/lotteries.hpp>

#include <gtest/gtest.h>

using namespace peakswap;
using support::alloc;
using support::pref;

namespace {

void expect_entries(const RationalLottery& l, const std::vector<std::pair<Assignment, std::uint64_t>>& want) {
    ASSERT_EQ(l.entries().size(), want.size());
    for (const auto& [x, c] : want) {
        EXPECT_EQ(l.numerator(x), c) << support::text(x);
    }
    EXPECT_EQ(l.total(), l.denominator());
}

oracle::Counts to_counts(const RationalLottery& l) {
    oracle::Counts c;
    for (const auto& [x, k] : l.entries()) {
        c[support::to_word(x)] = k;
    }
    return c;
}

}  // namespace

TEST(RandomPriority, ContestedPair) {
    const Profile p{pref({1, 2}), pref({1, 2})};
    expect_entries(random_priority(p), {{alloc({1, 2}), 1}, {alloc({2, 1}), 1}});
    EXPECT_EQ(random_priority(p).denominator(), 2u);
}

TEST(RandomPriority, OpposedPair) {
    const Profile p{pref({1, 2}), pref({2, 1})};
    expect_entries(random_priority(p), {{alloc({1, 2}), 2}});
}

TEST(RandomPriority, CommonRankingIsUniform) {
    const auto c = pref({1, 2, 3});
    const auto l = random_priority(Profile{c, c, c});
    ASSERT_EQ(l.entries().size(), 6u);
    for (const auto& [x, k] : l.entries()) {
        EXPECT_EQ(k, 1u);
    }
}

TEST(CrawlerLottery, ContestedPair) {
    const Profile p{pref({1, 2}), pref({1, 2})};
    expect_entries(crawler_from_random_endowments(p), {{alloc({1, 2}), 1}, {alloc({2, 1}), 1}});
}

TEST(CrawlerLottery, OpposedPair) {
    const Profile p{pref({1, 2}), pref({2, 1})};
    expect_entries(crawler_from_random_endowments(p), {{alloc({1, 2}), 2}});
}

TEST(CrawlerLottery, RejectsNonSinglePeaked) {
    const Profile p{pref({1, 3, 2}), pref({1, 2, 3}), pref({1, 2, 3})};
    EXPECT_THROW(crawler_from_random_endowments(p), validation_error);
    EXPECT_NO_THROW(core_from_random_endowments(p));
    EXPECT_NO_THROW(random_priority(p));
}

TEST(CoreLottery, ContestedAndOpposedPairs) {
    expect_entries(core_from_random_endowments(Profile{pref({1, 2}), pref({1, 2})}),
                   {{alloc({1, 2}), 1}, {alloc({2, 1}), 1}});
    expect_entries(core_from_random_endowments(Profile{pref({1, 2}), pref({2, 1})}), {{alloc({1, 2}), 2}});
}

TEST(Lotteries, MatchOracleCountsUpToFour) {
    for (std::size_t n = 1; n <= 4; ++n) {
        support::for_each_profile(n, [](const Profile& p) {
            const auto op = support::to_prefs(p);
            ASSERT_EQ(to_counts(crawler_from_random_endowments(p)), oracle::crawler_counts(op));
            ASSERT_EQ(to_counts(random_priority(p)), oracle::priority_counts(op));
        });
    }
}

TEST(Lotteries, CrawlerEqualsRandomPriorityUpToThree) {
    for (std::size_t n = 1; n <= 3; ++n) {
        support::for_each_profile(n, [](const Profile& p) {
            const auto rcr = crawler_from_random_endowments(p);
            ASSERT_TRUE(lotteries_equal(rcr, random_priority(p)));
            ASSERT_TRUE(lotteries_equal(rcr, core_from_random_endowments(p)));
        });
    }
}

TEST(Lotteries, CoreEqualsRandomPriorityOnStrictThree) {
    const auto prefs = enumerate_strict(3);
    for (const auto& a : prefs) {
        for (const auto& b : prefs) {
            for (const auto& c : prefs) {
                const Profile p{a, b, c};
                ASSERT_TRUE(lotteries_equal(core_from_random_endowments(p), random_priority(p)));
            }
        }
    }
}

TEST(Lotteries, WorkerCountDoesNotMatter) {
    const auto p = support::seven_agent_profile();
    const auto one = crawler_from_random_endowments(p, 1);
    EXPECT_EQ(one, crawler_from_random_endowments(p, 3));
    EXPECT_EQ(one, crawler_from_random_endowments(p, 8));
    EXPECT_EQ(one.total(), 5040u);
    EXPECT_EQ(random_priority(p, 1), random_priority(p, 5));
}

TEST(Lotteries, KernelIsOrderIndependent) {
    const auto p = support::four_agent_profile();
    const auto forward = accumulate_lottery(4, [&](std::uint64_t k) { return ttc(p, assignment_at(k, 4)); });
    const auto backward = accumulate_lottery(4, [&](std::uint64_t k) { return ttc(p, assignment_at(23 - k, 4)); });
    EXPECT_EQ(forward, backward);
}

TEST(Lotteries, EqualToItself) {
    const auto l = random_priority(support::four_agent_profile());
    const auto c = lotteries_equal(l, l);
    EXPECT_TRUE(c.equal);
    EXPECT_FALSE(c.first_difference);
}

TEST(Lotteries, FirstDifferenceIsReported) {
    const auto a = RationalLottery::point(alloc({1, 2}));
    const auto b = RationalLottery::point(alloc({2, 1}));
    const auto c = lotteries_equal(a, b);
    EXPECT_FALSE(c.equal);
    ASSERT_TRUE(c.first_difference);
    EXPECT_EQ(*c.first_difference, alloc({1, 2}));
    EXPECT_EQ(c.left, 2u);
    EXPECT_EQ(c.right, 0u);
}

TEST(Lotteries, CountDifferenceIsReported) {
    RationalLottery a(2);
    a.add(alloc({1, 2}), 1);
    a.add(alloc({2, 1}), 1);
    const auto c = lotteries_equal(a, RationalLottery::point(alloc({2, 1})));
    EXPECT_FALSE(c.equal);
    EXPECT_EQ(*c.first_difference, alloc({1, 2}));
}

TEST(Lotteries, MismatchedSizeIsADomainError) {
    EXPECT_THROW(lotteries_equal(RationalLottery::point(alloc({1, 2})), RationalLottery::point(alloc({1, 2, 3}))),
                 domain_error);
}

TEST(Lotteries, BeyondFactorialBound) {
    Profile p;
    const auto n = kFactorialBound + 1;
    for (std::size_t i = 0; i < n; ++i) {
        p.push_back(enumerate_single_peaked(n).front());
    }
    EXPECT_THROW(random_priority(p), capability_error);
    EXPECT_THROW(crawler_from_random_endowments(p), capability_error);
}

TEST(Lotteries, CsvIsSortedWithHeader) {
    const Profile p{pref({1, 2}), pref({1, 2})};
    EXPECT_EQ(to_csv(random_priority(p), {"left", "right"}),
              "allocation,numerator,denominator\nleft-right,1,2\nright-left,1,2\n");
}
