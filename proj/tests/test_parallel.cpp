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

#include <peakswap/parallel.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <stdexcept>

using namespace peakswap;

TEST(Parallel, PartitionCoversRangeContiguously) {
    for (std::uint64_t total : {0ull, 1ull, 5ull, 97ull, 1000ull}) {
        for (unsigned jobs : {1u, 2u, 3u, 8u, 200u}) {
            const auto parts = partition_range(total, jobs);
            ASSERT_FALSE(parts.empty());
            EXPECT_LE(parts.size(), std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, total)));
            std::uint64_t at = 0;
            for (const auto& r : parts) {
                EXPECT_EQ(r.begin, at);
                at = r.end;
            }
            EXPECT_EQ(at, total);
            // slices differ in length by at most one
            const auto len = [](const IndexRange& r) { return r.end - r.begin; };
            EXPECT_LE(len(parts.front()) - len(parts.back()), 1u);
        }
    }
}

TEST(Parallel, ZeroJobsMeansOne) {
    EXPECT_EQ(partition_range(10, 0).size(), 1u);
}

TEST(Parallel, ResultsComeBackInSliceOrder) {
    const auto parts = parallel_slices<std::vector<std::uint64_t>>(100, 6, [](std::size_t, IndexRange r) {
        std::vector<std::uint64_t> v(r.end - r.begin);
        std::iota(v.begin(), v.end(), r.begin);
        return v;
    });
    std::vector<std::uint64_t> all;
    for (const auto& p : parts) {
        all.insert(all.end(), p.begin(), p.end());
    }
    std::vector<std::uint64_t> want(100);
    std::iota(want.begin(), want.end(), 0);
    EXPECT_EQ(all, want);
}

TEST(Parallel, WorkerExceptionIsRethrown) {
    auto work = [](std::size_t slice, IndexRange) -> int {
        if (slice == 2) {
            throw std::runtime_error("boom");
        }
        return 0;
    };
    EXPECT_THROW(parallel_slices<int>(10, 4, work), std::runtime_error);
    EXPECT_THROW(parallel_slices<int>(10, 1, [](std::size_t, IndexRange) -> int { throw std::runtime_error("x"); }),
                 std::runtime_error);
}

TEST(Parallel, DefaultJobsReadsEnvironment) {
    const char* old = std::getenv("PEAKSWAP_JOBS");
    const std::string saved = old ? old : "";
    setenv("PEAKSWAP_JOBS", "3", 1);
    EXPECT_EQ(default_jobs(), 3u);
    unsetenv("PEAKSWAP_JOBS");
    EXPECT_GE(default_jobs(), 1u);
    if (old) {
        setenv("PEAKSWAP_JOBS", saved.c_str(), 1);
    }
}
