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

#ifndef PEAKSWAP_PARALLEL_HPP
#define PEAKSWAP_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace peakswap {

/// PEAKSWAP_JOBS if set to a positive integer, else the hardware concurrency.
inline unsigned default_jobs() {
    if (const char* env = std::getenv("PEAKSWAP_JOBS")) {
        try {
            const auto v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Half-open index range.
struct IndexRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

/// Splits [0, total) into at most `jobs` contiguous, nearly even slices.
inline std::vector<IndexRange> partition_range(std::uint64_t total, unsigned jobs) {
    jobs = std::max(1u, jobs);
    const std::uint64_t parts = std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1));
    std::vector<IndexRange> out;
    std::uint64_t start = 0;
    for (std::uint64_t k = 0; k < parts; ++k) {
        const auto len = total / parts + (k < total % parts ? 1 : 0);
        out.push_back({start, start + len});
        start += len;
    }
    return out;
}

/// Runs `work(slice_index, range)` for each slice of [0, total) on its own
/// thread and returns the per-slice results in slice order. Exceptions from
/// workers are rethrown on the caller's thread (first slice wins).
template <typename Result, typename Work>
std::vector<Result> parallel_slices(std::uint64_t total, unsigned jobs, Work work) {
    const auto ranges = partition_range(total, jobs);
    std::vector<Result> results(ranges.size());
    std::vector<std::exception_ptr> errors(ranges.size());
    if (ranges.size() == 1) {
        results[0] = work(std::size_t{0}, ranges[0]);
        return results;
    }
    {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < ranges.size(); ++k) {
            pool.emplace_back([&, k] {
                try {
                    results[k] = work(k, ranges[k]);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

} // namespace peakswap

#endif // PEAKSWAP_PARALLEL_HPP
