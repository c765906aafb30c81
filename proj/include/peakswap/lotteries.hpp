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
 * \file peakswap/lotteries.hpp
 *
 * \brief Exact lotteries over allocations: random priority and the uniform
 *  mixtures of the crawler and of TTC over all endowments.
 *
 * Probabilities are integer counts over the fixed denominator n!.
 */

#ifndef PEAKSWAP_LOTTERIES_HPP
#define PEAKSWAP_LOTTERIES_HPP

#include <peakswap/domain.hpp>
#include <peakswap/parallel.hpp>
#include <peakswap/permutations.hpp>
#include <peakswap/rules.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap {

/// Largest n accepted by the n!-enumerating liftings.
inline constexpr std::size_t kFactorialBound = 10;

class RationalLottery {
public:
    using Entries = std::map<Assignment, std::uint64_t>;

    RationalLottery() = default;
    explicit RationalLottery(std::size_t n) : n_(n) {}

    std::size_t n() const noexcept { return n_; }
    std::uint64_t denominator() const noexcept { return factorial(n_); }
    const Entries& entries() const noexcept { return entries_; }

    /// Numerator of `x`; zero when absent.
    std::uint64_t numerator(const Assignment& x) const {
        const auto it = entries_.find(x);
        return it == entries_.end() ? 0 : it->second;
    }

    void add(const Assignment& x, std::uint64_t count = 1) {
        if (x.size() != n_) {
            throw domain_error("allocation size does not match the lottery");
        }
        if (count > 0) {
            entries_[x] += count;
        }
    }

    void merge(const RationalLottery& other) {
        if (other.n_ != n_) {
            throw domain_error("cannot merge lotteries over different n");
        }
        for (const auto& [x, c] : other.entries_) {
            entries_[x] += c;
        }
    }

    std::uint64_t total() const noexcept {
        std::uint64_t sum = 0;
        for (const auto& [x, c] : entries_) {
            sum += c;
        }
        return sum;
    }

    /// Degenerate lottery on `x`.
    static RationalLottery point(const Assignment& x) {
        RationalLottery out(x.size());
        out.add(x, factorial(x.size()));
        return out;
    }

    friend bool operator==(const RationalLottery&, const RationalLottery&) = default;

private:
    std::size_t n_ = 0;
    Entries entries_;
};

namespace detail {

inline void require_factorial_bound(std::size_t n) {
    require_size(n);
    if (n > kFactorialBound) {
        throw capability_error("lottery enumerates n! terms; n = " + std::to_string(n) + " exceeds the bound " +
                               std::to_string(kFactorialBound));
    }
}

} // namespace detail

/// Accumulates `allocation_of(k)` for every k in [0, n!), split over `jobs`
/// workers. Partial maps merge by addition, so the result is independent of
/// the split.
template <typename AllocationOf>
RationalLottery accumulate_lottery(std::size_t n, AllocationOf allocation_of, unsigned jobs = 1) {
    detail::require_factorial_bound(n);
    auto parts = parallel_slices<RationalLottery>(factorial(n), jobs, [&](std::size_t, IndexRange range) {
        RationalLottery part(n);
        for (auto k = range.begin; k < range.end; ++k) {
            part.add(allocation_of(k));
        }
        return part;
    });
    RationalLottery out(n);
    for (const auto& part : parts) {
        out.merge(part);
    }
    return out;
}

/// Uniform mixture of sequential priority over all n! orders.
inline RationalLottery random_priority(const Profile& profile, unsigned jobs = 1) {
    const auto n = profile.size();
    detail::require_factorial_bound(n);
    detail::require_strict_profile(profile, n);
    return accumulate_lottery(
        n, [&](std::uint64_t k) { return sequential_priority(profile, order_at(k, n)); }, jobs);
}

/// Uniform mixture of the crawler over all n! endowments.
inline RationalLottery crawler_from_random_endowments(const Profile& profile, unsigned jobs = 1) {
    const auto n = profile.size();
    detail::require_factorial_bound(n);
    detail::require_single_peaked_profile(profile, n);
    return accumulate_lottery(
        n, [&](std::uint64_t k) { return crawler_unchecked(profile, assignment_at(k, n)); }, jobs);
}

/// Uniform mixture of TTC over all n! endowments.
inline RationalLottery core_from_random_endowments(const Profile& profile, unsigned jobs = 1) {
    const auto n = profile.size();
    detail::require_factorial_bound(n);
    detail::require_strict_profile(profile, n);
    return accumulate_lottery(
        n, [&](std::uint64_t k) { return ttc(profile, assignment_at(k, n)); }, jobs);
}

struct LotteryComparison {
    bool equal = true;
    std::optional<Assignment> first_difference; ///< smallest allocation word where they differ
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    std::uint64_t denominator = 0;

    explicit operator bool() const noexcept { return equal; }
};

inline LotteryComparison lotteries_equal(const RationalLottery& a, const RationalLottery& b) {
    if (a.n() != b.n()) {
        throw domain_error("lotteries over different n (" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) +
                           ")");
    }
    LotteryComparison out;
    out.denominator = a.denominator();
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    const auto ea = a.entries().end();
    const auto eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            out = {false, ia->first, ia->second, 0, out.denominator};
            return out;
        }
        if (ia == ea || ib->first < ia->first) {
            out = {false, ib->first, 0, ib->second, out.denominator};
            return out;
        }
        if (ia->second != ib->second) {
            out = {false, ia->first, ia->second, ib->second, out.denominator};
            return out;
        }
        ++ia;
        ++ib;
    }
    return out;
}

/// Hyphen-joined object names: `o2-o1-o3`.
inline std::string allocation_label(const Assignment& x, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += (i ? "-" : "") + names.at(x.at(i).index);
    }
    return out;
}

/// Header `allocation,numerator,denominator`, rows sorted by allocation word.
inline std::string to_csv(const RationalLottery& lottery, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "allocation,numerator,denominator\n";
    for (const auto& [x, c] : lottery.entries()) {
        os << allocation_label(x, names) << ',' << c << ',' << lottery.denominator() << '\n';
    }
    return os.str();
}

} // namespace peakswap

#endif // PEAKSWAP_LOTTERIES_HPP
