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

#ifndef PEAKSWAP_DETAIL_FIXED_VECTOR_HPP
#define PEAKSWAP_DETAIL_FIXED_VECTOR_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace peakswap::detail {

/// Contiguous sequence with inline storage and a compile-time capacity.
///
/// Every per-agent word in the library (rankings, allocations, orders) is
/// bounded by the number of agents, so keeping them inline avoids heap traffic
/// inside the exhaustive enumeration loops.
template <typename T, std::size_t Capacity>
class FixedVector {
    static_assert(Capacity <= 255, "size is stored in a single byte");

public:
    using value_type = T;
    using size_type = std::size_t;
    using iterator = T*;
    using const_iterator = const T*;

    constexpr FixedVector() = default;

    constexpr FixedVector(std::initializer_list<T> init) {
        if (init.size() > Capacity) {
            throw std::length_error("FixedVector capacity exceeded");
        }
        std::copy(init.begin(), init.end(), items_.begin());
        size_ = static_cast<std::uint8_t>(init.size());
    }

    constexpr explicit FixedVector(std::span<const T> values) {
        if (values.size() > Capacity) {
            throw std::length_error("FixedVector capacity exceeded");
        }
        std::copy(values.begin(), values.end(), items_.begin());
        size_ = static_cast<std::uint8_t>(values.size());
    }

    constexpr FixedVector(size_type count, const T& fill) {
        if (count > Capacity) {
            throw std::length_error("FixedVector capacity exceeded");
        }
        std::fill_n(items_.begin(), count, fill);
        size_ = static_cast<std::uint8_t>(count);
    }

    static constexpr size_type capacity() noexcept { return Capacity; }
    constexpr size_type size() const noexcept { return size_; }
    constexpr bool empty() const noexcept { return size_ == 0; }

    constexpr T& operator[](size_type i) noexcept { return items_[i]; }
    constexpr const T& operator[](size_type i) const noexcept { return items_[i]; }

    constexpr T& front() noexcept { return items_[0]; }
    constexpr const T& front() const noexcept { return items_[0]; }
    constexpr T& back() noexcept { return items_[size_ - 1]; }
    constexpr const T& back() const noexcept { return items_[size_ - 1]; }

    constexpr iterator begin() noexcept { return items_.data(); }
    constexpr iterator end() noexcept { return items_.data() + size_; }
    constexpr const_iterator begin() const noexcept { return items_.data(); }
    constexpr const_iterator end() const noexcept { return items_.data() + size_; }

    constexpr T* data() noexcept { return items_.data(); }
    constexpr const T* data() const noexcept { return items_.data(); }

    constexpr std::span<const T> view() const noexcept { return {items_.data(), size_}; }

    constexpr void push_back(const T& value) {
        if (size_ == Capacity) {
            throw std::length_error("FixedVector capacity exceeded");
        }
        items_[size_++] = value;
    }

    constexpr void pop_back() noexcept { --size_; }

    /// Removes the element at `pos`, shifting the tail left.
    constexpr void erase_at(size_type pos) noexcept {
        std::move(items_.begin() + pos + 1, items_.begin() + size_, items_.begin() + pos);
        --size_;
    }

    constexpr void clear() noexcept { size_ = 0; }

    friend constexpr bool operator==(const FixedVector& a, const FixedVector& b) {
        return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }

    friend constexpr auto operator<=>(const FixedVector& a, const FixedVector& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<T, Capacity> items_{};
    std::uint8_t size_ = 0;
};

} // namespace peakswap::detail

#endif // PEAKSWAP_DETAIL_FIXED_VECTOR_HPP
