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
 * \file peakswap/domain.hpp
 *
 * \brief Agents, objects, strict preferences, allocations and priority orders.
 *
 * Objects are identified with their position on the fixed axis: the object
 * with index t is the (t+1)-th object from the left. A preference is single
 * peaked when, for every k, its k best objects form a contiguous stretch of
 * the axis.
 */

#ifndef PEAKSWAP_DOMAIN_HPP
#define PEAKSWAP_DOMAIN_HPP

#include <peakswap/detail/fixed_vector.hpp>
#include <peakswap/errors.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap {

/// Largest problem size representable by the inline containers.
inline constexpr std::size_t kMaxAgents = 16;

struct ObjectId {
    std::uint8_t index = 0;
    friend constexpr auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

struct AgentId {
    std::uint8_t index = 0;
    friend constexpr auto operator<=>(const AgentId&, const AgentId&) = default;
};

constexpr ObjectId object_at(std::size_t index) noexcept { return ObjectId{static_cast<std::uint8_t>(index)}; }
constexpr AgentId agent_at(std::size_t index) noexcept { return AgentId{static_cast<std::uint8_t>(index)}; }

using ObjectWord = detail::FixedVector<ObjectId, kMaxAgents>;
using AgentWord = detail::FixedVector<AgentId, kMaxAgents>;

namespace detail {

template <typename Id>
bool is_permutation_of_indices(std::span<const Id> word, std::size_t n) {
    if (word.size() != n) {
        return false;
    }
    std::array<bool, 256> seen{};
    for (const Id& id : word) {
        if (id.index >= n || seen[id.index]) {
            return false;
        }
        seen[id.index] = true;
    }
    return true;
}

template <typename Id>
detail::FixedVector<Id, kMaxAgents> word_from_indices(std::initializer_list<int> indices) {
    detail::FixedVector<Id, kMaxAgents> word;
    for (int i : indices) {
        if (i < 0 || i > 255) {
            throw validation_error("index out of range");
        }
        word.push_back(Id{static_cast<std::uint8_t>(i)});
    }
    return word;
}

inline void require_size(std::size_t n) {
    if (n == 0) {
        throw domain_error("problem size must be at least 1");
    }
    if (n > kMaxAgents) {
        throw capability_error("problem size exceeds " + std::to_string(kMaxAgents) + " agents");
    }
}

} // namespace detail

/// Strict total order over the n objects, stored best first.
class PreferenceRelation {
public:
    PreferenceRelation() = default;

    /// Throws validation_error unless `ranking` is a permutation of 0..n-1.
    explicit PreferenceRelation(const ObjectWord& ranking) : ranking_(ranking) {
        if (ranking.empty() || !detail::is_permutation_of_indices(ranking.view(), ranking.size())) {
            throw validation_error("ranking is not a permutation of the objects");
        }
        for (std::size_t k = 0; k < ranking_.size(); ++k) {
            rank_[ranking_[k].index] = static_cast<std::uint8_t>(k);
        }
    }

    /// Zero-based axis positions, best first: `of({3, 2, 1, 0})`.
    static PreferenceRelation of(std::initializer_list<int> ranking) {
        return PreferenceRelation(detail::word_from_indices<ObjectId>(ranking));
    }

    std::size_t size() const noexcept { return ranking_.size(); }
    const ObjectWord& ranking() const noexcept { return ranking_; }
    ObjectId at(std::size_t k) const noexcept { return ranking_[k]; }
    ObjectId peak() const noexcept { return ranking_[0]; }

    /// Position of `o` in the ranking; 0 is best.
    std::size_t rank_of(ObjectId o) const noexcept { return rank_[o.index]; }

    /// `a P b`
    bool prefers(ObjectId a, ObjectId b) const noexcept { return rank_[a.index] < rank_[b.index]; }

    /// `a R b`
    bool weakly_prefers(ObjectId a, ObjectId b) const noexcept { return rank_[a.index] <= rank_[b.index]; }

    /// The ranking with every object o_t relabelled o_{n+1-t}.
    PreferenceRelation reflected() const {
        ObjectWord word;
        const auto n = ranking_.size();
        for (ObjectId o : ranking_) {
            word.push_back(object_at(n - 1 - o.index));
        }
        return PreferenceRelation(word);
    }

    friend bool operator==(const PreferenceRelation& a, const PreferenceRelation& b) {
        return a.ranking_ == b.ranking_;
    }
    friend auto operator<=>(const PreferenceRelation& a, const PreferenceRelation& b) {
        return a.ranking_ <=> b.ranking_;
    }

private:
    ObjectWord ranking_;
    std::array<std::uint8_t, kMaxAgents> rank_{};
};

using Profile = detail::FixedVector<PreferenceRelation, kMaxAgents>;

/// Returns `profile` with agent `who`'s preference replaced by `report`.
inline Profile with_report(Profile profile, AgentId who, const PreferenceRelation& report) {
    profile[who.index] = report;
    return profile;
}

inline Profile reflected(const Profile& profile) {
    Profile out;
    for (const auto& pref : profile) {
        out.push_back(pref.reflected());
    }
    return out;
}

/// A bijection agents -> objects; entry i is agent i's object. Serves both as
/// allocation and as endowment profile.
class Assignment {
public:
    Assignment() = default;

    explicit Assignment(const ObjectWord& objects_by_agent) : objects_(objects_by_agent) {
        if (objects_.empty() || !detail::is_permutation_of_indices(objects_.view(), objects_.size())) {
            throw validation_error("assignment is not a permutation of the objects");
        }
    }

    static Assignment of(std::initializer_list<int> objects_by_agent) {
        return Assignment(detail::word_from_indices<ObjectId>(objects_by_agent));
    }

    static Assignment identity(std::size_t n) {
        ObjectWord word;
        for (std::size_t i = 0; i < n; ++i) {
            word.push_back(object_at(i));
        }
        return Assignment(word);
    }

    std::size_t size() const noexcept { return objects_.size(); }
    ObjectId operator[](AgentId i) const noexcept { return objects_[i.index]; }
    ObjectId at(std::size_t i) const noexcept { return objects_[i]; }
    const ObjectWord& word() const noexcept { return objects_; }

    /// Inverse map objects -> agents.
    AgentWord owners() const {
        AgentWord out(objects_.size(), AgentId{});
        for (std::size_t i = 0; i < objects_.size(); ++i) {
            out[objects_[i].index] = agent_at(i);
        }
        return out;
    }

    Assignment reflected() const {
        ObjectWord word;
        const auto n = objects_.size();
        for (ObjectId o : objects_) {
            word.push_back(object_at(n - 1 - o.index));
        }
        return Assignment(word);
    }

    friend bool operator==(const Assignment& a, const Assignment& b) { return a.objects_ == b.objects_; }
    friend auto operator<=>(const Assignment& a, const Assignment& b) { return a.objects_ <=> b.objects_; }

private:
    ObjectWord objects_;
};

/// A priority order over agents. Position k holds the agent ranked k+1.
class AgentOrder {
public:
    AgentOrder() = default;

    explicit AgentOrder(const AgentWord& agents_by_rank) : agents_(agents_by_rank) {
        if (agents_.empty() || !detail::is_permutation_of_indices(agents_.view(), agents_.size())) {
            throw validation_error("order is not a permutation of the agents");
        }
        for (std::size_t k = 0; k < agents_.size(); ++k) {
            rank_[agents_[k].index] = static_cast<std::uint8_t>(k);
        }
    }

    static AgentOrder of(std::initializer_list<int> agents_by_rank) {
        return AgentOrder(detail::word_from_indices<AgentId>(agents_by_rank));
    }

    static AgentOrder identity(std::size_t n) {
        AgentWord word;
        for (std::size_t i = 0; i < n; ++i) {
            word.push_back(agent_at(i));
        }
        return AgentOrder(word);
    }

    std::size_t size() const noexcept { return agents_.size(); }
    AgentId at_rank(std::size_t k) const noexcept { return agents_[k]; }
    std::size_t rank_of(AgentId i) const noexcept { return rank_[i.index]; }
    const AgentWord& agents_by_rank() const noexcept { return agents_; }

    friend bool operator==(const AgentOrder& a, const AgentOrder& b) { return a.agents_ == b.agents_; }
    friend auto operator<=>(const AgentOrder& a, const AgentOrder& b) { return a.agents_ <=> b.agents_; }

private:
    AgentWord agents_;
    std::array<std::uint8_t, kMaxAgents> rank_{};
};

/// An object-(re)allocation problem. The endowment is absent for pure allocation problems.
struct Problem {
    Profile profile;
    std::optional<Assignment> endowment;

    std::size_t n() const noexcept { return profile.size(); }
};

// -- single-peakedness ------------------------------------------------------

/// True iff every best-k prefix of `ranking` is a contiguous axis interval.
/// Throws validation_error if `ranking` is not a permutation of 0..n-1.
inline bool is_single_peaked(std::span<const ObjectId> ranking, std::size_t n) {
    if (!detail::is_permutation_of_indices(ranking, n)) {
        throw validation_error("ranking is not a permutation of " + std::to_string(n) + " objects");
    }
    int lo = ranking[0].index;
    int hi = lo;
    for (std::size_t k = 1; k < n; ++k) {
        const int o = ranking[k].index;
        if (o == lo - 1) {
            lo = o;
        } else if (o == hi + 1) {
            hi = o;
        } else {
            return false;
        }
    }
    return true;
}

inline bool is_single_peaked(const PreferenceRelation& pref, std::size_t n) {
    return is_single_peaked(pref.ranking().view(), n);
}

inline bool is_single_peaked(const PreferenceRelation& pref) {
    return is_single_peaked(pref.ranking().view(), pref.size());
}

/// All 2^(n-1) single-peaked orders on n objects, lexicographic by ranking.
inline std::vector<PreferenceRelation> enumerate_single_peaked(std::size_t n) {
    detail::require_size(n);
    std::vector<PreferenceRelation> out;
    out.reserve(std::size_t{1} << (n - 1));
    ObjectWord word;
    // Extending an interval [lo, hi] on the left always yields the smaller next
    // object, so visiting the left extension first keeps lexicographic order.
    auto extend = [&](auto&& self, int lo, int hi) -> void {
        if (word.size() == n) {
            out.emplace_back(word);
            return;
        }
        if (lo > 0) {
            word.push_back(object_at(static_cast<std::size_t>(lo - 1)));
            self(self, lo - 1, hi);
            word.pop_back();
        }
        if (hi + 1 < static_cast<int>(n)) {
            word.push_back(object_at(static_cast<std::size_t>(hi + 1)));
            self(self, lo, hi + 1);
            word.pop_back();
        }
    };
    for (std::size_t peak = 0; peak < n; ++peak) {
        word.push_back(object_at(peak));
        extend(extend, static_cast<int>(peak), static_cast<int>(peak));
        word.pop_back();
    }
    return out;
}

/// All n! strict orders on n objects, lexicographic by ranking.
inline std::vector<PreferenceRelation> enumerate_strict(std::size_t n) {
    detail::require_size(n);
    ObjectWord word;
    for (std::size_t i = 0; i < n; ++i) {
        word.push_back(object_at(i));
    }
    std::vector<PreferenceRelation> out;
    do {
        out.emplace_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

// -- validation ------------------------------------------------------------

/// Problem data before any invariant has been checked. Indices are zero-based.
struct RawProblem {
    std::size_t n = 0;
    std::vector<std::vector<int>> preferences;
    std::optional<std::vector<int>> endowment;
};

enum class IssueKind { size, preference_not_permutation, not_single_peaked, endowment_not_permutation };

struct ValidationIssue {
    IssueKind kind;
    std::optional<std::size_t> agent;
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

namespace detail {

inline bool raw_is_permutation(const std::vector<int>& word, std::size_t n) {
    if (word.size() != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (int v : word) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
            return false;
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

inline ObjectWord raw_to_word(const std::vector<int>& word) {
    ObjectWord out;
    for (int v : word) {
        out.push_back(object_at(static_cast<std::size_t>(v)));
    }
    return out;
}

} // namespace detail

/// Every violated invariant of `raw`; empty iff it is a well-formed single-peaked problem.
inline ValidationReport validate_problem(const RawProblem& raw) {
    ValidationReport report;
    if (raw.n == 0 || raw.n > kMaxAgents) {
        report.push_back({IssueKind::size, std::nullopt,
                          "n must be between 1 and " + std::to_string(kMaxAgents)});
        return report;
    }
    if (raw.preferences.size() != raw.n) {
        report.push_back({IssueKind::size, std::nullopt,
                          "expected " + std::to_string(raw.n) + " preferences, got " +
                              std::to_string(raw.preferences.size())});
    }
    for (std::size_t i = 0; i < raw.preferences.size(); ++i) {
        const auto& word = raw.preferences[i];
        if (!detail::raw_is_permutation(word, raw.n)) {
            report.push_back({IssueKind::preference_not_permutation, i,
                              "preference of agent " + std::to_string(i + 1) + " is not a permutation"});
            continue;
        }
        const auto ranking = detail::raw_to_word(word);
        if (!is_single_peaked(ranking.view(), raw.n)) {
            report.push_back({IssueKind::not_single_peaked, i,
                              "preference of agent " + std::to_string(i + 1) + " is not single-peaked"});
        }
    }
    if (raw.endowment && !detail::raw_is_permutation(*raw.endowment, raw.n)) {
        report.push_back({IssueKind::endowment_not_permutation, std::nullopt, "endowment is not a permutation"});
    }
    return report;
}

/// Single-peakedness of every preference in an already-typed problem.
inline ValidationReport validate_problem(const Problem& problem) {
    ValidationReport report;
    const auto n = problem.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (problem.profile[i].size() != n) {
            report.push_back({IssueKind::size, i, "preference of agent " + std::to_string(i + 1) + " has wrong length"});
        } else if (!is_single_peaked(problem.profile[i], n)) {
            report.push_back({IssueKind::not_single_peaked, i,
                              "preference of agent " + std::to_string(i + 1) + " is not single-peaked"});
        }
    }
    if (problem.endowment && problem.endowment->size() != n) {
        report.push_back({IssueKind::endowment_not_permutation, std::nullopt, "endowment has wrong length"});
    }
    return report;
}

inline std::string describe(const ValidationReport& report) {
    std::ostringstream os;
    for (std::size_t k = 0; k < report.size(); ++k) {
        os << (k ? "; " : "") << report[k].message;
    }
    return os.str();
}

/// Builds a typed problem, throwing validation_error carrying every issue.
inline Problem make_problem(const RawProblem& raw) {
    if (auto report = validate_problem(raw); !report.empty()) {
        throw validation_error(describe(report));
    }
    Problem problem;
    for (const auto& word : raw.preferences) {
        problem.profile.push_back(PreferenceRelation(detail::raw_to_word(word)));
    }
    if (raw.endowment) {
        problem.endowment = Assignment(detail::raw_to_word(*raw.endowment));
    }
    return problem;
}

// -- checks shared by the rules ---------------------------------------------

namespace detail {

inline void require_strict_profile(const Profile& profile, std::size_t n) {
    if (profile.size() != n) {
        throw validation_error("profile has " + std::to_string(profile.size()) + " preferences for " +
                               std::to_string(n) + " agents");
    }
    for (const auto& pref : profile) {
        if (pref.size() != n) {
            throw validation_error("preference length does not match the number of agents");
        }
    }
}

inline void require_single_peaked_profile(const Profile& profile, std::size_t n) {
    require_strict_profile(profile, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_single_peaked(profile[i], n)) {
            throw validation_error("preference of agent " + std::to_string(i + 1) + " is not single-peaked");
        }
    }
}

/// `(o1,o3,o2)`
inline std::string word_text(const ObjectWord& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += (i ? ",o" : "o") + std::to_string(w[i].index + 1);
    }
    return s + ")";
}

/// `(2,1,3)`
inline std::string word_text(const AgentWord& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += (i ? "," : "") + std::to_string(w[i].index + 1);
    }
    return s + ")";
}

} // namespace detail

} // namespace peakswap

#endif // PEAKSWAP_DOMAIN_HPP
