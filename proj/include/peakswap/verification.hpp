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
 * \file peakswap/verification.hpp
 *
 * \brief Exhaustive and seeded-sample verification suites over the
 *  single-peaked domain.
 *
 * Instances are numbered; workers take contiguous slices of the numbering and
 * their partial reports are merged in slice order, so every report field
 * except the wall time is independent of the worker count.
 */

#ifndef PEAKSWAP_VERIFICATION_HPP
#define PEAKSWAP_VERIFICATION_HPP

#include <peakswap/axioms.hpp>
#include <peakswap/bijection.hpp>
#include <peakswap/domain.hpp>
#include <peakswap/lotteries.hpp>
#include <peakswap/parallel.hpp>
#include <peakswap/permutations.hpp>
#include <peakswap/rules.hpp>
#include <peakswap/trading_cycles.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace peakswap {

enum class Suite { theorem1, theorem2, corollary1, rttc_rp, bijection, axioms, example3 };
enum class VerifyMode { exhaustive, sample, exhaustive_n5 };
enum class ProfileDomain { single_peaked, strict };

inline const char* to_string(Suite s) noexcept {
    switch (s) {
    case Suite::theorem1: return "theorem1";
    case Suite::theorem2: return "theorem2";
    case Suite::corollary1: return "corollary1";
    case Suite::rttc_rp: return "rttc-rp";
    case Suite::bijection: return "bijection";
    case Suite::axioms: return "axioms";
    case Suite::example3: return "example3";
    }
    return "unknown";
}

inline const char* to_string(VerifyMode m) noexcept {
    switch (m) {
    case VerifyMode::exhaustive: return "exhaustive";
    case VerifyMode::sample: return "sample";
    case VerifyMode::exhaustive_n5: return "exhaustive-n5";
    }
    return "unknown";
}

inline const char* to_string(ProfileDomain d) noexcept {
    return d == ProfileDomain::single_peaked ? "single-peaked" : "strict";
}

/// Largest n for exhaustive mode (single-peaked / strict).
inline constexpr std::size_t kExhaustiveSuiteBound = 4;
inline constexpr std::size_t kExhaustiveStrictBound = 3;

struct VerifyOptions {
    Suite suite = Suite::theorem1;
    std::size_t n = 3;
    VerifyMode mode = VerifyMode::exhaustive;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    ProfileDomain domain = ProfileDomain::single_peaked;
    unsigned jobs = 1;
    std::size_t failure_cap = 20;
    BuildOptions build;
};

struct InstanceFailure {
    std::uint64_t instance = 0;
    Profile profile;
    std::optional<Assignment> endowment;
    std::vector<std::pair<std::string, Assignment>> outputs;
    std::string detail;
    std::optional<Violation> violation;
};

struct RepairLogEntry {
    std::uint64_t instance = 0; ///< profile instance
    Profile profile;
    RepairedInstance repair;
};

struct VerificationReport {
    std::string suite;
    std::size_t n = 0;
    std::string mode;
    std::string domain;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::uint64_t instances = 0;
    std::uint64_t failure_count = 0;
    std::vector<InstanceFailure> failures; ///< first `failure_cap`, by instance
    std::uint64_t repaired_count = 0;
    std::uint64_t repaired_profiles = 0;
    std::vector<RepairLogEntry> repaired; ///< every repaired endowment
    std::optional<InstanceFailure> divergence_witness;
    double wall_time_seconds = 0.0;

    bool passed() const noexcept { return failure_count == 0; }
};

namespace detail {

struct Partial {
    std::uint64_t instances = 0;
    std::uint64_t failure_count = 0;
    std::vector<InstanceFailure> failures;
    std::uint64_t repaired_profiles = 0;
    std::vector<RepairLogEntry> repaired;
    std::optional<InstanceFailure> witness;
};

class FailureSink {
public:
    FailureSink(Partial& part, std::size_t cap) : part_(part), cap_(cap) {}

    void add(InstanceFailure f) {
        ++part_.failure_count;
        if (part_.failures.size() < cap_) {
            part_.failures.push_back(std::move(f));
        }
    }

private:
    Partial& part_;
    std::size_t cap_;
};

inline std::vector<PreferenceRelation> domain_list(std::size_t n, ProfileDomain d) {
    return d == ProfileDomain::single_peaked ? enumerate_single_peaked(n) : enumerate_strict(n);
}

/// Seeded draws: per-agent preference indices and an endowment rank.
struct Draw {
    FixedVector<std::uint8_t, kMaxAgents> prefs;
    std::uint64_t endowment = 0;
};

inline std::vector<Draw> draw_instances(std::size_t n, std::size_t domain_size, std::uint64_t samples,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, domain_size - 1);
    std::uniform_int_distribution<std::uint64_t> rank(0, factorial(n) - 1);
    std::vector<Draw> out(samples);
    for (auto& d : out) {
        for (std::size_t i = 0; i < n; ++i) {
            d.prefs.push_back(static_cast<std::uint8_t>(pick(rng)));
        }
        d.endowment = rank(rng);
    }
    return out;
}

inline Profile profile_from_draw(const Draw& d, const std::vector<PreferenceRelation>& domain) {
    Profile p;
    for (auto k : d.prefs) {
        p.push_back(domain[k]);
    }
    return p;
}

inline InstanceFailure failure(std::uint64_t id, const Profile& p, std::optional<Assignment> w, std::string detail,
                               std::vector<std::pair<std::string, Assignment>> outputs = {}) {
    InstanceFailure f;
    f.instance = id;
    f.profile = p;
    f.endowment = std::move(w);
    f.detail = std::move(detail);
    f.outputs = std::move(outputs);
    return f;
}

inline std::string lottery_difference(const LotteryComparison& c, const char* left, const char* right) {
    return std::string(left) + " and " + right + " differ at " + word_text(c.first_difference->word()) + ": " +
           std::to_string(c.left) + "/" + std::to_string(c.denominator) + " vs " + std::to_string(c.right) + "/" +
           std::to_string(c.denominator);
}

// -- per-instance checks ------------------------------------------------------

inline void check_theorem1(std::uint64_t id, const Profile& p, const Assignment& w, FailureSink& sink) {
    const auto a = ascending_crawler(p, w).allocation;
    const auto d = descending_crawler(p, w).allocation;
    if (a != d) {
        sink.add(failure(id, p, w, "ascending and descending crawlers differ", {{"acr", a}, {"dcr", d}}));
    }
}

inline void check_axioms(std::uint64_t id, const Profile& p, const Assignment& w, FailureSink& sink,
                         std::optional<InstanceFailure>& witness) {
    const auto acr = ascending_crawler(p, w).allocation;
    const auto dcr = descending_crawler(p, w).allocation;
    const auto top = ttc(p, w);
    const std::vector<std::pair<std::string, Assignment>> outputs{{"acr", acr}, {"dcr", dcr}, {"ttc", top}};
    auto report = [&](const std::string& rule, std::optional<Violation> v) {
        if (v) {
            auto f = failure(id, p, w, rule + " violates " + to_string(v->kind), outputs);
            f.violation = std::move(v);
            sink.add(std::move(f));
        }
    };
    for (const auto& [name, x] : outputs) {
        report(name, find_efficiency_violation(x, p));
        report(name, find_endowment_violation(x, p, w));
    }
    auto acr_rule = [](const Profile& q, const Assignment& e) { return crawler_unchecked(q, e); };
    auto dcr_rule = [](const Profile& q, const Assignment& e) {
        return crawler_unchecked(reflected(q), e.reflected()).reflected();
    };
    report("acr", find_strategyproofness_violation(acr_rule, p, w));
    report("acr", find_bossiness_violation(acr_rule, p, w));
    report("dcr", find_strategyproofness_violation(dcr_rule, p, w));
    report("dcr", find_bossiness_violation(dcr_rule, p, w));
    const auto core = core_allocations(p, w);
    if (core.size() != 1 || core.front() != top) {
        auto out = outputs;
        for (const auto& c : core) {
            out.emplace_back("core", c);
        }
        sink.add(failure(id, p, w, "core has " + std::to_string(core.size()) + " allocations and is not {ttc}", out));
    }
    if (!witness && acr != top) {
        witness = failure(id, p, w, "crawler and TTC differ", outputs);
    }
}

inline void check_profile(Suite suite, std::uint64_t id, const Profile& p, const VerifyOptions& opt, Partial& part,
                          FailureSink& sink) {
    switch (suite) {
    case Suite::theorem2: {
        const auto rcr = crawler_from_random_endowments(p);
        const auto rp = random_priority(p);
        if (rcr.total() != rcr.denominator() || rp.total() != rp.denominator()) {
            sink.add(failure(id, p, std::nullopt, "lottery does not sum to one"));
        } else if (const auto c = lotteries_equal(rcr, rp); !c) {
            sink.add(failure(id, p, std::nullopt, lottery_difference(c, "RCR", "RP")));
        }
        break;
    }
    case Suite::corollary1: {
        const auto c = lotteries_equal(crawler_from_random_endowments(p), core_from_random_endowments(p));
        if (!c) {
            sink.add(failure(id, p, std::nullopt, lottery_difference(c, "RCR", "RTTC")));
        }
        break;
    }
    case Suite::rttc_rp: {
        const auto c = lotteries_equal(core_from_random_endowments(p), random_priority(p));
        if (!c) {
            sink.add(failure(id, p, std::nullopt, lottery_difference(c, "RTTC", "RP")));
        }
        break;
    }
    case Suite::bijection: {
        BijectionReport r;
        try {
            r = verify_equivalence_for_profile(p, opt.build);
        } catch (const construction_error& e) {
            sink.add(failure(id, p, std::nullopt, std::string("construction failed: ") + e.what() + "\n" +
                                                      e.state().dump()));
            break;
        }
        for (const auto& f : r.failures) {
            sink.add(failure(id, p, std::nullopt, f.claim + ": " + f.detail));
        }
        if (!r.passed() && r.failures.empty()) {
            sink.add(failure(id, p, std::nullopt, "bijection claims failed"));
        }
        part.repaired_profiles += r.repaired.empty() ? 0 : 1;
        for (auto& rep : r.repaired) {
            part.repaired.push_back({id, p, std::move(rep)});
        }
        break;
    }
    default:
        break;
    }
}

inline bool per_instance(Suite s) noexcept { return s == Suite::theorem1 || s == Suite::axioms; }

inline void require_options(const VerifyOptions& opt) {
    if (opt.n == 0) {
        throw domain_error("n must be at least 1");
    }
    if (opt.domain == ProfileDomain::strict && opt.suite != Suite::rttc_rp) {
        throw validation_error(std::string("suite ") + to_string(opt.suite) + " is defined on single-peaked profiles only");
    }
    switch (opt.mode) {
    case VerifyMode::exhaustive: {
        const auto bound = opt.domain == ProfileDomain::strict ? kExhaustiveStrictBound : kExhaustiveSuiteBound;
        if (opt.n > bound) {
            throw capability_error("exhaustive mode supports n <= " + std::to_string(bound) + " on the " +
                                   to_string(opt.domain) + " domain; use --mode sample" +
                                   (opt.suite == Suite::theorem1 ? " or --mode exhaustive-n5" : ""));
        }
        break;
    }
    case VerifyMode::exhaustive_n5:
        if (opt.suite != Suite::theorem1 || opt.n != 5) {
            throw capability_error("exhaustive-n5 mode is available for theorem1 with n = 5 only");
        }
        break;
    case VerifyMode::sample:
        if (!opt.samples || !opt.seed) {
            throw validation_error("sample mode requires --samples and --seed");
        }
        if (opt.n > (per_instance(opt.suite) ? kExhaustiveBound : kFactorialBound - 2)) {
            throw capability_error("sample mode n is too large for suite " + std::string(to_string(opt.suite)));
        }
        if (opt.n > kMaxAgents) {
            throw capability_error("at most " + std::to_string(kMaxAgents) + " agents");
        }
        break;
    }
}

} // namespace detail

/// Runs one suite. Throws capability_error when the instance space is out of
/// reach and validation_error on inconsistent options.
inline VerificationReport run_verification(const VerifyOptions& opt) {
    const auto started = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = to_string(opt.suite);
    report.n = opt.n;
    report.mode = to_string(opt.mode);
    report.domain = to_string(opt.domain);
    if (opt.mode == VerifyMode::sample) {
        report.samples = opt.samples;
        report.seed = opt.seed;
    }

    if (opt.suite == Suite::example3) {
        const auto r = reproduce_example3();
        for (std::size_t k = 0; k < r.assertions.size(); ++k) {
            ++report.instances;
            if (!r.assertions[k].passed) {
                ++report.failure_count;
                report.failures.push_back(detail::failure(k, Profile{}, std::nullopt,
                                                          r.assertions[k].name + ": " + r.assertions[k].detail));
            }
        }
        report.n = 3;
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return report;
    }

    detail::require_options(opt);
    const auto n = opt.n;
    const auto domain = detail::domain_list(n, opt.domain);
    const bool instance_suite = detail::per_instance(opt.suite);
    const auto endowments = factorial(n);

    std::vector<detail::Draw> draws;
    std::uint64_t total = 0;
    if (opt.mode == VerifyMode::sample) {
        draws = detail::draw_instances(n, domain.size(), *opt.samples, *opt.seed);
        total = *opt.samples;
    } else {
        total = profile_count(n, domain.size()) * (instance_suite ? endowments : 1);
    }

    auto work = [&](std::size_t, IndexRange range) {
        detail::Partial part;
        detail::FailureSink sink(part, opt.failure_cap);
        for (auto id = range.begin; id < range.end; ++id) {
            Profile p;
            std::uint64_t w_rank = 0;
            if (opt.mode == VerifyMode::sample) {
                p = detail::profile_from_draw(draws[id], domain);
                w_rank = draws[id].endowment;
            } else if (instance_suite) {
                p = profile_at(id / endowments, n, domain);
                w_rank = id % endowments;
            } else {
                p = profile_at(id, n, domain);
            }
            ++part.instances;
            if (opt.suite == Suite::theorem1) {
                detail::check_theorem1(id, p, assignment_at(w_rank, n), sink);
            } else if (opt.suite == Suite::axioms) {
                detail::check_axioms(id, p, assignment_at(w_rank, n), sink, part.witness);
            } else {
                detail::check_profile(opt.suite, id, p, opt, part, sink);
            }
        }
        return part;
    };
    const auto parts = parallel_slices<detail::Partial>(total, opt.jobs, work);
    for (const auto& part : parts) {
        report.instances += part.instances;
        report.failure_count += part.failure_count;
        for (const auto& f : part.failures) {
            if (report.failures.size() < opt.failure_cap) {
                report.failures.push_back(f);
            }
        }
        report.repaired_profiles += part.repaired_profiles;
        report.repaired.insert(report.repaired.end(), part.repaired.begin(), part.repaired.end());
        if (!report.divergence_witness && part.witness) {
            report.divergence_witness = part.witness;
        }
    }
    report.repaired_count = report.repaired.size();
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace peakswap

#endif // PEAKSWAP_VERIFICATION_HPP
