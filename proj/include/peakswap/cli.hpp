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
 * \file peakswap/cli.hpp
 *
 * \brief The `peakswap` command line: run a rule on a problem file, verify a
 *  suite, or print an exact lottery.
 *
 * Exit codes: 0 pass, 1 verification failures, 2 usage, parse or validation
 * errors.
 */

#ifndef PEAKSWAP_CLI_HPP
#define PEAKSWAP_CLI_HPP

#include <peakswap/bijection.hpp>
#include <peakswap/io.hpp>
#include <peakswap/lotteries.hpp>
#include <peakswap/parallel.hpp>
#include <peakswap/rules.hpp>
#include <peakswap/verification.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitUsage = 2;

/// Raised for flag combinations CLI11 cannot express.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "5,2,4,7,3,6,1" (1-based agents) to an order.
inline AgentOrder parse_order(const std::string& text, std::size_t n) {
    std::vector<int> agents;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            agents.push_back(v - 1);
        } catch (const std::exception&) {
            throw validation_error("--order entry \"" + item + "\" is not an agent number");
        }
    }
    if (agents.size() != n) {
        throw validation_error("--order lists " + std::to_string(agents.size()) + " agents for n = " +
                               std::to_string(n));
    }
    AgentWord word;
    for (int a : agents) {
        if (a < 0 || a >= static_cast<int>(n)) {
            throw validation_error("--order names agent " + std::to_string(a + 1) + " outside 1.." +
                                   std::to_string(n));
        }
        word.push_back(agent_at(static_cast<std::size_t>(a)));
    }
    return AgentOrder(word);
}

struct RunArgs {
    std::string rule;
    std::string file;
    bool trace = false;
    std::string order;
};

inline int cmd_run(const RunArgs& args, std::ostream& out) {
    const bool crawl = args.rule == "acr" || args.rule == "dcr";
    if (args.trace && !crawl) {
        throw usage_error("--trace is available for acr and dcr only");
    }
    if (args.rule == "sp" && args.order.empty()) {
        throw usage_error("run sp requires --order");
    }
    if (args.rule != "sp" && !args.order.empty()) {
        throw usage_error("--order applies to sp only");
    }
    const auto doc = load_problem(args.file);
    const auto problem = problem_from_document(doc, crawl);
    nlohmann::json j;
    j["rule"] = args.rule;
    if (args.rule == "sp") {
        const auto f = parse_order(args.order, problem.n());
        j["allocation"] = allocation_json(sequential_priority(problem.profile, f), doc.axis);
        out << j.dump() << "\n";
        return kExitPass;
    }
    if (!problem.endowment) {
        throw validation_error("rule " + args.rule + " needs an endowment in the problem file");
    }
    if (args.rule == "ttc") {
        j["allocation"] = allocation_json(ttc(problem.profile, *problem.endowment), doc.axis);
        out << j.dump() << "\n";
        return kExitPass;
    }
    const auto result = args.rule == "acr" ? ascending_crawler(problem.profile, *problem.endowment)
                                           : descending_crawler(problem.profile, *problem.endowment);
    j["allocation"] = allocation_json(result.allocation, doc.axis);
    out << j.dump() << "\n";
    if (args.trace) {
        out << render_trace(result.trace, doc.object_names());
    }
    return kExitPass;
}

struct VerifyArgs {
    std::string suite;
    std::size_t n = 3;
    std::string mode = "exhaustive";
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string domain = "single-peaked";
    std::string construction = "fallback";
    std::string output;
    std::string repair_log;
    bool omit_timing = false;
    std::size_t failure_cap = 20;
};

inline const std::map<std::string, Suite>& suite_names() {
    static const std::map<std::string, Suite> names{
        {"theorem1", Suite::theorem1}, {"theorem2", Suite::theorem2}, {"corollary1", Suite::corollary1},
        {"rttc-rp", Suite::rttc_rp},   {"bijection", Suite::bijection}, {"axioms", Suite::axioms},
        {"example3", Suite::example3}};
    return names;
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    VerifyOptions opt;
    opt.suite = suite_names().at(args.suite);
    opt.n = args.n;
    opt.mode = args.mode == "sample"          ? VerifyMode::sample
               : args.mode == "exhaustive-n5" ? VerifyMode::exhaustive_n5
                                              : VerifyMode::exhaustive;
    opt.samples = args.samples;
    opt.seed = args.seed;
    opt.jobs = args.jobs;
    opt.domain = args.domain == "strict" ? ProfileDomain::strict : ProfileDomain::single_peaked;
    opt.failure_cap = args.failure_cap;
    opt.build.policy =
        args.construction == "abort" ? ConstructionPolicy::abort : ConstructionPolicy::constrained_oracle;
    if (opt.mode == VerifyMode::sample && (!opt.samples || !opt.seed)) {
        throw usage_error("--mode sample requires --samples and --seed");
    }
    if (opt.mode != VerifyMode::sample && (opt.samples || opt.seed)) {
        throw usage_error("--samples and --seed apply to --mode sample only");
    }
    const auto report = run_verification(opt);
    const auto text = to_json(report, ReportFormat{!args.omit_timing, args.failure_cap}).dump(2) + "\n";
    if (args.output.empty()) {
        out << text;
    } else {
        std::ofstream file(args.output);
        if (!file) {
            throw validation_error("cannot write " + args.output);
        }
        file << text;
    }
    if (!args.repair_log.empty()) {
        std::ofstream log(args.repair_log);
        if (!log) {
            throw validation_error("cannot write " + args.repair_log);
        }
        for (const auto& e : report.repaired) {
            log << to_json(e).dump() << "\n";
        }
    }
    err << report.suite << " n=" << report.n << " " << report.mode << ": " << report.instances << " instances, "
        << report.failure_count << " failures" << (report.passed() ? " (pass)" : " (FAIL)") << "\n";
    return report.passed() ? kExitPass : kExitFailures;
}

struct DistributionArgs {
    std::string lifting;
    std::string file;
    std::string format = "json";
    unsigned jobs = 1;
};

inline int cmd_distribution(const DistributionArgs& args, std::ostream& out) {
    const auto doc = load_problem(args.file);
    const bool crawl = args.lifting == "rcr";
    const auto problem = problem_from_document(doc, crawl);
    const auto lottery = args.lifting == "rp"    ? random_priority(problem.profile, args.jobs)
                         : args.lifting == "rcr" ? crawler_from_random_endowments(problem.profile, args.jobs)
                                                 : core_from_random_endowments(problem.profile, args.jobs);
    if (args.format == "csv") {
        out << to_csv(lottery, doc.object_names());
    } else {
        auto j = to_json(lottery, doc.axis);
        j["lifting"] = args.lifting;
        out << j.dump(2) << "\n";
    }
    return kExitPass;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Crawler, TTC and priority rules on single-peaked domains, with exhaustive verification suites",
                 "peakswap"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run one rule on a problem file and print the allocation");
    run_cmd->add_option("rule", run.rule, "acr | dcr | ttc | sp")
        ->required()
        ->check(CLI::IsMember({"acr", "dcr", "ttc", "sp"}));
    run_cmd->add_option("problem", run.file, "Problem JSON file")->required();
    run_cmd->add_flag("--trace", run.trace, "Append one line per crawler step (acr, dcr)");
    run_cmd->add_option("--order", run.order, "Priority order for sp, 1-based agents, e.g. 5,2,4,7,3,6,1");

    VerifyArgs verify;
    verify.jobs = default_jobs();
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite and print its JSON report");
    std::vector<std::string> suites;
    for (const auto& [name, s] : suite_names()) {
        suites.push_back(name);
    }
    verify_cmd->add_option("suite", verify.suite, "theorem1 | theorem2 | corollary1 | rttc-rp | bijection | axioms | example3")
        ->required()
        ->check(CLI::IsMember(suites));
    verify_cmd->add_option("--n", verify.n, "Number of agents")->check(CLI::Range(1, static_cast<int>(kMaxAgents)));
    verify_cmd->add_option("--mode", verify.mode, "exhaustive | sample | exhaustive-n5")
        ->check(CLI::IsMember({"exhaustive", "sample", "exhaustive-n5"}));
    verify_cmd->add_option("--samples", verify.samples, "Number of sampled instances")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify.seed, "Sampling seed");
    verify_cmd->add_option("--jobs", verify.jobs, "Worker threads (default: PEAKSWAP_JOBS or all cores)")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--domain", verify.domain, "single-peaked | strict (strict: rttc-rp only)")
        ->check(CLI::IsMember({"single-peaked", "strict"}));
    verify_cmd->add_option("--construction", verify.construction, "bijection: fallback | abort")
        ->check(CLI::IsMember({"fallback", "abort"}));
    verify_cmd->add_option("--output", verify.output, "Write the report here instead of stdout");
    verify_cmd->add_option("--repair-log", verify.repair_log, "bijection: write every repaired endowment as JSON lines");
    verify_cmd->add_option("--failure-cap", verify.failure_cap, "Failures and repairs listed in the report");
    verify_cmd->add_flag("--omit-timing", verify.omit_timing, "Leave wall time out of the report");

    DistributionArgs dist;
    dist.jobs = default_jobs();
    auto* dist_cmd = app.add_subcommand("distribution", "Print the exact lottery of rp, rcr or rttc");
    dist_cmd->add_option("lifting", dist.lifting, "rp | rcr | rttc")
        ->required()
        ->check(CLI::IsMember({"rp", "rcr", "rttc"}));
    dist_cmd->add_option("problem", dist.file, "Problem JSON file")->required();
    dist_cmd->add_option("--format", dist.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    dist_cmd->add_option("--jobs", dist.jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }
    try {
        if (run_cmd->parsed()) {
            return cmd_run(run, out);
        }
        if (verify_cmd->parsed()) {
            if (verify.mode == "exhaustive-n5" && verify_cmd->count("--n") == 0) {
                verify.n = 5;
            }
            return cmd_verify(verify, out, err);
        }
        return cmd_distribution(dist, out);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const capability_error& e) {
        err << "capability error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

} // namespace peakswap::cli

#endif // PEAKSWAP_CLI_HPP
