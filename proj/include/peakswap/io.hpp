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
 * \file peakswap/io.hpp
 *
 * \brief JSON problem documents and JSON renderings of allocations,
 *  lotteries, violations and verification reports.
 *
 * Objects in a document are axis names, or 1-based axis positions when the
 * entry is an integer. Without an axis the names are o1..on.
 */

#ifndef PEAKSWAP_IO_HPP
#define PEAKSWAP_IO_HPP

#include <peakswap/axioms.hpp>
#include <peakswap/domain.hpp>
#include <peakswap/lotteries.hpp>
#include <peakswap/verification.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace peakswap {

/// Malformed or unreadable document.
class parse_error : public validation_error {
public:
    using validation_error::validation_error;
};

struct ProblemDocument {
    std::size_t n = 0;
    std::optional<std::vector<std::string>> axis;
    std::vector<std::vector<int>> preferences; ///< 0-based axis positions, best first
    std::optional<std::vector<int>> endowment; ///< 0-based, entry i is agent i's object

    std::vector<std::string> object_names() const { return axis ? *axis : default_object_names(n); }

    RawProblem raw() const { return RawProblem{n, preferences, endowment}; }

    friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

namespace detail {

inline int resolve_object(const nlohmann::json& entry, const std::vector<std::string>& names, const std::string& where) {
    if (entry.is_number_integer()) {
        const auto v = entry.get<long long>();
        if (v < 1 || v > static_cast<long long>(names.size())) {
            throw parse_error(where + ": object index " + std::to_string(v) + " is outside 1.." +
                              std::to_string(names.size()));
        }
        return static_cast<int>(v - 1);
    }
    if (entry.is_string()) {
        const auto name = entry.get<std::string>();
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (names[k] == name) {
                return static_cast<int>(k);
            }
        }
        throw parse_error(where + ": unknown object \"" + name + "\"");
    }
    throw parse_error(where + ": object must be a name or a 1-based index");
}

inline std::vector<int> resolve_word(const nlohmann::json& arr, const std::vector<std::string>& names,
                                     const std::string& where) {
    if (!arr.is_array()) {
        throw parse_error(where + " must be an array");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(resolve_object(arr[k], names, where));
    }
    return out;
}

} // namespace detail

/// Reads the document shape only; call `problem_from_document` to validate.
inline ProblemDocument parse_problem(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw parse_error("problem document must be a JSON object");
    }
    ProblemDocument doc;
    if (!j.contains("preferences") || !j["preferences"].is_array()) {
        throw parse_error("problem document needs a \"preferences\" array");
    }
    const auto& prefs = j["preferences"];
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
            throw parse_error("\"n\" must be a positive integer");
        }
        doc.n = j["n"].get<std::size_t>();
    } else {
        doc.n = prefs.size();
    }
    if (doc.n > kMaxAgents) {
        throw capability_error("at most " + std::to_string(kMaxAgents) + " agents are supported");
    }
    if (j.contains("axis")) {
        if (!j["axis"].is_array()) {
            throw parse_error("\"axis\" must be an array of names");
        }
        std::vector<std::string> axis;
        std::set<std::string> seen;
        for (const auto& name : j["axis"]) {
            if (!name.is_string()) {
                throw parse_error("axis entries must be strings");
            }
            if (!seen.insert(name.get<std::string>()).second) {
                throw parse_error("axis name \"" + name.get<std::string>() + "\" appears twice");
            }
            axis.push_back(name.get<std::string>());
        }
        if (axis.size() != doc.n) {
            throw parse_error("axis has " + std::to_string(axis.size()) + " names for n = " + std::to_string(doc.n));
        }
        doc.axis = std::move(axis);
    }
    const auto names = doc.object_names();
    for (std::size_t i = 0; i < prefs.size(); ++i) {
        doc.preferences.push_back(detail::resolve_word(prefs[i], names, "preference of agent " + std::to_string(i + 1)));
    }
    if (j.contains("endowment") && !j["endowment"].is_null()) {
        doc.endowment = detail::resolve_word(j["endowment"], names, "endowment");
    }
    return doc;
}

inline ProblemDocument parse_problem_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

inline ProblemDocument load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

/// Names when the document has an axis, 1-based positions otherwise.
inline nlohmann::json object_json(ObjectId o, const std::optional<std::vector<std::string>>& axis) {
    return axis ? nlohmann::json((*axis)[o.index]) : nlohmann::json(o.index + 1);
}

inline nlohmann::json to_json(const ProblemDocument& doc) {
    nlohmann::json j;
    j["n"] = doc.n;
    auto word = [&](const std::vector<int>& w) {
        auto arr = nlohmann::json::array();
        for (int v : w) {
            arr.push_back(object_json(object_at(static_cast<std::size_t>(v)), doc.axis));
        }
        return arr;
    };
    if (doc.axis) {
        j["axis"] = *doc.axis;
    }
    j["preferences"] = nlohmann::json::array();
    for (const auto& p : doc.preferences) {
        j["preferences"].push_back(word(p));
    }
    if (doc.endowment) {
        j["endowment"] = word(*doc.endowment);
    }
    return j;
}

/// Validates a document. Single-peakedness is enforced unless
/// `require_single_peaked` is false, in which case any strict profile passes.
inline Problem problem_from_document(const ProblemDocument& doc, bool require_single_peaked = true) {
    auto report = validate_problem(doc.raw());
    if (!require_single_peaked) {
        std::erase_if(report, [](const ValidationIssue& v) { return v.kind == IssueKind::not_single_peaked; });
    }
    if (!report.empty()) {
        throw validation_error(describe(report));
    }
    Problem p;
    for (const auto& w : doc.preferences) {
        p.profile.push_back(PreferenceRelation(detail::raw_to_word(w)));
    }
    if (doc.endowment) {
        p.endowment = Assignment(detail::raw_to_word(*doc.endowment));
    }
    return p;
}

/// Document for a profile and optional endowment, 1-based positions.
inline ProblemDocument document_from(const Profile& profile, const std::optional<Assignment>& endowment) {
    ProblemDocument doc;
    doc.n = profile.size();
    for (const auto& pref : profile) {
        std::vector<int> w;
        for (ObjectId o : pref.ranking()) {
            w.push_back(o.index);
        }
        doc.preferences.push_back(w);
    }
    if (endowment) {
        std::vector<int> w;
        for (ObjectId o : endowment->word()) {
            w.push_back(o.index);
        }
        doc.endowment = w;
    }
    return doc;
}

inline nlohmann::json allocation_json(const Assignment& x, const std::optional<std::vector<std::string>>& axis) {
    auto arr = nlohmann::json::array();
    for (ObjectId o : x.word()) {
        arr.push_back(object_json(o, axis));
    }
    return arr;
}

inline nlohmann::json order_json(const AgentOrder& f) {
    auto arr = nlohmann::json::array();
    for (AgentId a : f.agents_by_rank()) {
        arr.push_back(a.index + 1);
    }
    return arr;
}

inline nlohmann::json to_json(const Violation& v) {
    nlohmann::json j;
    j["kind"] = to_string(v.kind);
    std::visit(
        [&](const auto& w) {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, ParetoImprovement>) {
                j["dominating"] = allocation_json(w.dominating, std::nullopt);
            } else if constexpr (std::is_same_v<W, EndowmentShortfall>) {
                j["agent"] = w.agent.index + 1;
                j["received"] = w.received.index + 1;
                j["endowed"] = w.endowed.index + 1;
            } else if constexpr (std::is_same_v<W, Misreport>) {
                j["agent"] = w.agent.index + 1;
                auto rep = nlohmann::json::array();
                for (ObjectId o : w.report.ranking()) {
                    rep.push_back(o.index + 1);
                }
                j["report"] = rep;
                j["truthful"] = allocation_json(w.truthful, std::nullopt);
                j["misreported"] = allocation_json(w.misreported, std::nullopt);
            } else {
                auto members = nlohmann::json::array();
                auto objects = nlohmann::json::array();
                for (std::size_t k = 0; k < w.members.size(); ++k) {
                    members.push_back(w.members[k].index + 1);
                    objects.push_back(w.objects[k].index + 1);
                }
                j["coalition"] = members;
                j["reallocation"] = objects;
            }
        },
        v.witness);
    return j;
}

inline nlohmann::json to_json(const RationalLottery& lottery, const std::optional<std::vector<std::string>>& axis) {
    nlohmann::json j;
    j["n"] = lottery.n();
    j["denominator"] = lottery.denominator();
    j["entries"] = nlohmann::json::array();
    for (const auto& [x, c] : lottery.entries()) {
        j["entries"].push_back({{"allocation", allocation_json(x, axis)}, {"numerator", c}});
    }
    return j;
}

inline nlohmann::json to_json(const InstanceFailure& f) {
    nlohmann::json j;
    j["instance"] = f.instance;
    if (!f.profile.empty()) {
        j["problem"] = to_json(document_from(f.profile, f.endowment));
    }
    if (!f.outputs.empty()) {
        j["outputs"] = nlohmann::json::array();
        for (const auto& [name, x] : f.outputs) {
            j["outputs"].push_back({{"rule", name}, {"allocation", allocation_json(x, std::nullopt)}});
        }
    }
    j["detail"] = f.detail;
    if (f.violation) {
        j["violation"] = to_json(*f.violation);
    }
    return j;
}

inline nlohmann::json to_json(const RepairLogEntry& e) {
    nlohmann::json j;
    j["instance"] = e.instance;
    j["problem"] = to_json(document_from(e.profile, e.repair.endowment));
    j["chain_order"] = order_json(e.repair.chain_order);
    j["assigned_order"] = order_json(e.repair.assigned);
    j["reason"] = e.repair.reason;
    return j;
}

struct ReportFormat {
    bool timing = true;          ///< include wall_time_seconds
    std::size_t repair_cap = 20; ///< repaired entries listed inline
};

inline nlohmann::json to_json(const VerificationReport& r, ReportFormat fmt = {}) {
    nlohmann::json j;
    j["suite"] = r.suite;
    nlohmann::json params;
    params["n"] = r.n;
    params["mode"] = r.mode;
    params["domain"] = r.domain;
    params["samples"] = r.samples ? nlohmann::json(*r.samples) : nlohmann::json(nullptr);
    params["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    j["parameters"] = params;
    j["instances"] = r.instances;
    j["passed"] = r.passed();
    j["failure_count"] = r.failure_count;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : r.failures) {
        j["failures"].push_back(to_json(f));
    }
    if (r.suite == "bijection") {
        j["repaired_count"] = r.repaired_count;
        j["repaired_profiles"] = r.repaired_profiles;
        j["repaired"] = nlohmann::json::array();
        for (std::size_t k = 0; k < r.repaired.size() && k < fmt.repair_cap; ++k) {
            j["repaired"].push_back(to_json(r.repaired[k]));
        }
    }
    if (r.suite == "axioms") {
        j["divergence_witness"] = r.divergence_witness ? to_json(*r.divergence_witness) : nlohmann::json(nullptr);
    }
    if (fmt.timing) {
        j["wall_time_seconds"] = r.wall_time_seconds;
    }
    return j;
}

} // namespace peakswap

#endif // PEAKSWAP_IO_HPP
