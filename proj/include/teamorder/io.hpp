// io.hpp - JSON (de)serialization for all public types. Player indices
// are 1-based on the wire and 0-based in memory.
#pragma once

#include <fstream>

#include "teamorder/bounds.hpp"
#include "teamorder/extensions.hpp"

#include <json.hpp>

namespace teamorder {

using nlohmann::json;

inline json lineup_to_json(const LineUp& lineup) {
    json arr = json::array();
    for (int v : lineup) arr.push_back(v + 1);
    return arr;
}

inline LineUp lineup_from_json(const json& arr, int n) {
    if (!arr.is_array()) throw validation_error("lineup must be an array");
    LineUp lineup;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw validation_error("lineup entries must be integers");
        lineup.push_back(v.get<int>() - 1);
    }
    if (!is_permutation_of_n(lineup, n))
        throw validation_error("lineup is not a permutation of 1..n");
    return lineup;
}

inline Instance instance_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("p"))
        throw validation_error("instance JSON requires fields n and p");
    const int n = j.at("n").get<int>();
    auto p = j.at("p").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(p.size()) != n)
        throw validation_error("field n disagrees with the matrix dimension");
    std::optional<int> target;
    if (j.contains("target")) target = j.at("target").get<int>();
    return validate(p, target);
}

inline json instance_to_json(const Instance& inst) {
    return {{"n", inst.n}, {"p", inst.p}, {"target", inst.target}};
}

inline json win_report_to_json(const WinReport& r) {
    return {{"win_probability", r.win_probability},
            {"distribution", r.distribution},
            {"mean", r.mean},
            {"variance", r.variance}};
}

inline json solve_result_to_json(const SolveResult& r) {
    json j = win_report_to_json(r.report);
    j["lineup"] = lineup_to_json(r.lineup);
    j["method"] = r.method;
    j["diagnostics"] = r.diagnostics;
    return j;
}

inline json gap_bound_to_json(const GapBound& gb) {
    json j = {{"weight", gb.weight}, {"bound", gb.bound}, {"regime", gb.regime}};
    if (gb.part1_bound) j["part1_bound"] = *gb.part1_bound;
    if (gb.part2_exact) j["part2_exact"] = *gb.part2_exact;
    if (gb.part2_simplified) j["part2_simplified"] = *gb.part2_simplified;
    return j;
}

inline json gap_audit_to_json(const GapAudit& a) {
    json j = gap_bound_to_json(a.bound);
    j["optimum"] = a.optimum;
    j["baseline"] = a.baseline;
    j["true_gap"] = a.true_gap;
    j["holds"] = a.holds;
    j["asymptotic_regime"] = a.asymptotic_regime;
    return j;
}

inline MultiInstance multi_from_json(const json& j) {
    MultiInstance inst;
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    inst.k = j.at("k").get<int>();
    inst.w = j.at("w").get<std::vector<std::vector<std::vector<int>>>>();
    validate_multi(inst);
    return inst;
}

inline json multi_to_json(const MultiInstance& inst) {
    return {{"n", inst.n}, {"m", inst.m}, {"k", inst.k}, {"w", inst.w}};
}

inline HittingSetInstance hitting_set_from_json(const json& j) {
    HittingSetInstance hs;
    hs.lambda = j.at("lambda").get<int>();
    hs.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    hs.x = j.at("x").get<int>();
    validate_hitting_set(hs);
    return hs;
}

inline json hitting_set_to_json(const HittingSetInstance& hs) {
    return {{"lambda", hs.lambda}, {"sets", hs.sets}, {"x", hs.x}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace teamorder
