// teamorder - command line front end: evaluate a line-up, run the solvers,
// report gap bounds, and run the benchmark suites.
#include <chrono>
#include <fstream>
#include <iostream>

#include "teamorder/io.hpp"

#include <CLI11.hpp>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCapExceeded = 3;

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

teamorder::Instance load_instance(const std::string& path, std::optional<int> target) {
    auto j = teamorder::load_json_file(path);
    if (target) j["target"] = *target;
    return teamorder::instance_from_json(j);
}

int cmd_evaluate(const std::string& path, const std::vector<int>& lineup_arg,
                 std::optional<int> target) {
    const auto inst = load_instance(path, target);
    teamorder::LineUp lineup;
    for (int v : lineup_arg) lineup.push_back(v - 1);
    teamorder::validate_lineup(inst, lineup);
    const auto report = teamorder::evaluate_lineup(inst, lineup);
    auto j = teamorder::win_report_to_json(report);
    j["lineup"] = teamorder::lineup_to_json(lineup);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_solve(const std::string& path, const std::string& method, double epsilon,
              std::optional<int> target) {
    const auto inst = load_instance(path, target);
    teamorder::SolveResult res;
    if (method == "brute") {
        res = teamorder::solve_brute(inst);
    } else if (method == "three-value") {
        res = teamorder::solve_three_value(inst);
    } else if (method == "ptas") {
        res = teamorder::solve_ptas(inst, epsilon);
    } else if (method == "max-weight") {
        res = teamorder::solve_max_weight_baseline(inst);
    } else if (method == "win-all") {
        auto r = teamorder::solve_win_all(inst);
        if (!r) throw teamorder::infeasible_error("no line-up can win every match");
        res = *r;
    } else {
        throw teamorder::validation_error("unknown method: " + method);
    }
    std::cout << teamorder::solve_result_to_json(res).dump(2) << "\n";
    return 0;
}

int cmd_bound(const std::string& path, std::optional<int> target) {
    const auto inst = load_instance(path, target);
    teamorder::json j;
    if (inst.n <= teamorder::brute_cap()) {
        j = teamorder::gap_audit_to_json(teamorder::audit_gap(inst));
    } else {
        const auto baseline = teamorder::solve_max_weight_baseline(inst);
        j = teamorder::gap_bound_to_json(
            teamorder::max_weight_gap_bound(inst, baseline.lineup));
        j["baseline"] = baseline.report.win_probability;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct BenchSink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    bool csv = false;
    std::vector<std::string> columns;

    void open(const std::string& path, bool as_csv) {
        csv = as_csv;
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw teamorder::validation_error("cannot open output file: " + path);
            out = &file;
        }
    }
    void write(const teamorder::json& rec) {
        if (!csv) {
            *out << rec.dump() << "\n";
            return;
        }
        if (columns.empty()) {
            for (auto it = rec.begin(); it != rec.end(); ++it) columns.push_back(it.key());
            for (std::size_t i = 0; i < columns.size(); ++i)
                *out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        }
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto& v = rec.at(columns[i]);
            if (v.is_string())
                *out << v.get<std::string>();
            else
                *out << v.dump();
            *out << (i + 1 < columns.size() ? "," : "\n");
        }
    }
};

int cmd_bench(const std::string& suite, std::uint64_t seed, int count,
              const std::string& out_path, bool csv) {
    using namespace teamorder;
    BenchSink sink;
    sink.open(out_path, csv);
    int pass = 0, fail = 0;

    auto record_common = [&](json& rec, int idx, const Instance& inst, bool ok) {
        rec["index"] = idx;
        rec["seed"] = seed + idx;
        rec["n"] = inst.n;
        rec["pass"] = ok;
        (ok ? pass : fail) += 1;
        sink.write(rec);
    };

    if (suite == "oracle-equivalence") {
        for (int idx = 0; idx < count; ++idx) {
            std::mt19937_64 meta(seed + idx);
            const int n = 3 + static_cast<int>(meta() % 5);  // 3..7
            GenSpec spec;
            spec.kind = gen_kind::three_value;
            spec.beta = 0.1 + 0.3 * (meta() % 3);        // 0.1, 0.4, 0.7
            spec.alpha = spec.beta + 0.2;
            spec.density = 0.4 + 0.2 * (meta() % 3);     // 0.4, 0.6, 0.8
            const auto inst = generate(spec, n, seed + idx);
            const auto t0 = std::chrono::steady_clock::now();
            const auto fast = solve_three_value(inst);
            const double fast_ms = elapsed_ms(t0);
            const auto brute = solve_brute(inst);
            const double gap =
                brute.report.win_probability - fast.report.win_probability;
            json rec = {{"generator", "three_value"},
                        {"win_probability", fast.report.win_probability},
                        {"brute_probability", brute.report.win_probability},
                        {"gap", gap},
                        {"solve_ms", fast_ms}};
            record_common(rec, idx, inst, std::abs(gap) <= 1e-10);
        }
    } else if (suite == "ptas-sweep") {
        for (int idx = 0; idx < count; ++idx) {
            std::mt19937_64 meta(seed + idx);
            const int n = 3 + static_cast<int>(meta() % 4);  // 3..6
            GenSpec spec;
            spec.kind = gen_kind::fixed_fractional_count;
            spec.fractional_count = 1 + static_cast<int>(meta() % 4);  // 1..4
            const auto inst = generate(spec, n, seed + idx);
            const double brute_p = solve_brute(inst).report.win_probability;
            for (double eps : {1.0, 0.5}) {
                const auto t0 = std::chrono::steady_clock::now();
                const auto res = solve_ptas(inst, eps);
                json rec = {{"generator", "fixed_fractional_count"},
                            {"epsilon", eps},
                            {"win_probability", res.report.win_probability},
                            {"brute_probability", brute_p},
                            {"gap", brute_p - res.report.win_probability},
                            {"minus_family_size", res.diagnostics["minus_family_size"]},
                            {"plus_family_size", res.diagnostics["plus_family_size"]},
                            {"solve_ms", elapsed_ms(t0)}};
                record_common(rec, idx, inst,
                              res.report.win_probability >= brute_p - eps - 1e-12);
            }
        }
    } else if (suite == "bound-audit") {
        for (int idx = 0; idx < count; ++idx) {
            const int n = (idx % 2 == 0) ? 6 : 8;
            const auto inst = generate({gen_kind::uniform_random}, n, seed + idx);
            const auto t0 = std::chrono::steady_clock::now();
            const auto audit = audit_gap(inst);
            json rec = {{"generator", "uniform_random"},
                        {"true_gap", audit.true_gap},
                        {"bound", audit.bound.bound},
                        {"regime", audit.bound.regime},
                        {"holds", audit.holds},
                        {"solve_ms", elapsed_ms(t0)}};
            record_common(rec, idx, inst, audit.holds);
        }
    } else if (suite == "equilibrium") {
        for (int idx = 0; idx < count; ++idx) {
            const auto inst = generate({gen_kind::uniform_random}, 4, seed + idx);
            const auto t0 = std::chrono::steady_clock::now();
            const auto rep = verify_uniform_equilibrium(inst);
            json rec = {{"generator", "uniform_random"},
                        {"max_deviation_gain", rep.max_deviation_gain},
                        {"game_value", rep.game_value},
                        {"solve_ms", elapsed_ms(t0)}};
            record_common(rec, idx, inst, rep.max_deviation_gain <= 1e-10);
        }
    } else {
        throw teamorder::validation_error("unknown suite: " + suite);
    }

    std::cout << json{{"suite", suite}, {"pass", pass}, {"fail", fail}}.dump() << "\n";
    return fail == 0 ? 0 : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"team order solver toolkit"};
    app.require_subcommand(1);

    std::string instance_path;
    std::vector<int> lineup_arg;
    std::optional<int> target;
    std::string method = "brute";
    double epsilon = 0.5;

    auto* evaluate = app.add_subcommand("evaluate", "win report for a given line-up");
    evaluate->add_option("-i,--instance", instance_path, "instance JSON file")->required();
    evaluate->add_option("-l,--lineup", lineup_arg, "1-based line-up, comma separated")
        ->required()
        ->delimiter(',');
    evaluate->add_option("-t,--target", target, "override the win target");

    auto* solve = app.add_subcommand("solve", "compute a line-up");
    solve->add_option("-i,--instance", instance_path, "instance JSON file")->required();
    solve->add_option("-m,--method", method, "brute|three-value|ptas|max-weight|win-all")
        ->required();
    solve->add_option("-e,--epsilon", epsilon, "approximation parameter for ptas");
    solve->add_option("-t,--target", target, "override the win target");

    auto* bound = app.add_subcommand("bound", "gap bound for the max-weight baseline");
    bound->add_option("-i,--instance", instance_path, "instance JSON file")->required();
    bound->add_option("-t,--target", target, "override the win target");

    std::string suite;
    std::uint64_t seed = 1;
    int count = 100;
    std::string out_path = "-";
    bool csv = false;
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("-s,--suite", suite,
                      "oracle-equivalence|ptas-sweep|bound-audit|equilibrium")
        ->required();
    bench->add_option("--seed", seed, "base RNG seed");
    bench->add_option("-c,--count", count, "number of instances");
    bench->add_option("-o,--out", out_path, "output file, - for stdout");
    bench->add_flag("--csv", csv, "CSV records instead of JSONL");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evaluate->parsed()) return cmd_evaluate(instance_path, lineup_arg, target);
        if (solve->parsed()) return cmd_solve(instance_path, method, epsilon, target);
        if (bound->parsed()) return cmd_bound(instance_path, target);
        if (bench->parsed()) return cmd_bench(suite, seed, count, out_path, csv);
    } catch (const teamorder::cap_exceeded_error& e) {
        std::cerr << "error: " << e.what() << " (required cap " << e.required_cap << ")\n";
        return kExitCapExceeded;
    } catch (const teamorder::infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const teamorder::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const teamorder::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
