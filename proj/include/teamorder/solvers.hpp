// solvers.hpp - line-up solvers: exhaustive oracle, the polynomial solver
// for instances with at most two positive probability values, the
// epsilon-approximation scheme, and the max-weight / win-all baselines.
#pragma once

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "teamorder/matching.hpp"
#include "teamorder/pb_prob.hpp"

#include <json.hpp>

namespace teamorder {

struct SolveResult {
    LineUp lineup;
    WinReport report;
    std::string method;
    nlohmann::json diagnostics = nlohmann::json::object();
};

namespace detail {

inline int env_cap(const char* name, int fallback) {
    if (const char* v = std::getenv(name)) {
        const int parsed = std::atoi(v);
        if (parsed > 0) return parsed;
    }
    return fallback;
}

inline SolveResult finish(const Instance& inst, LineUp lineup, std::string method) {
    SolveResult r;
    r.report = evaluate_lineup(inst, lineup);
    r.lineup = std::move(lineup);
    r.method = std::move(method);
    return r;
}

// Prefer higher win probability; on (float-exact) ties prefer the
// lexicographically smaller assignment.
inline bool better(double prob, const LineUp& lu, double best_prob, const LineUp& best_lu) {
    if (best_lu.empty()) return true;
    if (prob != best_prob) return prob > best_prob;
    return lu < best_lu;
}

}  // namespace detail

inline int brute_cap() { return detail::env_cap("TEAMORDER_BRUTE_CAP", 10); }

inline SolveResult solve_brute(const Instance& inst, int cap = brute_cap()) {
    if (inst.n > cap)
        throw cap_exceeded_error("instance size exceeds brute-force cap", inst.n);
    LineUp perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    LineUp best;
    double best_prob = -1.0;
    do {
        std::vector<double> probs(inst.n);
        for (int i = 0; i < inst.n; ++i) probs[i] = inst.p[i][perm[i]];
        const auto dist = win_distribution(probs);
        double prob = 0.0;
        for (int k = inst.target; k <= inst.n; ++k) prob += dist[k];
        if (detail::better(prob, perm, best_prob, best)) {
            best = perm;
            best_prob = prob;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return detail::finish(inst, best, "brute");
}

// Complete a partial assignment to the lexicographically smallest
// permutation, preferring zero-probability edges for the free rows.
inline LineUp complete_lineup(const Instance& inst, const std::vector<Edge>& edges) {
    LineUp lineup(inst.n, -1);
    std::vector<char> col_used(inst.n, 0);
    for (const Edge& e : edges) {
        lineup[e.row] = e.col;
        col_used[e.col] = 1;
    }
    for (int i = 0; i < inst.n; ++i) {
        if (lineup[i] >= 0) continue;
        int pick = -1;
        for (int j = 0; j < inst.n; ++j) {
            if (col_used[j]) continue;
            if (inst.p[i][j] == 0.0) {
                pick = j;
                break;
            }
            if (pick < 0) pick = j;
        }
        lineup[i] = pick;
        col_used[pick] = 1;
    }
    return lineup;
}

// Iterative solver for instances whose probabilities take at most two
// positive values: drop the zero edges, then for every size s from the
// target upward take a maximum-weight matching of exactly s edges and keep
// the one with the best winning probability.
inline SolveResult solve_three_value(const Instance& inst) {
    const auto cls = classify(inst);
    if (cls.tag == instance_tag::general)
        throw validation_error("instance has more than two positive probability values");

    WeightedBipartite g = WeightedBipartite::from_matrix(inst.p);
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] == 0.0) g.forbid(i, j);

    const auto by_size = max_weight_by_size(g);
    LineUp best;
    double best_prob = -1.0;
    int best_size = -1;
    for (int s = inst.target; s <= inst.n; ++s) {
        if (!by_size[s]) continue;
        const LineUp lineup = complete_lineup(inst, by_size[s]->edges);
        const double prob = evaluate_lineup(inst, lineup).win_probability;
        if (detail::better(prob, lineup, best_prob, best)) {
            best = lineup;
            best_prob = prob;
            best_size = s;
        }
    }
    if (best.empty()) {
        // No matching of positive edges reaches the target: probability 0
        // under every line-up.
        best = complete_lineup(inst, {});
        best_size = 0;
    }
    auto r = detail::finish(inst, best, "three-value");
    r.diagnostics["selected_size"] = best_size;
    return r;
}

inline SolveResult solve_max_weight_baseline(const Instance& inst) {
    auto m = max_weight_perfect(WeightedBipartite::from_matrix(inst.p));
    // Complete graphs always admit a perfect matching.
    auto r = detail::finish(inst, *m, "max-weight");
    r.diagnostics["matching_weight"] =
        matching_weight(WeightedBipartite::from_matrix(inst.p), r.lineup);
    return r;
}

// Line-up maximizing the probability of winning every match: max-weight
// perfect matching under log-probability weights on the nonzero edges.
inline std::optional<SolveResult> solve_win_all(const Instance& inst) {
    WeightedBipartite g;
    g.n = inst.n;
    g.weight.assign(inst.n, std::vector<double>(inst.n, 0.0));
    g.allowed.assign(inst.n, std::vector<char>(inst.n, 1));
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j) {
            if (inst.p[i][j] > 0.0)
                g.weight[i][j] = std::log(inst.p[i][j]);
            else
                g.forbid(i, j);
        }
    auto m = max_weight_perfect(g);
    if (!m) return std::nullopt;
    auto r = detail::finish(inst, *m, "win-all");
    double product = 1.0;
    for (int i = 0; i < inst.n; ++i) product *= inst.p[i][(*m)[i]];
    r.diagnostics["win_all_probability"] = product;
    return r;
}

struct NonzeroWin {
    bool possible = false;
    std::optional<LineUp> witness;  // line-up with positive win probability
};

inline NonzeroWin check_nonzero_win(const Instance& inst) {
    WeightedBipartite g = WeightedBipartite::from_matrix(inst.p);
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j) {
            g.weight[i][j] = 1.0;
            if (inst.p[i][j] == 0.0) g.forbid(i, j);
        }
    const auto by_size = max_weight_by_size(g);
    for (int s = inst.n; s >= inst.target; --s) {
        if (!by_size[s]) continue;
        return {true, complete_lineup(inst, by_size[s]->edges)};
    }
    return {false, std::nullopt};
}

// Families of fractional-edge matchings seeding the approximation scheme:
// minus_family holds matchings N within the fractional edges with variance
// c(N) <= threshold; plus_family holds the inclusion-minimal matchings
// whose variance exceeds it.
struct EpsilonFamilies {
    double epsilon_internal = 0.0;
    double variance_threshold = 0.0;
    std::vector<std::vector<Edge>> minus_family;
    std::vector<std::vector<Edge>> plus_family;
    std::int64_t size_cap = 0;
};

inline std::int64_t family_cap() {
    if (const char* v = std::getenv("TEAMORDER_FAMILY_CAP")) {
        const long long parsed = std::atoll(v);
        if (parsed > 0) return parsed;
    }
    return 1'000'000;
}

inline EpsilonFamilies build_families(const Instance& inst, double eps_internal,
                                      std::int64_t cap = family_cap()) {
    const auto cls = classify(inst);
    EpsilonFamilies fam;
    fam.epsilon_internal = eps_internal;
    fam.variance_threshold = 1.0 / (eps_internal * eps_internal);
    fam.size_cap = cap;

    const double size_bound =
        cls.delta ? 2.0 / (*cls.delta) * fam.variance_threshold
                  : std::numeric_limits<double>::infinity();

    // DFS over the fractional edges in fixed order; prune extensions that
    // reuse a vertex. Members are emitted into plus_family exactly when the
    // cumulative variance first exceeds the threshold, so minimality holds
    // by construction.
    std::vector<Edge> stack;
    std::vector<char> row_used(inst.n, 0), col_used(inst.n, 0);
    std::int64_t members = 0;

    auto count = [&]() {
        if (++members > cap)
            throw cap_exceeded_error("family enumeration exceeds size cap", members);
    };

    auto dfs = [&](auto&& self, std::size_t start, double cost) -> void {
        count();
        // Low-variance members obey the size bound (every fractional edge
        // costs at least delta/2); minimal exceeding members may have one
        // extra edge.
        if (static_cast<double>(stack.size()) > size_bound)
            throw std::logic_error("family member exceeds the size bound");
        fam.minus_family.push_back(stack);
        for (std::size_t k = start; k < cls.fractional.size(); ++k) {
            const Edge e = cls.fractional[k];
            if (row_used[e.row] || col_used[e.col]) continue;
            const double pe = inst.p[e.row][e.col];
            const double ce = pe * (1.0 - pe);
            stack.push_back(e);
            if (cost + ce > fam.variance_threshold) {
                count();
                fam.plus_family.push_back(stack);
            } else {
                row_used[e.row] = col_used[e.col] = 1;
                self(self, k + 1, cost + ce);
                row_used[e.row] = col_used[e.col] = 0;
            }
            stack.pop_back();
        }
    };
    dfs(dfs, 0, 0.0);
    return fam;
}

// The epsilon-approximation solver. Phase 1 fixes a low-variance fractional
// matching and completes it with 0/1 edges; phase 2 sweeps a budget grid
// over the high-variance subgraphs and scores candidates by the normal
// approximation argument (target-1 - w) / sqrt(c).
inline SolveResult solve_ptas(const Instance& inst, double epsilon,
                              std::int64_t cap = family_cap()) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw validation_error("epsilon outside (0,1]");
    const double eps = epsilon / 4.0;
    const auto fam = build_families(inst, eps, cap);
    const int n = inst.n;
    const int threshold = inst.target - 1;  // losing means <= target-1 wins

    LineUp best1, best2;
    double best1_prob = -1.0;
    std::int64_t phase1_candidates = 0;

    // Phase 1: the free part uses only 0/1 edges disjoint from N.
    for (const auto& fixed : fam.minus_family) {
        WeightedBipartite g;
        g.n = n;
        g.weight.assign(n, std::vector<double>(n, 0.0));
        g.allowed.assign(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (inst.p[i][j] == 0.0 || inst.p[i][j] == 1.0) {
                    g.allowed[i][j] = 1;
                    g.weight[i][j] = inst.p[i][j];
                }
        std::vector<char> row_used(n, 0), col_used(n, 0);
        for (const Edge& e : fixed) {
            row_used[e.row] = 1;
            col_used[e.col] = 1;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (row_used[i] || col_used[j]) g.allowed[i][j] = 0;
        for (const Edge& e : fixed) {
            g.allowed[e.row][e.col] = 1;
            g.weight[e.row][e.col] = inst.p[e.row][e.col];
        }
        g.forced = fixed;
        auto m = max_weight_perfect(g);
        if (!m) continue;  // this subgraph has no perfect matching
        ++phase1_candidates;
        const double prob = evaluate_lineup(inst, *m).win_probability;
        if (detail::better(prob, *m, best1_prob, best1)) {
            best1 = *m;
            best1_prob = prob;
        }
    }

    // Phase 2: budget grid x_i = eps^-2 + i/n over the high-variance
    // subgraphs, falling back to the reward problem when the budgeted
    // optimum stays below the win threshold.
    double best2_score = std::numeric_limits<double>::infinity();
    std::string phase2_skip;
    std::int64_t phase2_candidates = 0;
    if (fam.variance_threshold > n / 4.0)
        phase2_skip = "phase-2 skipped: variance threshold exceeds n/4";
    for (const auto& fixed : fam.plus_family) {
        BudgetedProblem bp;
        bp.graph.n = n;
        bp.graph.weight = inst.p;
        bp.graph.allowed.assign(n, std::vector<char>(n, 1));
        std::vector<char> row_used(n, 0), col_used(n, 0);
        for (const Edge& e : fixed) {
            row_used[e.row] = 1;
            col_used[e.col] = 1;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (row_used[i] || col_used[j]) bp.graph.allowed[i][j] = 0;
        for (const Edge& e : fixed) bp.graph.allowed[e.row][e.col] = 1;
        bp.graph.forced = fixed;
        bp.cost.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                bp.cost[i][j] = inst.p[i][j] * (1.0 - inst.p[i][j]);

        const int grid_max = n * n / 4;
        for (int i = 0; i <= grid_max; ++i) {
            const double x_i = fam.variance_threshold + static_cast<double>(i) / n;
            bp.reward_mode = false;
            bp.limit = x_i;
            auto res = solve_budgeted(bp);
            if (res && res->weight < threshold && i >= 1) {
                bp.reward_mode = true;
                bp.limit = fam.variance_threshold + static_cast<double>(i - 1) / n;
                res = solve_budgeted(bp);
            }
            if (!res) continue;
            ++phase2_candidates;
            // Every phase-2 matching contains N, so its variance exceeds
            // the threshold; the score below is then well defined.
            if (!(res->cost > fam.variance_threshold - 1e-9))
                throw std::logic_error("phase-2 candidate variance at or below threshold");
            const double score = (threshold - res->weight) / std::sqrt(res->cost);
            if (score < best2_score ||
                (score == best2_score && !best2.empty() && res->matching < best2)) {
                best2_score = score;
                best2 = res->matching;
            }
        }
    }

    if (best1.empty() && best2.empty())
        throw infeasible_error("no candidate subgraph admits a perfect matching");

    LineUp chosen;
    std::string branch;
    if (best2.empty()) {
        chosen = best1;
        branch = "phase1";
    } else if (best1.empty()) {
        chosen = best2;
        branch = "phase2";
    } else {
        const double p2 = evaluate_lineup(inst, best2).win_probability;
        if (detail::better(p2, best2, best1_prob, best1)) {
            chosen = best2;
            branch = "phase2";
        } else {
            chosen = best1;
            branch = "phase1";
        }
    }
    auto r = detail::finish(inst, chosen, "ptas");
    r.diagnostics["epsilon"] = epsilon;
    r.diagnostics["epsilon_internal"] = eps;
    r.diagnostics["variance_threshold"] = fam.variance_threshold;
    r.diagnostics["minus_family_size"] = fam.minus_family.size();
    r.diagnostics["plus_family_size"] = fam.plus_family.size();
    r.diagnostics["phase1_candidates"] = phase1_candidates;
    r.diagnostics["phase2_candidates"] = phase2_candidates;
    r.diagnostics["branch"] = branch;
    if (!best2.empty()) r.diagnostics["phase2_score"] = best2_score;
    if (!phase2_skip.empty() && fam.plus_family.empty())
        r.diagnostics["phase2_skip_reason"] = phase2_skip;
    return r;
}

}  // namespace teamorder
