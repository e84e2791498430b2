// matching.hpp - bipartite matching engines: maximum-weight perfect
// matching (Hungarian), maximum-weight matchings of every fixed size
// (successive shortest augmenting paths), and the budgeted / reward
// matching solver via Lagrangian relaxation with cycle patching.
#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "teamorder/core.hpp"

namespace teamorder {

// Square weighted bipartite graph with optional forbidden edges and a set
// of forced edges every returned matching must contain.
struct WeightedBipartite {
    int n = 0;
    std::vector<std::vector<double>> weight;
    std::vector<std::vector<char>> allowed;
    std::vector<Edge> forced;

    static WeightedBipartite from_matrix(std::vector<std::vector<double>> w) {
        WeightedBipartite g;
        g.n = static_cast<int>(w.size());
        g.weight = std::move(w);
        g.allowed.assign(g.n, std::vector<char>(g.n, 1));
        return g;
    }

    void forbid(int i, int j) { allowed[i][j] = 0; }
};

inline double matching_weight(const WeightedBipartite& g, const LineUp& m) {
    double w = 0.0;
    for (int i = 0; i < g.n; ++i) w += g.weight[i][m[i]];
    return w;
}

namespace detail {

constexpr double kBigWeight = 1e9;

// Jonker-Volgenant style O(n^3) assignment on a dense cost matrix
// (minimization). Returns row -> column.
inline std::vector<int> assignment_min(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j]) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

// Max-weight perfect matching ignoring forced edges; nullopt when no
// perfect matching avoids the forbidden edges.
inline std::optional<LineUp> hungarian_max(const WeightedBipartite& g) {
    const int n = g.n;
    if (n == 0) return LineUp{};
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost[i][j] = g.allowed[i][j] ? -g.weight[i][j] : kBigWeight;
    auto m = assignment_min(cost);
    for (int i = 0; i < n; ++i)
        if (!g.allowed[i][m[i]]) return std::nullopt;
    return m;
}

struct Contraction {
    WeightedBipartite sub;          // problem on the free vertices
    std::vector<int> row_map;       // sub row -> original row
    std::vector<int> col_map;       // sub col -> original col
    double forced_weight = 0.0;
    LineUp partial;                 // original-size assignment, -1 where free
};

inline Contraction contract_forced(const WeightedBipartite& g) {
    const int n = g.n;
    std::vector<char> row_used(n, 0), col_used(n, 0);
    Contraction c;
    c.partial.assign(n, -1);
    for (const Edge& e : g.forced) {
        if (row_used[e.row] || col_used[e.col])
            throw validation_error("forced edges are not vertex-disjoint");
        if (!g.allowed[e.row][e.col])
            throw validation_error("forced edge is forbidden");
        row_used[e.row] = col_used[e.col] = 1;
        c.partial[e.row] = e.col;
        c.forced_weight += g.weight[e.row][e.col];
    }
    for (int i = 0; i < n; ++i)
        if (!row_used[i]) c.row_map.push_back(i);
    for (int j = 0; j < n; ++j)
        if (!col_used[j]) c.col_map.push_back(j);
    const int m = static_cast<int>(c.row_map.size());
    c.sub.n = m;
    c.sub.weight.assign(m, std::vector<double>(m, 0.0));
    c.sub.allowed.assign(m, std::vector<char>(m, 1));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            c.sub.weight[a][b] = g.weight[c.row_map[a]][c.col_map[b]];
            c.sub.allowed[a][b] = g.allowed[c.row_map[a]][c.col_map[b]];
        }
    return c;
}

inline LineUp expand(const Contraction& c, const LineUp& sub_match) {
    LineUp full = c.partial;
    for (int a = 0; a < static_cast<int>(sub_match.size()); ++a)
        full[c.row_map[a]] = c.col_map[sub_match[a]];
    return full;
}

}  // namespace detail

// Maximum-weight perfect matching containing all forced edges and no
// forbidden edge. Among equal-weight optima the lexicographically smallest
// assignment array is returned. nullopt when infeasible.
inline std::optional<LineUp> max_weight_perfect(const WeightedBipartite& g) {
    auto c = detail::contract_forced(g);
    auto base = detail::hungarian_max(c.sub);
    if (!base) return std::nullopt;
    const double opt = matching_weight(c.sub, *base);
    constexpr double tol = 1e-9;

    // Lexicographic refinement: fix columns row by row, keeping optimality.
    WeightedBipartite rem = c.sub;
    LineUp sub_choice(c.sub.n, -1);
    std::vector<int> rrow(rem.n), rcol(rem.n);
    for (int i = 0; i < rem.n; ++i) rrow[i] = rcol[i] = i;
    double fixed = 0.0;
    for (int i = 0; i < c.sub.n; ++i) {
        int pick = -1;
        WeightedBipartite next;
        for (int jpos = 0; jpos < rem.n; ++jpos) {
            if (!rem.allowed[0][jpos]) continue;
            // Remove row 0 and column jpos, re-solve the remainder.
            WeightedBipartite r2;
            r2.n = rem.n - 1;
            r2.weight.assign(r2.n, std::vector<double>(r2.n, 0.0));
            r2.allowed.assign(r2.n, std::vector<char>(r2.n, 1));
            for (int a = 1; a < rem.n; ++a)
                for (int b = 0, bb = 0; b < rem.n; ++b) {
                    if (b == jpos) continue;
                    r2.weight[a - 1][bb] = rem.weight[a][b];
                    r2.allowed[a - 1][bb] = rem.allowed[a][b];
                    ++bb;
                }
            auto rest = detail::hungarian_max(r2);
            if (!rest) continue;
            const double total = fixed + rem.weight[0][jpos] + matching_weight(r2, *rest);
            if (total >= opt - tol) {
                pick = jpos;
                next = std::move(r2);
                break;  // columns scanned in increasing original order
            }
        }
        if (pick < 0) return std::nullopt;  // cannot happen once base exists
        sub_choice[rrow[0]] = rcol[pick];
        fixed += rem.weight[0][pick];
        rrow.erase(rrow.begin());
        rcol.erase(rcol.begin() + pick);
        rem = std::move(next);
    }
    return detail::expand(c, sub_choice);
}

struct SizedMatching {
    std::vector<Edge> edges;
    double weight = 0.0;
};

// Maximum-weight matchings of every exact size 0..n. Each size reduces to
// a square assignment problem: n-s dummy rows and n-s dummy columns absorb
// the unmatched real vertices at zero weight, and dummy-dummy pairs are
// forbidden so that exactly s real pairs remain. Entry s is nullopt when
// no matching of size s exists.
inline std::vector<std::optional<SizedMatching>> max_weight_by_size(
    const WeightedBipartite& g) {
    const int n = g.n;
    std::vector<std::optional<SizedMatching>> out(n + 1);
    out[0] = SizedMatching{};

    for (int s = 1; s <= n; ++s) {
        const int d = n - s;       // dummies per side
        const int big = n + d;     // padded dimension
        std::vector<std::vector<double>> cost(big, std::vector<double>(big, 0.0));
        for (int i = 0; i < big; ++i)
            for (int j = 0; j < big; ++j) {
                if (i < n && j < n)
                    cost[i][j] = g.allowed[i][j] ? -g.weight[i][j] : detail::kBigWeight;
                else if (i >= n && j >= n)
                    cost[i][j] = detail::kBigWeight;  // dummies must absorb reals
            }
        const auto m = detail::assignment_min(cost);
        SizedMatching sm;
        bool ok = true;
        for (int i = 0; i < big && ok; ++i) {
            const int j = m[i];
            if (i >= n || j >= n) continue;  // a dummy absorbed this vertex
            if (!g.allowed[i][j]) ok = false;
            sm.edges.push_back({i, j});
            sm.weight += g.weight[i][j];
        }
        if (!ok || static_cast<int>(sm.edges.size()) != s) {
            // A forbidden or dummy-dummy edge was forced: size s infeasible,
            // and so is every larger size.
            break;
        }
        out[s] = std::move(sm);
    }
    return out;
}

inline std::optional<SizedMatching> max_weight_of_size(const WeightedBipartite& g, int s) {
    if (s < 0 || s > g.n) throw validation_error("size out of range");
    return max_weight_by_size(g)[s];
}

// Budgeted / reward perfect matching. In budget mode a feasible matching M
// has c(M) <= limit; in reward mode c(M) >= limit (reduced internally to
// budget mode via c'(e) = 1 - c(e), budget n - R).
struct BudgetedProblem {
    WeightedBipartite graph;
    std::vector<std::vector<double>> cost;
    bool reward_mode = false;
    double limit = 0.0;
};

struct BudgetedResult {
    LineUp matching;
    double weight = 0.0;
    double cost = 0.0;  // in the caller's (pre-reduction) cost function
    double lagrangian_upper_bound = 0.0;
};

namespace detail {

inline double matrix_cost(const std::vector<std::vector<double>>& c, const LineUp& m) {
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) s += c[i][m[i]];
    return s;
}

}  // namespace detail

inline std::optional<BudgetedResult> solve_budgeted(const BudgetedProblem& prob) {
    const int n = prob.graph.n;
    // Reduce reward mode to budget mode.
    std::vector<std::vector<double>> cost = prob.cost;
    double budget = prob.limit;
    if (prob.reward_mode) {
        for (auto& row : cost)
            for (auto& v : row) v = 1.0 - v;
        budget = n - prob.limit;
    }

    auto c = detail::contract_forced(prob.graph);
    const int m = c.sub.n;
    std::vector<std::vector<double>> sub_cost(m, std::vector<double>(m, 0.0));
    double forced_cost = 0.0;
    for (int i = 0; i < n; ++i)
        if (c.partial[i] >= 0) forced_cost += cost[i][c.partial[i]];
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sub_cost[a][b] = cost[c.row_map[a]][c.col_map[b]];
    const double sub_budget = budget - forced_cost;

    // Lagrangian solve on the contracted problem: maximize w - lambda*c.
    auto solve_lambda = [&](double lambda) -> std::optional<LineUp> {
        WeightedBipartite gl = c.sub;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) gl.weight[a][b] -= lambda * sub_cost[a][b];
        return detail::hungarian_max(gl);
    };

    double upper = std::numeric_limits<double>::infinity();
    std::optional<LineUp> best_feasible;
    double best_weight = -std::numeric_limits<double>::infinity();
    auto consider = [&](const LineUp& sm) {
        if (detail::matrix_cost(sub_cost, sm) <= sub_budget + 1e-12) {
            const double w = matching_weight(c.sub, sm);
            if (!best_feasible || w > best_weight + 1e-12 ||
                (w > best_weight - 1e-12 && sm < *best_feasible)) {
                best_feasible = sm;
                best_weight = w;
            }
        }
    };
    auto probe = [&](double lambda) -> std::optional<LineUp> {
        auto sm = solve_lambda(lambda);
        if (!sm) return std::nullopt;
        const double lag = matching_weight(c.sub, *sm) -
                           lambda * detail::matrix_cost(sub_cost, *sm);
        upper = std::min(upper, lag + lambda * sub_budget);
        consider(*sm);
        return sm;
    };

    auto at_zero = probe(0.0);
    if (!at_zero) return std::nullopt;  // no perfect matching at all

    if (best_feasible) {
        // Budget vacuous for the weight optimum: tie-break like the
        // unconstrained solver, provided the refined optimum stays feasible.
        if (auto lex = max_weight_perfect(prob.graph)) {
            LineUp sub(m);
            for (int a = 0; a < m; ++a) {
                const int col = (*lex)[c.row_map[a]];
                sub[a] = static_cast<int>(std::lower_bound(c.col_map.begin(),
                                                           c.col_map.end(), col) -
                                          c.col_map.begin());
            }
            consider(sub);
        }
    } else {
        // Feasibility check at the cost-minimizing end.
        WeightedBipartite gmin = c.sub;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) gmin.weight[a][b] = -sub_cost[a][b];
        auto min_cost = detail::hungarian_max(gmin);
        if (!min_cost || detail::matrix_cost(sub_cost, *min_cost) > sub_budget + 1e-12)
            return std::nullopt;  // budget below any perfect matching's cost
        consider(*min_cost);
        LineUp m_feasible = *min_cost;
        LineUp m_infeasible = *at_zero;

        // Bisect lambda over [0, 4n] to bracket the feasibility flip.
        double lo = 0.0, hi = 4.0 * std::max(n, 1);
        if (auto sm = probe(hi)) {
            if (detail::matrix_cost(sub_cost, *sm) <= sub_budget + 1e-12) {
                m_feasible = *sm;
                while (hi - lo > 1e-9) {
                    const double mid = 0.5 * (lo + hi);
                    auto pm = probe(mid);
                    if (!pm) break;
                    if (detail::matrix_cost(sub_cost, *pm) <= sub_budget + 1e-12) {
                        hi = mid;
                        m_feasible = *pm;
                    } else {
                        lo = mid;
                        m_infeasible = *pm;
                    }
                }
            }
        }
        // Cycle patching: walk from the infeasible optimum toward the
        // feasible one, swapping alternating cycles one at a time; every
        // intermediate matching is a candidate.
        LineUp cur = m_infeasible;
        std::vector<char> done(m, 0);
        for (int start = 0; start < m; ++start) {
            if (done[start] || cur[start] == m_feasible[start]) continue;
            std::vector<int> cycle;
            int r = start;
            do {
                cycle.push_back(r);
                done[r] = 1;
                const int col = m_feasible[r];
                int nxt = -1;
                for (int i = 0; i < m; ++i)
                    if (cur[i] == col) {
                        nxt = i;
                        break;
                    }
                r = nxt;
            } while (r != start && r >= 0);
            for (int row : cycle) cur[row] = m_feasible[row];
            consider(cur);
        }
    }

    if (!best_feasible) return std::nullopt;
    BudgetedResult res;
    res.matching = detail::expand(c, *best_feasible);
    res.weight = matching_weight(prob.graph, res.matching);
    res.lagrangian_upper_bound = upper + c.forced_weight;
    double caller_cost = 0.0;
    for (int i = 0; i < n; ++i) caller_cost += prob.cost[i][res.matching[i]];
    res.cost = caller_cost;
    return res;
}

}  // namespace teamorder
