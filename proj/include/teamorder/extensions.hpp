// extensions.hpp - the multi-team variant (exact desk-scale solver plus
// the hardness reduction from Hitting Set) and the uniform-mixture
// equilibrium verifier for the simultaneous-move game.
#pragma once

#include "teamorder/pb_prob.hpp"
#include "teamorder/solvers.hpp"

namespace teamorder {

// One team T0 plays a single line-up against m fixed opposing teams.
// w[l][i][j] = 1 when T0 player i beats player j of team l. T0 beats team
// l when it wins at least floor(n/2)+1 of the n matches; the question is
// whether some line-up beats at least k of the m teams.
struct MultiInstance {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<std::vector<std::vector<int>>> w;
};

inline void validate_multi(const MultiInstance& inst) {
    if (inst.n < 1) throw validation_error("n must be >= 1");
    if (inst.m < 1) throw validation_error("m must be >= 1");
    if (inst.k < 1 || inst.k > inst.m) throw validation_error("k outside [1,m]");
    if (static_cast<int>(inst.w.size()) != inst.m)
        throw validation_error("expected m weight matrices");
    for (const auto& mat : inst.w) {
        if (static_cast<int>(mat.size()) != inst.n)
            throw validation_error("weight matrix is not n-by-n");
        for (const auto& row : mat) {
            if (static_cast<int>(row.size()) != inst.n)
                throw validation_error("weight matrix is not n-by-n");
            for (int v : row)
                if (v != 0 && v != 1) throw validation_error("weights must be binary");
        }
    }
}

struct MultiResult {
    LineUp lineup;
    int teams_beaten = 0;
    bool meets_k = false;
};

inline int multi_cap() { return detail::env_cap("TEAMORDER_MULTI_CAP", 9); }

// Exhaustive search over line-ups with branch-and-bound pruning: a partial
// assignment is abandoned when the number of teams still able to reach the
// win threshold cannot beat the best complete line-up found so far.
inline MultiResult solve_multi(const MultiInstance& inst, int cap = multi_cap()) {
    validate_multi(inst);
    if (inst.n > cap)
        throw cap_exceeded_error("instance size exceeds multi-team cap", inst.n);
    const int n = inst.n, m = inst.m;
    const int threshold = n / 2 + 1;

    MultiResult best;
    best.teams_beaten = -1;
    LineUp cur(n, -1);
    std::vector<char> col_used(n, 0);
    std::vector<int> wins(m, 0);

    auto dfs = [&](auto&& self, int row) -> void {
        int alive = 0;
        for (int l = 0; l < m; ++l)
            if (wins[l] + (n - row) >= threshold) ++alive;
        if (alive <= best.teams_beaten) return;
        if (row == n) {
            int beaten = 0;
            for (int l = 0; l < m; ++l)
                if (wins[l] >= threshold) ++beaten;
            if (beaten > best.teams_beaten) {
                best.teams_beaten = beaten;
                best.lineup = cur;
            }
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (col_used[j]) continue;
            col_used[j] = 1;
            cur[row] = j;
            for (int l = 0; l < m; ++l) wins[l] += inst.w[l][row][j];
            self(self, row + 1);
            for (int l = 0; l < m; ++l) wins[l] -= inst.w[l][row][j];
            col_used[j] = 0;
            cur[row] = -1;
        }
    };
    dfs(dfs, 0);
    best.meets_k = best.teams_beaten >= inst.k;
    return best;
}

// Hitting Set: pick at most x of the lambda elements so every subset in
// `sets` contains a picked element. Elements are 1-based.
struct HittingSetInstance {
    int lambda = 0;
    std::vector<std::vector<int>> sets;
    int x = 0;
};

inline void validate_hitting_set(const HittingSetInstance& hs) {
    if (hs.lambda < 1) throw validation_error("lambda must be >= 1");
    if (hs.x < 0 || hs.x > hs.lambda) throw validation_error("x outside [0,lambda]");
    if (hs.sets.empty()) throw validation_error("at least one subset required");
    for (const auto& s : hs.sets) {
        if (s.empty()) throw validation_error("empty subset is unhittable");
        for (int e : s)
            if (e < 1 || e > hs.lambda) throw validation_error("element outside universe");
    }
}

inline bool is_normalized_hitting_set(const HittingSetInstance& hs) {
    return hs.lambda % 2 == 0 && hs.x % 2 == 0 && hs.lambda >= 2 * hs.x;
}

// Pad an instance into the reduction's normal form (even universe size,
// even budget, lambda >= 2x) without changing the yes/no answer. Budget
// parity is fixed by a fresh element plus the singleton subset forcing it
// into any hitting set; universe growth adds elements no subset contains.
inline HittingSetInstance normalize_hitting_set(HittingSetInstance hs) {
    validate_hitting_set(hs);
    if (hs.x % 2 == 1) {
        ++hs.lambda;
        hs.sets.push_back({hs.lambda});
        ++hs.x;
    }
    while (hs.lambda % 2 == 1 || hs.lambda < 2 * hs.x) ++hs.lambda;
    return hs;
}

// The hardness reduction: universe elements become T2's players (columns),
// and T0's rows split into three groups. Rows 1..x can only beat team l
// through a column whose element lies in subset l; the next lambda/2 rows
// beat everyone; the remaining lambda/2 - x rows beat no one. Each team
// then gets exactly lambda/2 free wins, so beating all m teams needs one
// subset-hitting win from the first group per team, i.e. the x columns
// matched to the first group must form a hitting set.
inline MultiInstance reduce_hitting_set(const HittingSetInstance& hs) {
    validate_hitting_set(hs);
    if (!is_normalized_hitting_set(hs))
        throw validation_error("hitting set instance is not normalized");
    MultiInstance out;
    out.n = hs.lambda;
    out.m = static_cast<int>(hs.sets.size());
    out.k = out.m;
    out.w.assign(out.m,
                 std::vector<std::vector<int>>(out.n, std::vector<int>(out.n, 0)));
    const int n2_end = hs.x + hs.lambda / 2;  // rows [x, n2_end) are all-ones
    for (int l = 0; l < out.m; ++l) {
        for (int e : hs.sets[l])
            for (int i = 0; i < hs.x; ++i) out.w[l][i][e - 1] = 1;
        for (int i = hs.x; i < n2_end; ++i)
            for (int j = 0; j < out.n; ++j) out.w[l][i][j] = 1;
    }
    return out;
}

// Payoff analysis of the simultaneous-move game where both teams pick
// orders. Utilities are T1's win probability; the table is
// U[a][b] = Pr[T1 reaches target | T1 plays perm a, T2 plays perm b].
struct EquilibriumReport {
    // T2's expected utilities (1 - T1 win prob) per pure order against a
    // uniform T1, and the mirrored check.
    std::vector<double> t2_values;
    std::vector<double> t1_values;
    double max_deviation_gain = 0.0;  // larger spread of the two
    double game_value = 0.0;          // uniform vs uniform, T1's win prob
};

inline int equilibrium_cap() { return detail::env_cap("TEAMORDER_EQUILIBRIUM_CAP", 5); }

inline EquilibriumReport verify_uniform_equilibrium(const Instance& inst,
                                                    int cap = equilibrium_cap()) {
    if (inst.n > cap)
        throw cap_exceeded_error("instance size exceeds equilibrium cap", inst.n);
    std::vector<LineUp> perms;
    LineUp perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const int f = static_cast<int>(perms.size());

    // payoff[a][b]: match i pits T1 player perms[a][i] against T2 player
    // perms[b][i].
    std::vector<std::vector<double>> payoff(f, std::vector<double>(f));
    std::vector<double> probs(inst.n);
    for (int a = 0; a < f; ++a)
        for (int b = 0; b < f; ++b) {
            for (int i = 0; i < inst.n; ++i)
                probs[i] = inst.p[perms[a][i]][perms[b][i]];
            const auto dist = win_distribution(probs);
            double win = 0.0;
            for (int k = inst.target; k <= inst.n; ++k) win += dist[k];
            payoff[a][b] = win;
        }

    EquilibriumReport rep;
    rep.t2_values.resize(f);
    rep.t1_values.resize(f);
    for (int b = 0; b < f; ++b) {
        double s = 0.0;
        for (int a = 0; a < f; ++a) s += 1.0 - payoff[a][b];
        rep.t2_values[b] = s / f;
    }
    for (int a = 0; a < f; ++a) {
        double s = 0.0;
        for (int b = 0; b < f; ++b) s += payoff[a][b];
        rep.t1_values[a] = s / f;
        rep.game_value += rep.t1_values[a] / f;
    }
    const auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    rep.max_deviation_gain = std::max(spread(rep.t2_values), spread(rep.t1_values));
    return rep;
}

}  // namespace teamorder
