// Independent reference implementations used only by the tests. These are
// deliberately naive (exponential enumeration, quadrature) so the library
// is checked against code sharing none of its logic.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "teamorder/extensions.hpp"
#include "teamorder/instance.hpp"

namespace oracle {

// Win-count distribution by summing over all 2^n outcomes.
inline std::vector<double> enum_win_distribution(const std::vector<double>& probs) {
    const int n = static_cast<int>(probs.size());
    std::vector<double> dist(n + 1, 0.0);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double pr = 1.0;
        int wins = 0;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                pr *= probs[i];
                ++wins;
            } else {
                pr *= 1.0 - probs[i];
            }
        }
        dist[wins] += pr;
    }
    return dist;
}

inline double enum_win_probability(const std::vector<double>& probs, int target) {
    const auto dist = enum_win_distribution(probs);
    double s = 0.0;
    for (int k = target; k <= static_cast<int>(probs.size()); ++k) s += dist[k];
    return s;
}

// Best win probability over all permutations.
inline double enum_best_probability(const teamorder::Instance& inst) {
    std::vector<int> perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        std::vector<double> probs(inst.n);
        for (int i = 0; i < inst.n; ++i) probs[i] = inst.p[i][perm[i]];
        best = std::max(best, enum_win_probability(probs, inst.target));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Standard normal CDF by Simpson quadrature, independent of erfc.
inline double phi_quadrature(double x) {
    if (x < -12.0) return 0.0;
    if (x > 12.0) return 1.0;
    const double lo = -12.0;
    const int steps = 20000;  // even
    const double h = (x - lo) / steps;
    auto f = [](double t) {
        return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::acos(-1.0));
    };
    double s = f(lo) + f(x);
    for (int i = 1; i < steps; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Total-variation style distance: max over event sets A of
// |Pr[X in A] - Pr[Y in A]| = sum of positive parts of the difference.
inline double max_event_distance(const std::vector<double>& dx,
                                 const std::vector<double>& dy) {
    double s = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) s += std::max(dx[i] - dy[i], 0.0);
    return s;
}

struct BudgetedOpt {
    bool feasible = false;
    double weight = 0.0;
};

// Exhaustive budgeted matching optimum over all permutations.
inline BudgetedOpt enum_budgeted(const teamorder::WeightedBipartite& g,
                                 const std::vector<std::vector<double>>& cost,
                                 bool reward_mode, double limit) {
    const int n = g.n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> forced_col(n, -1);
    for (const auto& e : g.forced) forced_col[e.row] = e.col;
    BudgetedOpt best;
    do {
        bool ok = true;
        double w = 0.0, c = 0.0;
        for (int i = 0; i < n && ok; ++i) {
            if (!g.allowed[i][perm[i]]) ok = false;
            if (forced_col[i] >= 0 && perm[i] != forced_col[i]) ok = false;
            w += g.weight[i][perm[i]];
            c += cost[i][perm[i]];
        }
        if (!ok) continue;
        if (reward_mode ? c >= limit - 1e-12 : c <= limit + 1e-12) {
            if (!best.feasible || w > best.weight) {
                best.feasible = true;
                best.weight = w;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Hitting Set decision by subset enumeration.
inline bool enum_hitting_set(const teamorder::HittingSetInstance& hs) {
    for (std::uint64_t mask = 0; mask < (1ull << hs.lambda); ++mask) {
        if (static_cast<int>(std::popcount(mask)) > hs.x) continue;
        bool all_hit = true;
        for (const auto& s : hs.sets) {
            bool hit = false;
            for (int e : s) hit |= (mask >> (e - 1) & 1) != 0;
            if (!hit) {
                all_hit = false;
                break;
            }
        }
        if (all_hit) return true;
    }
    return false;
}

}  // namespace oracle
