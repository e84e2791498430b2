// bounds.hpp - analytic gap bounds for the max-weight baseline and an
// auditor comparing them against brute-force truth.
#pragma once

#include "teamorder/solvers.hpp"

namespace teamorder {

// Additive cap on (optimal win probability - baseline win probability).
// Two regimes: a Hoeffding tail bound when the matching weight sits at
// least sqrt(n) away from n/2, and a binomial-approximation bound when the
// weight is within sqrt(n log n) of n/2. Regimes can overlap; `bound` is
// the minimum of the applicable expressions. Both are asymptotic in n, so
// small instances can violate them; see audit_gap.
struct GapBound {
    double weight = 0.0;  // w(M*)
    std::optional<double> part1_bound;       // e^(-2 f^2), f clamped to [1, sqrt(n)/2]
    std::optional<double> part2_exact;       // certified binomial-approximation expression
    std::optional<double> part2_simplified;  // 4/(n+1) * sum (p_e - 1/2)^2, informational
    double bound = 0.0;
    std::string regime;  // "part1-low", "part1-high" or "part2-central"
};

inline GapBound max_weight_gap_bound(const Instance& inst, const LineUp& mstar) {
    validate_lineup(inst, mstar);
    const int n = inst.n;
    GapBound gb;
    std::vector<double> pe(n);
    for (int i = 0; i < n; ++i) {
        pe[i] = inst.p[i][mstar[i]];
        gb.weight += pe[i];
    }
    const double half = n / 2.0;
    const double dev = std::abs(gb.weight - half);

    if (dev >= std::sqrt(static_cast<double>(n))) {
        const double f = std::clamp(dev / std::sqrt(static_cast<double>(n)), 1.0,
                                    std::sqrt(static_cast<double>(n)) / 2.0);
        gb.part1_bound = std::exp(-2.0 * f * f);
        gb.regime = gb.weight < half ? "part1-low" : "part1-high";
    }
    if (dev <= std::sqrt(n * std::log(static_cast<double>(std::max(n, 2))))) {
        const double pbar = gb.weight / n;
        double sum_pbar = 0.0, sum_half = 0.0;
        for (double p : pe) {
            sum_pbar += (p - pbar) * (p - pbar);
            sum_half += (p - 0.5) * (p - 0.5);
        }
        if (pbar > 0.0 && pbar < 1.0) {
            // Same corrected exponent as ehm_distance_bound (n+1, not n).
            const double coef =
                (1.0 - std::pow(pbar, n + 1) - std::pow(1.0 - pbar, n + 1)) /
                ((n + 1) * pbar * (1.0 - pbar));
            gb.part2_exact = coef * sum_pbar;
        } else {
            // Weight 0 or n: every matched game is certain, gap is 0.
            gb.part2_exact = 0.0;
        }
        gb.part2_simplified = 4.0 / (n + 1) * sum_half;
        if (gb.regime.empty()) gb.regime = "part2-central";
    }

    gb.bound = std::numeric_limits<double>::infinity();
    if (gb.part1_bound) gb.bound = std::min(gb.bound, *gb.part1_bound);
    if (gb.part2_exact) gb.bound = std::min(gb.bound, *gb.part2_exact);
    return gb;
}

struct GapAudit {
    GapBound bound;
    double optimum = 0.0;   // brute-force win probability
    double baseline = 0.0;  // max-weight matching win probability
    double true_gap = 0.0;
    bool holds = false;
    bool asymptotic_regime = false;  // false flags n below 8 as outside it
};

inline GapAudit audit_gap(const Instance& inst, int cap = brute_cap()) {
    GapAudit a;
    const auto baseline = solve_max_weight_baseline(inst);
    a.bound = max_weight_gap_bound(inst, baseline.lineup);
    a.baseline = baseline.report.win_probability;
    a.optimum = solve_brute(inst, cap).report.win_probability;
    a.true_gap = a.optimum - a.baseline;
    a.holds = a.true_gap <= a.bound.bound + 1e-9;
    a.asymptotic_regime = inst.n >= 8;
    return a;
}

}  // namespace teamorder
