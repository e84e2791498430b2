// pb_prob.hpp - exact and approximate Poisson binomial computations:
// the O(n^2) win-count distribution, normal approximation with its error
// guarantee, Hoeffding tails, binomial stochastic dominance and the
// binomial-approximation distance bound.
#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "teamorder/instance.hpp"

namespace teamorder {

// Distribution of the number of wins among independent matches with the
// given probabilities. Returns a length-(n+1) vector; entry k is
// Pr[exactly k wins]. Rolling 1-D update over the classic 2-D table.
inline std::vector<double> win_distribution(std::span<const double> probs) {
    const int n = static_cast<int>(probs.size());
    std::vector<double> a(n + 1, 0.0);
    a[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        const double pj = probs[j];
        for (int i = j + 1; i >= 1; --i) a[i] = a[i - 1] * pj + a[i] * (1.0 - pj);
        a[0] *= 1.0 - pj;
    }
    return a;
}

struct WinReport {
    double win_probability = 0.0;       // Pr[wins >= target]
    std::vector<double> distribution;   // length n+1
    double mean = 0.0;
    double variance = 0.0;
};

inline WinReport make_win_report(std::span<const double> probs, int target) {
    WinReport r;
    r.distribution = win_distribution(probs);
    const int n = static_cast<int>(probs.size());
    for (int k = std::max(target, 0); k <= n; ++k) r.win_probability += r.distribution[k];
    for (double p : probs) {
        r.mean += p;
        r.variance += p * (1.0 - p);
    }
    return r;
}

inline std::vector<double> lineup_probs(const Instance& inst, const LineUp& lineup) {
    validate_lineup(inst, lineup);
    std::vector<double> probs(inst.n);
    for (int i = 0; i < inst.n; ++i) probs[i] = inst.p[i][lineup[i]];
    return probs;
}

inline WinReport evaluate_lineup(const Instance& inst, const LineUp& lineup) {
    return make_win_report(lineup_probs(inst, lineup), inst.target);
}

// Standard normal CDF. erfc keeps absolute error well below 1e-10.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

struct NormalApprox {
    double estimate = 0.0;  // Phi((k - mean) / sqrt(var))
    double bound = 0.0;     // 1 / sqrt(var), caps |Pr[X<=k] - estimate|
};

inline NormalApprox normal_approx_error_bound(std::span<const double> probs, int k) {
    const int n = static_cast<int>(probs.size());
    if (k < 1 || k > n) throw validation_error("k outside [1,n]");
    double mean = 0.0, var = 0.0;
    for (double p : probs) {
        mean += p;
        var += p * (1.0 - p);
    }
    if (var <= 0.0) throw validation_error("zero variance");
    const double sd = std::sqrt(var);
    return {normal_cdf((k - mean) / sd), 1.0 / sd};
}

enum class tail_side { upper, lower };

// Hoeffding bound on Pr[X >= E[X] + d] (upper) or Pr[X <= E[X] - d] (lower).
// The bound value is the same for both sides.
inline double hoeffding_tail(int n, double deviation, tail_side = tail_side::upper) {
    if (deviation < 0.0) throw validation_error("deviation must be nonnegative");
    return std::exp(-2.0 * deviation * deviation / n);
}

inline double binomial_cdf(int n, double q, int k) {
    if (k < 0 || k > n) throw validation_error("k outside [0,n]");
    if (!(q >= 0.0 && q <= 1.0)) throw validation_error("q outside [0,1]");
    const std::vector<double> probs(n, q);
    const auto dist = win_distribution(probs);
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += dist[i];
    return std::min(s, 1.0);
}

// Both directions of the PB-vs-binomial CDF dominance: with pbar the mean
// probability and Y ~ Bin(n, pbar),
//   Pr[X<=k] <= Pr[Y<=k] for integer k <= n*pbar - 1, and
//   Pr[X<=k] >= Pr[Y<=k] for integer k in [n*pbar, n].
struct DominanceReport {
    double max_violation_low = 0.0;   // first direction
    double max_violation_high = 0.0;  // second direction

    double max_violation() const { return std::max(max_violation_low, max_violation_high); }
};

inline DominanceReport stochastic_dominance_check(std::span<const double> probs) {
    const int n = static_cast<int>(probs.size());
    double mean = 0.0;
    for (double p : probs) mean += p;
    const double pbar = mean / n;

    const auto dist_x = win_distribution(probs);
    const auto dist_y = win_distribution(std::vector<double>(n, pbar));
    DominanceReport rep;
    double cdf_x = 0.0, cdf_y = 0.0;
    for (int k = 0; k <= n; ++k) {
        cdf_x += dist_x[k];
        cdf_y += dist_y[k];
        if (k <= mean - 1.0)
            rep.max_violation_low = std::max(rep.max_violation_low, cdf_x - cdf_y);
        if (k >= mean)
            rep.max_violation_high = std::max(rep.max_violation_high, cdf_y - cdf_x);
    }
    return rep;
}

// Binomial-approximation distance bound: with pbar in (0,1),
//   max_A |Pr[X in A] - Pr[Y in A]|
//     <= (1 - pbar^(n+1) - (1-pbar)^(n+1)) / ((n+1) pbar (1-pbar))
//        * sum (p_i - pbar)^2.
// The exponent must be n+1: with exponent n the inequality fails already
// at n = 2, where this form holds with equality.
inline double ehm_distance_bound(std::span<const double> probs) {
    const int n = static_cast<int>(probs.size());
    double mean = 0.0;
    for (double p : probs) mean += p;
    const double pbar = mean / n;
    if (!(pbar > 0.0 && pbar < 1.0)) throw validation_error("mean probability in {0,1}");
    double sq = 0.0;
    for (double p : probs) sq += (p - pbar) * (p - pbar);
    const double coef =
        (1.0 - std::pow(pbar, n + 1) - std::pow(1.0 - pbar, n + 1)) /
        ((n + 1) * pbar * (1.0 - pbar));
    return coef * sq;
}

}  // namespace teamorder
