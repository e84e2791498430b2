// instance.hpp - problem instance type, validation, classification and
// seeded random generators.
#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <set>

#include "teamorder/core.hpp"

namespace teamorder {

// An n-by-n matrix of win probabilities p[i][j] = Pr[T1 player i beats
// T2 player j], plus the number of individual match wins needed to take
// the competition. Immutable after construction.
struct Instance {
    int n = 0;
    std::vector<std::vector<double>> p;
    int target = 0;
};

inline Instance validate(const std::vector<std::vector<double>>& p,
                         std::optional<int> target = std::nullopt) {
    const int n = static_cast<int>(p.size());
    if (n < 1) throw validation_error("matrix must have dimension >= 1");
    for (const auto& row : p) {
        if (static_cast<int>(row.size()) != n)
            throw validation_error("matrix is not square");
        for (double v : row) {
            if (!(v >= 0.0 && v <= 1.0))
                throw validation_error("probability outside [0,1]");
        }
    }
    const int t = target.value_or(default_target(n));
    if (t < 1 || t > n) throw validation_error("target outside [1,n]");
    return Instance{n, p, t};
}

inline void validate_lineup(const Instance& inst, const LineUp& lineup) {
    if (static_cast<int>(lineup.size()) != inst.n)
        throw validation_error("lineup length does not match instance size");
    if (!is_permutation_of_n(lineup, inst.n))
        throw validation_error("lineup is not a permutation");
}

enum class instance_tag { general, degenerate, three_value };

struct InstanceClass {
    instance_tag tag = instance_tag::general;
    // Populated for three_value only; alpha >= beta > 0. If the instance
    // uses a single positive value, alpha == beta.
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<Edge> fractional;  // edges with p not in {0,1}
    std::vector<Edge> binary;      // complement
    // min over fractional edges of min(p, 1-p); absent when none exist.
    std::optional<double> delta;
};

inline InstanceClass classify(const Instance& inst) {
    InstanceClass cls;
    std::set<double> positive;
    bool all_binary = true;
    for (int i = 0; i < inst.n; ++i) {
        for (int j = 0; j < inst.n; ++j) {
            const double v = inst.p[i][j];
            if (v != 0.0 && v != 1.0) {
                all_binary = false;
                cls.fractional.push_back({i, j});
                const double d = std::min(v, 1.0 - v);
                if (!cls.delta || d < *cls.delta) cls.delta = d;
            } else {
                cls.binary.push_back({i, j});
            }
            if (v > 0.0) positive.insert(v);
        }
    }
    if (all_binary) {
        cls.tag = instance_tag::degenerate;
    } else if (positive.size() <= 2) {
        cls.tag = instance_tag::three_value;
        cls.alpha = *positive.rbegin();
        cls.beta = *positive.begin();
    } else {
        cls.tag = instance_tag::general;
    }
    return cls;
}

// Random instance generators. Deterministic for a fixed seed within one
// build; all draws go through a single mt19937_64 stream.
enum class gen_kind { uniform_random, three_value, degenerate, fixed_fractional_count };

struct GenSpec {
    gen_kind kind = gen_kind::uniform_random;
    double alpha = 0.0;    // three_value
    double beta = 0.0;     // three_value
    double density = 0.5;  // three_value / degenerate: fraction of nonzero (resp. 1) entries
    int fractional_count = 0;  // fixed_fractional_count
};

inline Instance generate(const GenSpec& spec, int n, std::uint64_t seed,
                         std::optional<int> target = std::nullopt) {
    if (n < 1) throw validation_error("generator requires n >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));

    switch (spec.kind) {
        case gen_kind::uniform_random:
            for (auto& row : p)
                for (auto& v : row) v = unit(rng);
            break;
        case gen_kind::degenerate:
            if (spec.density < 0.0 || spec.density > 1.0)
                throw validation_error("density outside [0,1]");
            for (auto& row : p)
                for (auto& v : row) v = unit(rng) < spec.density ? 1.0 : 0.0;
            break;
        case gen_kind::three_value: {
            if (!(spec.alpha > spec.beta && spec.beta > 0.0 && spec.alpha <= 1.0))
                throw validation_error("three-value requires 0 < beta < alpha <= 1");
            if (spec.density < 0.0 || spec.density > 1.0)
                throw validation_error("density outside [0,1]");
            for (auto& row : p)
                for (auto& v : row) {
                    if (unit(rng) < spec.density)
                        v = unit(rng) < 0.5 ? spec.alpha : spec.beta;
                }
            // Guarantee both positive values occur so the class round-trips.
            bool has_a = false, has_b = false;
            for (auto& row : p)
                for (double v : row) {
                    has_a |= v == spec.alpha;
                    has_b |= v == spec.beta;
                }
            if (!has_a) p[0][0] = spec.alpha;
            if (!has_b) p[n - 1][n - 1] = spec.beta;
            break;
        }
        case gen_kind::fixed_fractional_count: {
            const int f = spec.fractional_count;
            if (f < 0 || f > n * n)
                throw validation_error("fractional count outside [0, n*n]");
            for (auto& row : p)
                for (auto& v : row) v = unit(rng) < 0.5 ? 1.0 : 0.0;
            std::vector<int> cells(n * n);
            for (int i = 0; i < n * n; ++i) cells[i] = i;
            std::shuffle(cells.begin(), cells.end(), rng);
            std::uniform_real_distribution<double> frac(0.05, 0.95);
            for (int k = 0; k < f; ++k) {
                double v;
                do {
                    v = frac(rng);
                } while (v == 0.0 || v == 1.0);
                p[cells[k] / n][cells[k] % n] = v;
            }
            break;
        }
    }
    return validate(p, target);
}

}  // namespace teamorder
