// core.hpp - shared types and error hierarchy for the teamorder library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamorder {

// An edge (i, j) of the complete bipartite player graph: T1 player i
// against T2 player j. Indices are 0-based internally; the JSON formats
// use 1-based player indices.
struct Edge {
    int row = 0;
    int col = 0;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.row == b.row && a.col == b.col;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }
};

// A line-up: assignment[i] is the (0-based) index of the T2 player matched
// with T1 player i. Valid line-ups are permutations of 0..n-1.
using LineUp = std::vector<int>;

class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class cap_exceeded_error : public std::runtime_error {
public:
    cap_exceeded_error(const std::string& what, std::int64_t required)
        : std::runtime_error(what), required_cap(required) {}

    std::int64_t required_cap = 0;
};

inline bool is_permutation_of_n(const LineUp& assignment, int n) {
    if (static_cast<int>(assignment.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : assignment) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

inline int default_target(int n) { return n / 2 + 1; }

}  // namespace teamorder
