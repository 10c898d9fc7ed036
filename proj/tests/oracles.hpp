#pragma once

// Brute-force reference computations used by the tests. Everything here is
// deliberately independent of the simplex/branch-and-bound code paths it
// checks: plain enumeration plus dense Gaussian elimination.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hems/lp.hpp"

namespace oracles {

// deterministic xorshift generator so frozen test cases never drift
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (next() % 1000000) / 999999.0;
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 1e-9;
        for (int r = col; r < n; ++r)
            if (std::abs(a[r][col]) > best) {
                best = std::abs(a[r][col]);
                piv = r;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Minimum objective over all basic feasible points of a bounded LP: every
// choice of n active constraints (rows as equalities plus variable bounds)
// yields a candidate point; feasible candidates are compared directly.
inline std::optional<double> lp_vertex_enumeration(const hems::LinearProgram& lp) {
    const int n = lp.num_vars();
    struct Con {
        std::vector<double> a;
        double b;
    };
    std::vector<Con> cons;
    for (const auto& r : lp.rows) cons.push_back({r.coeffs, r.rhs});
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        if (lp.lower[j] > -hems::kInf) cons.push_back({e, lp.lower[j]});
        if (lp.upper[j] < hems::kInf) cons.push_back({e, lp.upper[j]});
    }
    const int m = static_cast<int>(cons.size());
    std::optional<double> best;
    std::vector<int> pick(n);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == n) {
            std::vector<std::vector<double>> a(n);
            std::vector<double> b(n);
            for (int i = 0; i < n; ++i) {
                a[i] = cons[pick[i]].a;
                b[i] = cons[pick[i]].b;
            }
            auto x = solve_square(a, b);
            if (!x) return;
            if (hems::max_violation(lp, *x) > 1e-7) return;
            double obj = 0.0;
            for (int j = 0; j < n; ++j) obj += lp.objective[j] * (*x)[j];
            if (!best || obj < *best) best = obj;
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace oracles
