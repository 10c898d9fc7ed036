#include <doctest.h>

#include "hems/lp.hpp"
#include "oracles.hpp"

using namespace hems;

namespace {

// 0/1 knapsack as a minimization MIP: maximize value => minimize -value
MipProblem knapsack(const std::vector<double>& value, const std::vector<double>& weight,
                    double capacity) {
    MipProblem mip;
    for (size_t i = 0; i < value.size(); ++i) {
        mip.lp.add_variable(0.0, 1.0, -value[i]);
        mip.integral.push_back(static_cast<int>(i));
    }
    mip.lp.add_row(weight, Relation::LessEq, capacity, "capacity");
    return mip;
}

double knapsack_exhaustive(const std::vector<double>& value, const std::vector<double>& weight,
                           double capacity) {
    const int n = static_cast<int>(value.size());
    double best = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        double v = 0.0, w = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) {
                v += value[i];
                w += weight[i];
            }
        if (w <= capacity + 1e-12) best = std::max(best, v);
    }
    return -best;
}

}  // namespace

TEST_CASE("six-item knapsacks equal exhaustive enumeration") {
    oracles::Rng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> value(6), weight(6);
        for (int i = 0; i < 6; ++i) {
            value[i] = rng.uniform(0.5, 5.0);
            weight[i] = rng.uniform(0.5, 4.0);
        }
        double cap = rng.uniform(3.0, 9.0);
        auto mip = knapsack(value, weight, cap);
        auto r = solve_mip(mip);
        REQUIRE(r.optimal());
        CHECK(r.objective == doctest::Approx(knapsack_exhaustive(value, weight, cap))
                                 .epsilon(1e-9));
        for (int i = 0; i < 6; ++i) {
            double f = r.x[i] - std::floor(r.x[i]);
            CHECK(std::min(f, 1.0 - f) <= 1e-6);
        }
    }
}

TEST_CASE("a MIP with no integral variables is just the LP") {
    LinearProgram lp;
    lp.add_variable(0.0, 4.0, -1.0);
    lp.add_variable(0.0, 4.0, -0.5);
    lp.add_row({1.0, 2.0}, Relation::LessEq, 5.0, "budget");
    MipProblem mip{lp, {}};
    auto a = solve_lp(lp);
    auto b = solve_mip(mip);
    REQUIRE(a.optimal());
    REQUIRE(b.optimal());
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
}

TEST_CASE("integral optimum never beats its relaxation") {
    oracles::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> value(6), weight(6);
        for (int i = 0; i < 6; ++i) {
            value[i] = rng.uniform(0.5, 5.0);
            weight[i] = rng.uniform(0.5, 4.0);
        }
        auto mip = knapsack(value, weight, 6.0);
        auto relax = solve_lp(mip.lp);
        auto exact = solve_mip(mip);
        REQUIRE(relax.optimal());
        REQUIRE(exact.optimal());
        CHECK(relax.objective <= exact.objective + 1e-9);
        CHECK(exact.mip_gap <= 1e-6);
    }
}

TEST_CASE("infeasible integral problems are reported") {
    MipProblem mip;
    mip.lp.add_variable(0.0, 1.0, 1.0);
    mip.integral.push_back(0);
    mip.lp.add_row({1.0}, Relation::Equal, 0.5, "half");
    CHECK(solve_mip(mip).status == SolveStatus::Infeasible);
}

TEST_CASE("deterministic replay") {
    oracles::Rng rng(5);
    std::vector<double> value(6), weight(6);
    for (int i = 0; i < 6; ++i) {
        value[i] = rng.uniform(0.5, 5.0);
        weight[i] = rng.uniform(0.5, 4.0);
    }
    auto mip = knapsack(value, weight, 7.0);
    auto a = solve_mip(mip);
    auto b = solve_mip(mip);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.x == b.x);
}
