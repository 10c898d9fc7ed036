#include <doctest.h>

#include <functional>

#include "hems/lp.hpp"
#include "oracles.hpp"

using namespace hems;

TEST_CASE("single variable bounded by rows") {
    LinearProgram lp;
    lp.add_variable(-kInf, kInf, 1.0);
    lp.add_row({1.0}, Relation::GreaterEq, 3.0, "floor");
    lp.add_row({1.0}, Relation::LessEq, 10.0, "cap");
    auto r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.x[0] == doctest::Approx(3.0));
}

TEST_CASE("degenerate optimum face reports the facet value") {
    LinearProgram lp;
    lp.add_variable(0.0, 1.0, -1.0);
    lp.add_variable(0.0, 1.0, -1.0);
    lp.add_row({1.0, 1.0}, Relation::LessEq, 1.0, "budget");
    auto r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("infeasible and unbounded are reported as statuses") {
    LinearProgram lp;
    lp.add_variable(0.0, 1.0, 1.0);
    lp.add_row({1.0}, Relation::GreaterEq, 2.0, "impossible");
    CHECK(solve_lp(lp).status == SolveStatus::Infeasible);

    LinearProgram unb;
    unb.add_variable(-kInf, kInf, 1.0);
    unb.add_row({1.0}, Relation::LessEq, 5.0, "one-sided");
    CHECK(solve_lp(unb).status == SolveStatus::Unbounded);
}

TEST_CASE("equality rows and negative bounds") {
    LinearProgram lp;
    lp.add_variable(-5.0, 5.0, 1.0);
    lp.add_variable(-5.0, 5.0, 2.0);
    lp.add_row({1.0, 1.0}, Relation::Equal, 1.0, "sum");
    auto r = solve_lp(lp);
    REQUIRE(r.optimal());
    // push the cheap variable up, the expensive one down
    CHECK(r.x[1] == doctest::Approx(-4.0));
    CHECK(r.objective == doctest::Approx(5.0 - 8.0));
}

TEST_CASE("random box LPs match basic-point enumeration") {
    oracles::Rng rng(42);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 5;
        LinearProgram lp;
        for (int j = 0; j < n; ++j) {
            double lo = rng.uniform(-3.0, 0.0);
            double hi = lo + rng.uniform(0.5, 4.0);
            lp.add_variable(lo, hi, rng.uniform(-2.0, 2.0));
        }
        std::vector<double> interior(n);
        for (int j = 0; j < n; ++j)
            interior[j] = (lp.lower[j] + lp.upper[j]) / 2.0;
        const int m = rng.uniform_int(2, 4);
        for (int i = 0; i < m; ++i) {
            std::vector<double> a(n);
            double ax = 0.0;
            for (int j = 0; j < n; ++j) {
                a[j] = rng.uniform(-1.0, 1.0);
                ax += a[j] * interior[j];
            }
            lp.add_row(std::move(a), Relation::LessEq, ax + rng.uniform(0.1, 1.5), "rand");
        }
        auto r = solve_lp(lp);
        REQUIRE(r.optimal());
        CHECK(max_violation(lp, r.x) <= 1e-7);
        auto expect = oracles::lp_vertex_enumeration(lp);
        REQUIRE(expect.has_value());
        CHECK(r.objective == doctest::Approx(*expect).epsilon(1e-6));
        ++solved;
    }
    CHECK(solved == 40);
}

TEST_CASE("identical inputs give identical runs") {
    oracles::Rng rng(7);
    LinearProgram lp;
    for (int j = 0; j < 6; ++j) lp.add_variable(0.0, rng.uniform(1.0, 3.0), rng.uniform(-1, 1));
    for (int i = 0; i < 4; ++i) {
        std::vector<double> a(6);
        for (auto& v : a) v = rng.uniform(-1.0, 1.0);
        lp.add_row(std::move(a), i % 2 ? Relation::LessEq : Relation::GreaterEq,
                   rng.uniform(-0.5, 2.0), "r");
    }
    auto r1 = solve_lp(lp);
    auto r2 = solve_lp(lp);
    REQUIRE(r1.status == r2.status);
    if (r1.optimal()) {
        CHECK(r1.objective == r2.objective);  // bit-identical
        CHECK(r1.x == r2.x);
    }
}
