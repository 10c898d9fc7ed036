#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hems {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, Equal, GreaterEq };

struct ToleranceSettings {
    double feasibility = 1e-7;   // max constraint violation accepted as feasible
    double optimality = 1e-9;    // reduced-cost threshold for simplex pricing
    double integrality = 1e-6;   // max distance from an integer
    double mip_gap = 1e-6;       // absolute bound gap at which branch-and-bound stops
    int max_simplex_iters = 50000;
    long max_mip_nodes = 500000;
};

// Dense LP in minimization form. Variables carry individual bounds
// (use -kInf / kInf for free directions).
struct LinearProgram {
    struct Row {
        std::vector<double> coeffs;  // length == num_vars()
        Relation rel = Relation::LessEq;
        double rhs = 0.0;
        std::string tag;  // constraint-family label for model audits
    };

    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_variable(double lo, double hi, double cost = 0.0) {
        objective.push_back(cost);
        lower.push_back(lo);
        upper.push_back(hi);
        return num_vars() - 1;
    }
    void add_row(std::vector<double> coeffs, Relation rel, double rhs, std::string tag) {
        rows.push_back(Row{std::move(coeffs), rel, rhs, std::move(tag)});
    }
};

struct MipProblem {
    LinearProgram lp;
    std::vector<int> integral;  // variable indices required integral
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    double mip_gap = 0.0;  // proven absolute gap (MIP only)
    long nodes = 0;        // branch-and-bound nodes processed

    bool optimal() const { return status == SolveStatus::Optimal; }
};

const char* to_string(SolveStatus s);

// Primal simplex for bounded variables, dense tableau, two-phase start.
// Dantzig pricing with a Bland's-rule fallback once degeneracy stalls;
// all tie-breaks by lowest index, so identical inputs give identical runs.
SolveOutcome solve_lp(const LinearProgram& lp, const ToleranceSettings& tol = {});

// Best-first branch-and-bound on the integral variables; branches on the
// most fractional one (ties: lowest index), explores the floor child first.
SolveOutcome solve_mip(const MipProblem& mip, const ToleranceSettings& tol = {});

// Max violation of any row/bound by x; used by callers to re-check solutions.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

// Text dump of the matrix form, one tagged line per row.
std::string dump_lp(const LinearProgram& lp);

}  // namespace hems
