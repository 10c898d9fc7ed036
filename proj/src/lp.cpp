#include "hems/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hems {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

namespace {

// Tableau-based bounded-variable primal simplex.
//
// Columns 0..n-1 are the structural variables, n..n+m-1 slacks (one per row,
// row i holds  a_i.x + s_i = b_i  with slack bounds set by the relation).
// Phase 1 appends artificials for rows whose initial slack value violates
// its bounds and minimizes their sum.
class Simplex {
public:
    Simplex(const LinearProgram& lp, const ToleranceSettings& tol) : tol_(tol) {
        n_ = lp.num_vars();
        m_ = lp.num_rows();
        lo_ = lp.lower;
        up_ = lp.upper;
        cost_ = lp.objective;
        lo_.resize(n_ + m_);
        up_.resize(n_ + m_);
        cost_.resize(n_ + m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            switch (lp.rows[i].rel) {
                case Relation::LessEq:
                    lo_[n_ + i] = 0.0;
                    up_[n_ + i] = kInf;
                    break;
                case Relation::GreaterEq:
                    lo_[n_ + i] = -kInf;
                    up_[n_ + i] = 0.0;
                    break;
                case Relation::Equal:
                    lo_[n_ + i] = 0.0;
                    up_[n_ + i] = 0.0;
                    break;
            }
        }
        a_.assign(m_, std::vector<double>(n_ + m_, 0.0));
        b_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const auto& r = lp.rows[i];
            if (static_cast<int>(r.coeffs.size()) != n_)
                throw std::invalid_argument("row dimension mismatch");
            for (int j = 0; j < n_; ++j) a_[i][j] = r.coeffs[j];
            a_[i][n_ + i] = 1.0;
            b_[i] = r.rhs;
        }
    }

    SolveOutcome run() {
        for (int j = 0; j < n_ + m_; ++j)
            if (lo_[j] > up_[j] + tol_.feasibility) return outcome(SolveStatus::Infeasible);

        // nonbasic start values: finite bound nearest zero, else 0 for free vars
        val_.assign(n_ + m_, 0.0);
        at_upper_.assign(n_ + m_, false);
        for (int j = 0; j < n_ + m_; ++j) {
            if (lo_[j] > -kInf && (up_[j] == kInf || std::abs(lo_[j]) <= std::abs(up_[j]))) {
                val_[j] = lo_[j];
            } else if (up_[j] < kInf) {
                val_[j] = up_[j];
                at_upper_[j] = true;
            } else {
                val_[j] = 0.0;
            }
        }

        // slack basis; rows whose slack value breaks its own bounds get an artificial
        basis_.resize(m_);
        tableau_.assign(m_, std::vector<double>());
        std::vector<double> slack_val(m_);
        int n_art = 0;
        for (int i = 0; i < m_; ++i) {
            double ax = 0.0;
            for (int j = 0; j < n_; ++j) ax += a_[i][j] * val_[j];
            slack_val[i] = b_[i] - ax;
        }
        std::vector<int> art_row;
        for (int i = 0; i < m_; ++i) {
            if (slack_val[i] < lo_[n_ + i] - tol_.feasibility ||
                slack_val[i] > up_[n_ + i] + tol_.feasibility) {
                art_row.push_back(i);
                ++n_art;
            }
        }
        total_ = n_ + m_ + n_art;
        for (auto& row : a_) row.resize(total_, 0.0);
        lo_.resize(total_);
        up_.resize(total_);
        cost_.resize(total_, 0.0);
        val_.resize(total_, 0.0);
        at_upper_.resize(total_, false);
        std::vector<double> phase1_cost(total_, 0.0);
        int k = n_ + m_;
        for (int i : art_row) {
            double target = slack_val[i] < lo_[n_ + i] ? lo_[n_ + i] : up_[n_ + i];
            double viol = slack_val[i] - target;  // Ax + s_target + art = b  =>  art = viol
            // clamp slack to the violated bound, park it nonbasic there
            val_[n_ + i] = target;
            at_upper_[n_ + i] = (target == up_[n_ + i] && up_[n_ + i] < kInf && lo_[n_ + i] != up_[n_ + i]);
            a_[i][k] = viol > 0 ? 1.0 : -1.0;
            lo_[k] = 0.0;
            up_[k] = kInf;
            phase1_cost[k] = 1.0;
            basis_[i] = k;
            val_[k] = std::abs(viol);
            ++k;
        }
        for (int i = 0; i < m_; ++i) {
            if (std::find(art_row.begin(), art_row.end(), i) == art_row.end()) {
                basis_[i] = n_ + i;
                val_[n_ + i] = slack_val[i];
            }
        }
        in_basis_.assign(total_, false);
        for (int i = 0; i < m_; ++i) in_basis_[basis_[i]] = true;

        // tableau rows = B^-1 A; initial basis is (possibly sign-flipped) identity
        for (int i = 0; i < m_; ++i) {
            tableau_[i] = a_[i];
            double piv = a_[i][basis_[i]];
            if (piv != 1.0)
                for (double& v : tableau_[i]) v /= piv;
        }

        if (n_art > 0) {
            SolveStatus st = iterate(phase1_cost);
            if (st == SolveStatus::IterationLimit) return outcome(st);
            double infeas = 0.0;
            for (int j = n_ + m_; j < total_; ++j) infeas += val_[j];
            if (infeas > tol_.feasibility) return outcome(SolveStatus::Infeasible);
            // freeze artificials at zero for phase 2
            for (int j = n_ + m_; j < total_; ++j) up_[j] = 0.0;
        }
        SolveStatus st = iterate(cost_);
        return outcome(st);
    }

private:
    SolveOutcome outcome(SolveStatus st) const {
        SolveOutcome out;
        out.status = st;
        if (st == SolveStatus::Optimal || st == SolveStatus::IterationLimit) {
            out.x.assign(val_.begin(), val_.begin() + n_);
            out.objective = 0.0;
            for (int j = 0; j < n_; ++j) out.objective += cost_[j] * out.x[j];
        }
        return out;
    }

    // price/ratio/pivot loop for the given cost vector
    SolveStatus iterate(const std::vector<double>& c) {
        std::vector<double> d(total_);
        int stall = 0;
        double last_obj = kInf;
        for (int iter = 0; iter < tol_.max_simplex_iters; ++iter) {
            // reduced costs d = c - c_B * tableau
            for (int j = 0; j < total_; ++j) d[j] = c[j];
            for (int i = 0; i < m_; ++i) {
                double cb = c[basis_[i]];
                if (cb == 0.0) continue;
                const auto& row = tableau_[i];
                for (int j = 0; j < total_; ++j) d[j] -= cb * row[j];
            }
            double obj = 0.0;
            for (int j = 0; j < total_; ++j) obj += c[j] * val_[j];
            if (obj < last_obj - 1e-12) {
                last_obj = obj;
                stall = 0;
            } else {
                ++stall;
            }
            const bool bland = stall > 2 * (m_ + total_);

            int enter = -1;
            int dir = 0;  // +1 increase entering, -1 decrease
            double best = -tol_.optimality;
            for (int j = 0; j < total_; ++j) {
                if (in_basis_[j]) continue;
                if (lo_[j] == up_[j]) continue;  // fixed, can never move
                const bool may_up = !at_upper_[j];
                const bool may_down = at_upper_[j] || (lo_[j] == -kInf && up_[j] == kInf);
                if (may_up && d[j] < -tol_.optimality) {
                    if (bland) { enter = j; dir = 1; break; }
                    if (d[j] < best) { best = d[j]; enter = j; dir = 1; }
                }
                if (may_down && d[j] > tol_.optimality) {
                    if (bland) { enter = j; dir = -1; break; }
                    if (-d[j] < best) { best = -d[j]; enter = j; dir = -1; }
                }
            }
            if (enter < 0) return SolveStatus::Optimal;

            // bounded ratio test: basic leaves at a bound, or entering flips bound
            double t_max = up_[enter] == kInf || lo_[enter] == -kInf
                               ? kInf
                               : up_[enter] - lo_[enter];
            int leave = -1;       // basis position
            double leave_to = 0;  // bound the leaving variable lands on
            for (int i = 0; i < m_; ++i) {
                double alpha = dir * tableau_[i][enter];
                if (std::abs(alpha) < 1e-11) continue;
                int bj = basis_[i];
                double t;
                double to;
                if (alpha > 0) {  // basic decreases toward its lower bound
                    if (lo_[bj] == -kInf) continue;
                    t = (val_[bj] - lo_[bj]) / alpha;
                    to = lo_[bj];
                } else {  // basic increases toward its upper bound
                    if (up_[bj] == kInf) continue;
                    t = (val_[bj] - up_[bj]) / alpha;
                    to = up_[bj];
                }
                if (t < -1e-11) t = 0.0;
                if (t < t_max - 1e-11) {
                    t_max = t;
                    leave = i;
                    leave_to = to;
                } else if (leave >= 0 && t < t_max + 1e-11 && basis_[i] < basis_[leave]) {
                    leave = i;  // lowest-index tie-break
                    leave_to = to;
                }
            }
            if (t_max == kInf) return SolveStatus::Unbounded;

            // apply the step
            if (t_max > 0) {
                for (int i = 0; i < m_; ++i)
                    val_[basis_[i]] -= dir * t_max * tableau_[i][enter];
                val_[enter] += dir * t_max;
            }
            if (leave < 0) {
                at_upper_[enter] = !at_upper_[enter];  // bound flip, basis unchanged
                continue;
            }
            int out_var = basis_[leave];
            val_[out_var] = leave_to;
            at_upper_[out_var] = (up_[out_var] < kInf && leave_to == up_[out_var] &&
                                  lo_[out_var] != up_[out_var]);
            pivot(leave, enter);
        }
        return SolveStatus::IterationLimit;
    }

    void pivot(int row, int enter) {
        int out_var = basis_[row];
        in_basis_[out_var] = false;
        in_basis_[enter] = true;
        basis_[row] = enter;
        auto& pr = tableau_[row];
        double piv = pr[enter];
        for (double& v : pr) v /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            double f = tableau_[i][enter];
            if (std::abs(f) < 1e-13) continue;
            auto& ri = tableau_[i];
            for (int j = 0; j < total_; ++j) ri[j] -= f * pr[j];
            ri[enter] = 0.0;
        }
    }

    ToleranceSettings tol_;
    int n_ = 0, m_ = 0, total_ = 0;
    std::vector<std::vector<double>> a_, tableau_;
    std::vector<double> b_, lo_, up_, cost_, val_;
    std::vector<int> basis_;
    std::vector<bool> in_basis_, at_upper_;
};

struct Node {
    double bound;
    long id;
    std::vector<double> lo, up;
    bool operator<(const Node& other) const {
        if (bound != other.bound) return bound > other.bound;  // min-heap on bound
        return id > other.id;
    }
};

int most_fractional(const std::vector<double>& x, const std::vector<int>& integral,
                    double int_tol) {
    int pick = -1;
    double best = int_tol;
    for (int j : integral) {
        double f = x[j] - std::floor(x[j]);
        double dist = std::min(f, 1.0 - f);
        if (dist > best + 1e-15) {
            best = dist;
            pick = j;
        }
    }
    return pick;
}

}  // namespace

SolveOutcome solve_lp(const LinearProgram& lp, const ToleranceSettings& tol) {
    for (const auto& r : lp.rows)
        if (static_cast<int>(r.coeffs.size()) != lp.num_vars())
            throw std::invalid_argument("solve_lp: row dimension mismatch");
    Simplex s(lp, tol);
    return s.run();
}

SolveOutcome solve_mip(const MipProblem& mip, const ToleranceSettings& tol) {
    for (int j : mip.integral)
        if (j < 0 || j >= mip.lp.num_vars())
            throw std::invalid_argument("solve_mip: integral index out of range");

    LinearProgram work = mip.lp;
    SolveOutcome root = solve_lp(work, tol);
    SolveOutcome best;
    best.status = SolveStatus::Infeasible;
    double best_obj = kInf;
    long nodes = 1;

    if (root.status == SolveStatus::Unbounded) return root;
    if (root.status == SolveStatus::Infeasible) return root;
    if (root.status == SolveStatus::IterationLimit) return root;

    auto integral_ok = [&](const std::vector<double>& x) {
        for (int j : mip.integral) {
            double f = x[j] - std::floor(x[j]);
            if (std::min(f, 1.0 - f) > tol.integrality) return false;
        }
        return true;
    };

    // rounding dive from a node solution: fix integrals to nearest integer
    // (clamped to node bounds) and re-solve; cheap incumbent source
    auto try_dive = [&](const std::vector<double>& x, const std::vector<double>& lo,
                        const std::vector<double>& up) {
        LinearProgram fixed = mip.lp;
        fixed.lower = lo;
        fixed.upper = up;
        for (int j : mip.integral) {
            double v = std::floor(x[j] + 0.5);
            v = std::max(lo[j], std::min(up[j], v));
            fixed.lower[j] = fixed.upper[j] = v;
        }
        SolveOutcome r = solve_lp(fixed, tol);
        if (r.status == SolveStatus::Optimal && r.objective < best_obj - 1e-12) {
            best = r;
            best_obj = r.objective;
        }
    };

    std::priority_queue<Node> open;
    long next_id = 0;
    open.push(Node{root.objective, next_id++, mip.lp.lower, mip.lp.upper});
    double global_bound = root.objective;

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        global_bound = node.bound;
        if (node.bound >= best_obj - tol.mip_gap) break;  // proven within gap
        work.lower = node.lo;
        work.upper = node.up;
        SolveOutcome r = solve_lp(work, tol);
        ++nodes;
        if (nodes > tol.max_mip_nodes) {
            best.status = SolveStatus::IterationLimit;
            best.mip_gap = best_obj - global_bound;
            best.nodes = nodes;
            return best;
        }
        if (r.status == SolveStatus::Infeasible) continue;
        if (r.status != SolveStatus::Optimal) {
            best.status = r.status;
            best.nodes = nodes;
            return best;
        }
        if (r.objective >= best_obj - tol.mip_gap) continue;
        int branch = most_fractional(r.x, mip.integral, tol.integrality);
        if (branch < 0) {
            if (r.objective < best_obj - 1e-12) {
                best = r;
                best_obj = r.objective;
            }
            continue;
        }
        try_dive(r.x, node.lo, node.up);
        double v = r.x[branch];
        Node down{r.objective, next_id++, node.lo, node.up};
        down.up[branch] = std::floor(v);
        Node upn{r.objective, next_id++, node.lo, node.up};
        upn.lo[branch] = std::ceil(v);
        if (down.lo[branch] <= down.up[branch]) open.push(down);
        if (upn.lo[branch] <= upn.up[branch]) open.push(upn);
    }

    best.nodes = nodes;
    if (best.status == SolveStatus::Optimal) {
        double bound = open.empty() ? best_obj : std::min(best_obj, global_bound);
        best.mip_gap = std::max(0.0, best_obj - bound);
        // sanity: relaxation can never exceed the integral optimum
        assert(root.objective <= best_obj + 1e-6);
        if (!integral_ok(best.x)) best.status = SolveStatus::IterationLimit;
    }
    return best;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (lp.lower[j] > -kInf) worst = std::max(worst, lp.lower[j] - x[j]);
        if (lp.upper[j] < kInf) worst = std::max(worst, x[j] - lp.upper[j]);
    }
    for (const auto& r : lp.rows) {
        double ax = 0.0;
        for (int j = 0; j < lp.num_vars(); ++j) ax += r.coeffs[j] * x[j];
        switch (r.rel) {
            case Relation::LessEq: worst = std::max(worst, ax - r.rhs); break;
            case Relation::GreaterEq: worst = std::max(worst, r.rhs - ax); break;
            case Relation::Equal: worst = std::max(worst, std::abs(ax - r.rhs)); break;
        }
    }
    return worst;
}

std::string dump_lp(const LinearProgram& lp) {
    std::ostringstream os;
    os << "minimize";
    for (int j = 0; j < lp.num_vars(); ++j)
        if (lp.objective[j] != 0.0) os << " " << lp.objective[j] << "*x" << j;
    os << "\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
        const auto& r = lp.rows[i];
        os << "r" << i << " [" << r.tag << "]:";
        for (int j = 0; j < lp.num_vars(); ++j)
            if (r.coeffs[j] != 0.0) os << " " << r.coeffs[j] << "*x" << j;
        os << (r.rel == Relation::LessEq ? " <= " : r.rel == Relation::Equal ? " == " : " >= ")
           << r.rhs << "\n";
    }
    for (int j = 0; j < lp.num_vars(); ++j)
        os << "x" << j << " in [" << lp.lower[j] << ", " << lp.upper[j] << "]\n";
    return os.str();
}

}  // namespace hems
