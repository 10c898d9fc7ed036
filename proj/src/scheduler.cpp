#include "hems/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

#include "hems/formulation.hpp"

namespace hems {

namespace {

std::vector<int> topo_constraint_order(const Instance& inst) {
    // constraint indices sorted so predecessors are repaired before their
    // successors' own outgoing constraints; instance validation guarantees
    // acyclicity
    const int n = static_cast<int>(inst.consecutive.size());
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    std::set<std::string> resolved;
    for (const auto& a : inst.shiftable) {
        bool is_successor = false;
        for (const auto& c : inst.consecutive)
            if (c.successor == a.name) is_successor = true;
        if (!is_successor) resolved.insert(a.name);
    }
    for (int round = 0; round < n; ++round) {
        for (int i = 0; i < n; ++i) {
            if (placed[i]) continue;
            if (resolved.count(inst.consecutive[i].predecessor)) {
                order.push_back(i);
                placed[i] = true;
                resolved.insert(inst.consecutive[i].successor);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!placed[i]) order.push_back(i);
    return order;
}

// push successors forward until every precedence constraint holds; returns
// false when a start would no longer fit in the day
bool repair_forward(const Instance& inst, const std::vector<int>& topo,
                    ScheduleAssignment& sched) {
    const int T = inst.grid.slots;
    for (int idx : topo) {
        const auto& c = inst.consecutive[idx];
        const auto* pred = inst.find_shiftable(c.predecessor);
        const auto* succ = inst.find_shiftable(c.successor);
        int earliest = sched.start[c.predecessor] + pred->duration_slots + c.min_delay_slots;
        int& st = sched.start[c.successor];
        if (st < earliest) st = earliest;
        if (st > T - succ->duration_slots) return false;
    }
    return true;
}

ScheduleAssignment derived_normal_starts(const Instance& inst) {
    ScheduleAssignment sched;
    const int T = inst.grid.slots;
    for (const auto& a : inst.shiftable)
        sched.start[a.name] = std::min(a.best.first, T - a.duration_slots);
    auto topo = topo_constraint_order(inst);
    if (!repair_forward(inst, topo, sched))
        throw std::runtime_error(
            "run_normal: best-range starts cannot satisfy the precedence constraints");
    return sched;
}

double tariff_cost(const Instance& inst, const std::vector<double>& demand) {
    double c = 0.0;
    for (int t = 0; t < inst.grid.slots; ++t) c += demand[t] * inst.prices.grid_price[t];
    return c;
}

struct CandidateValue {
    bool feasible = false;
    double mo = kInf;
    double cap = kInf;
    double cost = kInf;
    FlowVector flows;
    ObjectiveBreakdown objectives;
    bool denominator_failed = false;
};

// exact value of one start tuple: cap sweep + evaluation; min MO wins,
// ties resolved toward the lower cap
CandidateValue evaluate_tuple(const Instance& inst, double alpha,
                              const ScheduleAssignment& sched, const ScenarioConfig& cfg) {
    CandidateValue best;
    auto uncapped = solve_dispatch(inst, alpha, sched, std::nullopt, cfg.tol);
    if (uncapped.status != SolveStatus::Optimal) return best;

    const auto demand = appliance_demand(inst, sched);
    const double max_demand = *std::max_element(demand.begin(), demand.end());
    const auto draw = grid_draw(uncapped.flows);
    const double uncapped_peak = *std::max_element(draw.begin(), draw.end());

    auto consider = [&](const DispatchResult& r, double cap) {
        ObjectiveBreakdown obj = evaluate(inst, sched, r.flows, alpha, cfg.weights,
                                          cfg.unit_weights);
        if (std::isnan(obj.mo_value)) {
            best.denominator_failed = true;
            return;
        }
        if (obj.mo_value < best.mo - 1e-12 ||
            (std::abs(obj.mo_value - best.mo) <= 1e-12 && cap < best.cap)) {
            best.feasible = true;
            best.mo = obj.mo_value;
            best.cap = cap;
            best.cost = obj.cost_cents;
            best.flows = r.flows;
            best.objectives = obj;
        }
    };

    consider(uncapped, kInf);
    for (double cap : cap_grid(max_demand, uncapped_peak, cfg.cap_resolution)) {
        if (cap >= uncapped_peak - 1e-9) continue;  // cannot cut the uncapped optimum
        auto r = solve_dispatch(inst, alpha, sched, cap, cfg.tol);
        if (r.status != SolveStatus::Optimal) continue;  // infeasible cap, skip
        consider(r, cap);
    }
    return best;
}

std::vector<int> to_vector(const Instance& inst, const ScheduleAssignment& sched) {
    std::vector<int> v;
    v.reserve(inst.shiftable.size());
    for (const auto& a : inst.shiftable) v.push_back(sched.start.at(a.name));
    return v;
}

ScheduleAssignment from_vector(const Instance& inst, const std::vector<int>& v) {
    ScheduleAssignment s;
    for (size_t k = 0; k < inst.shiftable.size(); ++k) s.start[inst.shiftable[k].name] = v[k];
    return s;
}

DaySolution finish_solution(const Instance& inst, const ScheduleAssignment& sched,
                            const CandidateValue& val, const char* tag, double alpha,
                            bool proven) {
    DaySolution out;
    out.scenario = tag;
    out.alpha = alpha;
    out.schedule = sched;
    out.flows = val.flows;
    out.objectives = val.objectives;
    out.proven_optimal = proven;
    auto issues = check_flows(inst, sched, val.flows);
    if (!issues.empty())
        throw std::runtime_error(std::string(tag) + ": returned flows violate invariants: " +
                                 issues.front());
    return out;
}

}  // namespace

std::vector<double> cap_grid(double max_slot_demand, double uncapped_peak, int resolution) {
    std::vector<double> grid;
    const int n = std::max(2, resolution);
    const double hi = max_slot_demand;
    const double lo = uncapped_peak;
    for (int i = 0; i < n; ++i) {
        double c = hi + (lo - hi) * static_cast<double>(i) / (n - 1);
        grid.push_back(c);
    }
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               grid.end());
    return grid;
}

ScheduleAssignment normal_starts(const Instance& inst) {
    bool all_requested = !inst.shiftable.empty();
    for (const auto& a : inst.shiftable)
        if (!a.requested_start) all_requested = false;
    if (!all_requested) return derived_normal_starts(inst);
    ScheduleAssignment sched;
    for (const auto& a : inst.shiftable) sched.start[a.name] = *a.requested_start;
    auto issues = validate_schedule(inst, sched);
    if (!issues.ok())
        throw std::runtime_error("run_normal: requested starts are infeasible: " +
                                 issues.summary());
    return sched;
}

DaySolution run_normal(const Instance& inst, const ScenarioConfig& cfg) {
    auto rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("run_normal: invalid instance: " + rep.summary());
    ScheduleAssignment sched = normal_starts(inst);

    const auto demand = appliance_demand(inst, sched);
    FlowVector flows = FlowVector::zeros(inst.grid.slots);
    for (int t = 0; t < inst.grid.slots; ++t) {
        flows.grid_to_load[t] = demand[t];
        flows.ess_level[t] = inst.ess.level_initial_kwh;
    }
    DaySolution out;
    out.scenario = "normal";
    out.alpha = cfg.alpha;
    out.schedule = sched;
    out.flows = flows;
    out.objectives = evaluate(inst, sched, flows, cfg.alpha, cfg.weights, cfg.unit_weights);
    return out;
}

DispatchResult solve_dispatch(const Instance& inst, double alpha,
                              const ScheduleAssignment& schedule,
                              std::optional<double> peak_cap_kwh, const ToleranceSettings& tol) {
    DispatchResult out;
    auto model = build_economic_milp(inst, alpha, schedule, peak_cap_kwh);
    auto sol = solve_mip(model.mip, tol);
    out.status = sol.status;
    if (sol.status != SolveStatus::Optimal) return out;

    // canonical flows: hold the discrete part and the optimal cost, then
    // prefer selling; keeps returned traces independent of pivot order
    LinearProgram face = model.mip.lp;
    for (int j : model.mip.integral) {
        double v = std::floor(sol.x[j] + 0.5);
        face.lower[j] = face.upper[j] = v;
    }
    face.add_row(model.mip.lp.objective, Relation::LessEq, sol.objective + 1e-7, "cost_face");
    std::fill(face.objective.begin(), face.objective.end(), 0.0);
    for (int t = 0; t < inst.grid.slots; ++t)
        face.objective[model.dispatch.ess_to_sell + t] = -1.0;
    auto face_sol = solve_lp(face, tol);
    const std::vector<double>& x =
        face_sol.status == SolveStatus::Optimal ? face_sol.x : sol.x;

    out.flows = model.extract_flows(inst, x);
    auto ec = cost_per_slot(inst, out.flows, alpha);
    out.cost_cents = 0.0;
    const auto demand = appliance_demand(inst, schedule);
    for (int t = 0; t < inst.grid.slots; ++t) out.cost_cents += ec[t];
    (void)demand;
    return out;
}

DaySolution run_economic(const Instance& inst, double alpha, const ScenarioConfig& cfg) {
    auto rep = validate_instance(inst);
    if (!rep.ok())
        throw std::invalid_argument("run_economic: invalid instance: " + rep.summary());

    auto model = build_economic_milp(inst, alpha, std::nullopt, std::nullopt);
    auto sol = solve_mip(model.mip, cfg.tol);
    bool proven = sol.status == SolveStatus::Optimal;
    if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::IterationLimit)
        throw std::runtime_error(std::string("run_economic: solver returned ") +
                                 to_string(sol.status));
    if (sol.x.empty()) throw std::runtime_error("run_economic: no incumbent available");

    ScheduleAssignment sched = model.extract_schedule(inst, sol.x);
    const double opt_cost = sol.objective + model.fixed_cost_cents;

    // canonical starts: appliance by appliance, earliest start that keeps the
    // optimum (holding the other appliances at their current starts)
    if (proven) {
        for (const auto& a : inst.shiftable) {
            const int current = sched.start[a.name];
            for (int s = 0; s < current; ++s) {
                ScheduleAssignment trial = sched;
                trial.start[a.name] = s;
                if (!validate_schedule(inst, trial).ok()) continue;
                auto r = solve_dispatch(inst, alpha, trial, std::nullopt, cfg.tol);
                if (r.status == SolveStatus::Optimal && r.cost_cents <= opt_cost + 1e-6) {
                    sched = trial;
                    break;
                }
            }
        }
    }

    auto dispatch = solve_dispatch(inst, alpha, sched, std::nullopt, cfg.tol);
    if (dispatch.status != SolveStatus::Optimal)
        throw std::runtime_error("run_economic: dispatch re-solve failed");

    DaySolution out;
    out.scenario = "economic";
    out.alpha = alpha;
    out.schedule = sched;
    out.flows = dispatch.flows;
    out.objectives = evaluate(inst, sched, dispatch.flows, alpha, cfg.weights, cfg.unit_weights);
    out.proven_optimal = proven;
    auto issues = check_flows(inst, sched, dispatch.flows);
    if (!issues.empty())
        throw std::runtime_error("run_economic: flows violate invariants: " + issues.front());

    // the closed-form bound must never exceed the achieved cost
    auto lb = lower_bound(inst, alpha, cfg.tol);
    if (lb.total > out.objectives.cost_cents + 1e-5)
        throw std::runtime_error("run_economic: cost fell below the lower bound");
    return out;
}

namespace {

struct SearchState {
    std::map<std::vector<int>, CandidateValue> cache;
    long denominator_failures = 0;
    long evaluated = 0;
};

const CandidateValue& evaluate_cached(const Instance& inst, double alpha,
                                      const std::vector<int>& key, const ScenarioConfig& cfg,
                                      SearchState& state) {
    auto it = state.cache.find(key);
    if (it != state.cache.end()) return it->second;
    auto val = evaluate_tuple(inst, alpha, from_vector(inst, key), cfg);
    ++state.evaluated;
    if (val.denominator_failed && !val.feasible) ++state.denominator_failures;
    return state.cache.emplace(key, std::move(val)).first->second;
}

// all feasible start tuples in lexicographic order (small instances only)
void enumerate_tuples(const Instance& inst, std::vector<std::vector<int>>& out) {
    const int m = static_cast<int>(inst.shiftable.size());
    const int T = inst.grid.slots;
    std::vector<int> cur(m, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == m) {
            auto sched = from_vector(inst, cur);
            if (validate_schedule(inst, sched).ok()) out.push_back(cur);
            return;
        }
        const int ns = T - inst.shiftable[k].duration_slots;
        for (int s = 0; s <= ns; ++s) {
            cur[k] = s;
            rec(k + 1);
        }
    };
    rec(0);
}

}  // namespace

DaySolution run_smart(const Instance& inst, double alpha, const ScenarioConfig& cfg) {
    auto rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("run_smart: invalid instance: " + rep.summary());
    if (!cfg.unit_weights) {
        double s = cfg.weights.convenience + cfg.weights.peak_ratio + cfg.weights.waiting;
        if (std::abs(s - 1.0) > 1e-9)
            throw std::invalid_argument("run_smart: weights must sum to 1");
    }

    SearchState state;
    long space = 1;
    for (const auto& a : inst.shiftable) {
        space *= inst.grid.slots - a.duration_slots + 1;
        if (space > cfg.exhaustive_limit) break;
    }

    std::vector<int> best_key;
    CandidateValue best;
    bool have_best = false;

    auto consider_key = [&](const std::vector<int>& key) {
        const auto& val = evaluate_cached(inst, alpha, key, cfg, state);
        if (!val.feasible) return false;
        if (!have_best || val.mo < best.mo - 1e-12 ||
            (std::abs(val.mo - best.mo) <= 1e-12 && key < best_key)) {
            best = val;
            best_key = key;
            have_best = true;
            return true;
        }
        return false;
    };

    if (space <= cfg.exhaustive_limit) {
        std::vector<std::vector<int>> all;
        enumerate_tuples(inst, all);
        for (const auto& key : all) consider_key(key);
    } else {
        // seeds: the no-management starts and the pure-cost starts
        std::vector<std::vector<int>> seeds;
        seeds.push_back(to_vector(inst, normal_starts(inst)));
        {
            auto econ = run_economic(inst, alpha, cfg);
            seeds.push_back(to_vector(inst, econ.schedule));
        }
        for (const auto& s : seeds) consider_key(s);

        auto topo = topo_constraint_order(inst);
        const int m = static_cast<int>(inst.shiftable.size());
        for (int pass = 0; pass < cfg.max_passes && have_best; ++pass) {
            // collect the distinct repaired neighbors of the incumbent
            std::vector<std::vector<int>> neighbors;
            std::set<std::vector<int>> seen;
            seen.insert(best_key);
            for (int k = 0; k < m; ++k) {
                const auto& a = inst.shiftable[k];
                for (int step = -cfg.search_radius; step <= cfg.search_radius; ++step) {
                    if (step == 0) continue;
                    std::vector<int> key = best_key;
                    int st = key[k] + step;
                    st = std::max(0, std::min(inst.grid.slots - a.duration_slots, st));
                    if (st == key[k]) continue;
                    key[k] = st;
                    auto sched = from_vector(inst, key);
                    if (!repair_forward(inst, topo, sched)) continue;
                    // the move itself must respect its own predecessors
                    if (!validate_schedule(inst, sched).ok()) continue;
                    auto repaired = to_vector(inst, sched);
                    if (seen.insert(repaired).second) neighbors.push_back(repaired);
                }
            }
            // deterministic parallel evaluation, then a serial reduction in
            // neighbor order
            if (cfg.parallel && neighbors.size() > 1) {
                std::vector<std::future<CandidateValue>> futs;
                std::vector<const std::vector<int>*> missing;
                for (const auto& key : neighbors)
                    if (!state.cache.count(key)) missing.push_back(&key);
                futs.reserve(missing.size());
                for (const auto* key : missing)
                    futs.push_back(std::async(std::launch::async, [&, key] {
                        return evaluate_tuple(inst, alpha, from_vector(inst, *key), cfg);
                    }));
                for (size_t i = 0; i < missing.size(); ++i) {
                    auto val = futs[i].get();
                    ++state.evaluated;
                    if (val.denominator_failed && !val.feasible) ++state.denominator_failures;
                    state.cache.emplace(*missing[i], std::move(val));
                }
            }
            // steepest descent: scan every neighbor, keep the pass minimum
            bool improved = false;
            for (const auto& key : neighbors) {
                const auto& val = evaluate_cached(inst, alpha, key, cfg, state);
                if (!val.feasible) continue;
                if (val.mo < best.mo - 1e-9) {
                    best = val;
                    best_key = key;
                    improved = true;
                }
            }
            if (!improved) break;
        }
    }

    if (!have_best) {
        if (state.denominator_failures > 0)
            throw std::runtime_error(
                "run_smart: every candidate has a non-positive scalarization denominator; "
                "adjust the objective weights");
        throw std::runtime_error("run_smart: no feasible candidate found");
    }
    return finish_solution(inst, from_vector(inst, best_key), best, "smart", alpha, true);
}

std::vector<DaySolution> weight_sweep(const Instance& inst, double alpha,
                                      const std::vector<Weights>& weight_list,
                                      const ScenarioConfig& cfg) {
    std::vector<DaySolution> out;
    for (const auto& w : weight_list) {
        ScenarioConfig c = cfg;
        c.weights = w;
        c.unit_weights = false;
        out.push_back(run_smart(inst, alpha, c));
    }
    return out;
}

}  // namespace hems
