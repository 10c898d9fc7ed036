#pragma once

#include "hems/lowerbound.hpp"
#include "hems/objectives.hpp"

namespace hems {

struct ScenarioConfig {
    double alpha = 1.0;
    Weights weights;
    bool unit_weights = true;  // plain UC - PAR - WT denominator
    int cap_resolution = 12;   // peak-cap grid points per candidate, >= 2
    int search_radius = 3;     // local-search move size in slots, >= 1
    int max_passes = 20;
    long exhaustive_limit = 4096;  // enumerate all start tuples when the
                                   // start-space is at most this large
    bool parallel = true;
    ToleranceSettings tol;
};

// No management: appliances run at the resident-requested starts (or the
// earliest best-range slot pushed forward over the precedence constraints
// when no requests are given); the battery and PV stay idle.
DaySolution run_normal(const Instance& inst, const ScenarioConfig& cfg = {});

// Pure cost minimization over starts, modes and flows. The returned start
// vector is canonical: appliance by appliance the earliest equal-cost start.
DaySolution run_economic(const Instance& inst, double alpha, const ScenarioConfig& cfg = {});

// Scalarized multi-objective minimization: seeded deterministic descent over
// start tuples (exhaustive below `exhaustive_limit`), a peak-cap sweep per
// candidate, exact re-evaluation of every (starts, cap) pair.
DaySolution run_smart(const Instance& inst, double alpha, const ScenarioConfig& cfg = {});

std::vector<DaySolution> weight_sweep(const Instance& inst, double alpha,
                                      const std::vector<Weights>& weight_list,
                                      const ScenarioConfig& cfg = {});

// Start tuple used by the normal scenario (requests, else the derived rule).
ScheduleAssignment normal_starts(const Instance& inst);

// Cost-optimal dispatch for a fixed schedule (modes free, optional grid-draw
// cap). Flows are canonicalized: among cost-optimal flows the selling-heavy
// one is returned, so identical inputs yield identical traces.
struct DispatchResult {
    SolveStatus status = SolveStatus::Infeasible;
    double cost_cents = 0.0;
    FlowVector flows;
};
DispatchResult solve_dispatch(const Instance& inst, double alpha,
                              const ScheduleAssignment& schedule,
                              std::optional<double> peak_cap_kwh,
                              const ToleranceSettings& tol);

// The cap grid swept for one candidate tuple: `resolution` values from the
// per-slot demand maximum down to the uncapped optimum's draw peak.
std::vector<double> cap_grid(double max_slot_demand, double uncapped_peak, int resolution);

}  // namespace hems
