#pragma once

#include <optional>

#include "hems/lp.hpp"
#include "hems/model.hpp"

namespace hems {

// Column layout of the per-slot dispatch variables, both for the standalone
// storage-arbitrage problem and for the full scheduling model.
struct DispatchVariables {
    int slots = 0;
    int res_to_load = -1;    // base column of each T-slot group
    int res_to_charge = -1;
    int grid_to_charge = -1;
    int grid_to_load = -1;
    int ess_to_load = -1;
    int ess_to_sell = -1;
    int ess_level = -1;
    int mode = -1;

    int col(int base, int t) const { return base + t; }
};

// Standalone battery arbitrage: buy/store/release against the tariff alone.
// Variables: charge(t), discharge(t), level(t), mode(t).
struct ArbitrageVars {
    int slots = 0;
    int charge = -1;
    int discharge = -1;
    int level = -1;
    int mode = -1;
};

MipProblem build_ess_arbitrage_mip(const PriceProfile& prices, const EssParams& ess,
                                   const TimeGrid& grid, ArbitrageVars* vars = nullptr);

// Continuous dispatch for a fixed schedule and fixed charge/discharge mode
// pattern. Objective equals the daily energy cost in cents.
LinearProgram build_dispatch_lp(const Instance& inst, const ScheduleAssignment& schedule,
                                const std::vector<int>& modes,
                                std::optional<double> peak_cap_kwh,
                                DispatchVariables* vars = nullptr);

// Full cost-minimization model: one-hot start binaries per shiftable
// appliance plus the dispatch block with binary modes. `fixed_starts`
// pins the schedule (modes stay free); `peak_cap_kwh` adds per-slot
// grid-draw cap rows.
struct EconomicModel {
    MipProblem mip;
    DispatchVariables dispatch;
    // start-variable layout: appliance k occupies columns
    // [start_base[k], start_base[k] + num_starts[k])
    std::vector<int> start_base;
    std::vector<int> num_starts;
    double fixed_cost_cents = 0.0;  // non-shiftable tariff cost, not in the matrix objective

    ScheduleAssignment extract_schedule(const Instance& inst, const std::vector<double>& x) const;
    FlowVector extract_flows(const Instance& inst, const std::vector<double>& x) const;
};

EconomicModel build_economic_milp(const Instance& inst, double alpha,
                                  const std::optional<ScheduleAssignment>& fixed_starts = {},
                                  std::optional<double> peak_cap_kwh = {});

// One audit line per matrix row (index, tag, relation); tests use it to
// confirm every generated row carries a constraint-family tag.
std::string audit_rows(const LinearProgram& lp);

}  // namespace hems
