#pragma once

// Shared fixtures: the shipped day-ahead instance and small synthetic ones.

#include <string>

#include "hems/config_io.hpp"

namespace fixtures {

inline hems::Instance paper() {
    static hems::Instance inst = hems::load_config(std::string(HEMS_DATA_DIR) + "/paper.json");
    return inst;
}

// T-slot toy with a couple of shiftable appliances; no PV, small battery.
inline hems::Instance toy(int T = 6) {
    hems::Instance inst;
    inst.grid.slots = T;
    inst.grid.dt_hours = 1.0;
    inst.prices.grid_price = {10, 4, 6, 12, 5, 8};
    inst.prices.grid_price.resize(T, 7.0);
    inst.prices.alpha = 1.0;
    inst.res.energy_kwh.assign(T, 0.0);
    inst.ess.efficiency = 0.9;
    inst.ess.charge_rate_kw = 1.0;
    inst.ess.discharge_rate_kw = 1.0;
    inst.ess.level_initial_kwh = 0.2;
    inst.ess.level_min_kwh = 0.2;
    inst.ess.level_max_kwh = 2.0;
    hems::NonShiftableAppliance base;
    base.name = "base";
    base.power_kw = 0.5;
    base.on.assign(T, 1);
    inst.non_shiftable.push_back(base);
    hems::ShiftableAppliance a;
    a.name = "washer";
    a.power_kw = 1.0;
    a.duration_slots = 2;
    a.usable = {0, T - 1};
    a.best = {1, 3};
    a.priority = 2;
    inst.shiftable.push_back(a);
    hems::ShiftableAppliance b;
    b.name = "dryer";
    b.power_kw = 1.5;
    b.duration_slots = 1;
    b.usable = {0, T - 1};
    b.best = {3, 4};
    b.priority = 1;
    inst.shiftable.push_back(b);
    inst.consecutive.push_back({"washer", "dryer", 0});
    return inst;
}

}  // namespace fixtures
