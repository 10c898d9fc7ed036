#pragma once

#include "hems/types.hpp"

namespace hems {

ValidationReport validate_instance(const Instance& inst);

// Per-slot PV energy in kWh: ghi * area * efficiency * dt, or the stored
// energy vector when that form is used. Throws on negative entries.
std::vector<double> res_energy(const ResProfile& res, const TimeGrid& grid);

// Per-slot appliance energy E_N(t) + E_M(t) in kWh for a given schedule.
// Throws if the schedule names an unknown appliance or misses one.
std::vector<double> appliance_demand(const Instance& inst, const ScheduleAssignment& schedule);

// Non-shiftable part only.
std::vector<double> non_shiftable_demand(const Instance& inst);

// True iff the appliance is on in slot t under start st (uninterrupted run).
inline bool runs_in_slot(int start, int duration, int t) {
    return start <= t && t <= start + duration - 1;
}

ValidationReport validate_schedule(const Instance& inst, const ScheduleAssignment& schedule);

}  // namespace hems
