#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hems {

// slot t covers clock hours [t*dt, (t+1)*dt), 0-based
struct TimeGrid {
    int slots = 24;
    double dt_hours = 1.0;
};

struct PriceProfile {
    std::vector<double> grid_price;  // cents/kWh per slot
    double alpha = 1.0;              // selling price = alpha * grid price
};

// Either an irradiance curve (kW/m^2) with panel area and efficiency, or a
// precomputed per-slot energy vector in kWh.
struct ResProfile {
    std::vector<double> ghi;
    double area_m2 = 0.0;
    double efficiency = 0.0;
    std::vector<double> energy_kwh;

    bool is_ghi_form() const { return !ghi.empty(); }
};

struct EssParams {
    double efficiency = 1.0;      // per-leg efficiency, applied on charge and discharge
    double charge_rate_kw = 0.0;
    double discharge_rate_kw = 0.0;
    double level_initial_kwh = 0.0;
    double level_min_kwh = 0.0;
    double level_max_kwh = 0.0;
};

struct NonShiftableAppliance {
    std::string name;
    double power_kw = 0.0;
    std::vector<int> on;  // 0/1 per slot
};

struct SlotRange {
    int first = 0;
    int last = 0;  // inclusive
};

struct ShiftableAppliance {
    std::string name;
    double power_kw = 0.0;
    int duration_slots = 1;
    SlotRange usable;  // zero convenience outside
    SlotRange best;    // full convenience inside
    int priority = 1;  // 1..3
    std::optional<int> requested_start;  // resident-requested slot for the normal scenario
};

struct ConsecutiveConstraint {
    std::string predecessor;
    std::string successor;
    int min_delay_slots = 0;
};

struct Weights {
    double convenience = 1.0 / 3;
    double peak_ratio = 1.0 / 3;
    double waiting = 1.0 / 3;
};

struct Instance {
    TimeGrid grid;
    PriceProfile prices;
    ResProfile res;
    EssParams ess;
    std::vector<ShiftableAppliance> shiftable;
    std::vector<NonShiftableAppliance> non_shiftable;
    std::vector<ConsecutiveConstraint> consecutive;
    Weights weights;

    const ShiftableAppliance* find_shiftable(const std::string& name) const {
        for (const auto& a : shiftable)
            if (a.name == name) return &a;
        return nullptr;
    }
    int shiftable_index(const std::string& name) const {
        for (size_t i = 0; i < shiftable.size(); ++i)
            if (shiftable[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

struct ScheduleAssignment {
    std::map<std::string, int> start;  // appliance name -> start slot

    int at(const std::string& name) const { return start.at(name); }
};

struct FlowVector {
    std::vector<double> res_to_load;
    std::vector<double> res_to_charge;
    std::vector<double> grid_to_charge;
    std::vector<double> grid_to_load;
    std::vector<double> ess_to_load;
    std::vector<double> ess_to_sell;
    std::vector<int> mode_charging;   // 1 = charge slot, 0 = discharge slot
    std::vector<double> ess_level;    // level after each slot

    static FlowVector zeros(int slots) {
        FlowVector f;
        f.res_to_load.assign(slots, 0.0);
        f.res_to_charge.assign(slots, 0.0);
        f.grid_to_charge.assign(slots, 0.0);
        f.grid_to_load.assign(slots, 0.0);
        f.ess_to_load.assign(slots, 0.0);
        f.ess_to_sell.assign(slots, 0.0);
        f.mode_charging.assign(slots, 0);
        f.ess_level.assign(slots, 0.0);
        return f;
    }
};

struct ObjectiveBreakdown {
    double cost_cents = 0.0;
    double uc_raw = 0.0;
    double uc_max = 0.0;
    double uc_index_percent = 0.0;
    double par = 1.0;
    double waiting_slots = 0.0;
    double mo_value = 0.0;
    std::vector<double> cost_per_slot;
    std::vector<double> grid_draw_per_slot;  // grid load + grid-sourced charging
};

struct DaySolution {
    std::string scenario;
    double alpha = 1.0;
    ScheduleAssignment schedule;
    FlowVector flows;
    ObjectiveBreakdown objectives;
    bool proven_optimal = true;
};

struct ValidationIssue {
    std::string field;
    std::string rule;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const {
        std::string s;
        for (const auto& i : issues) {
            if (!s.empty()) s += "; ";
            s += i.field + ": " + i.rule;
        }
        return s;
    }
};

}  // namespace hems
