#include "hems/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hems {

double uc_value(int t, const ShiftableAppliance& a) {
    const double us = a.usable.first, ue = a.usable.last;
    const double bs = a.best.first, be = a.best.last;
    if (t >= bs && t <= be) return 1.0;
    if (t <= us || t >= ue) return 0.0;
    if (t < bs) return (t - us) / (bs - us);  // us < t < bs
    return (t - ue) / (be - ue);              // be < t < ue
}

ConvenienceResult user_convenience(const Instance& inst, const ScheduleAssignment& schedule) {
    ConvenienceResult out;
    for (const auto& a : inst.shiftable) {
        out.max += a.priority * a.duration_slots;
        const int st = schedule.at(a.name);
        for (int t = st; t < st + a.duration_slots; ++t)
            out.raw += a.priority * uc_value(t, a);
    }
    out.index_percent = out.max > 0 ? 100.0 * out.raw / out.max : 100.0;
    return out;
}

double par(const std::vector<double>& grid_draw) {
    double peak = 0.0, total = 0.0;
    for (double v : grid_draw) {
        if (v < 0) throw std::invalid_argument("par: negative draw entry");
        peak = std::max(peak, v);
        total += v;
    }
    if (total <= 0.0) return 1.0;
    return peak / (total / static_cast<double>(grid_draw.size()));
}

double waiting_time(const Instance& inst, const ScheduleAssignment& schedule) {
    double total = 0.0;
    for (const auto& c : inst.consecutive) {
        const auto* pred = inst.find_shiftable(c.predecessor);
        const int slack = schedule.at(c.successor) -
                          (schedule.at(c.predecessor) + pred->duration_slots + c.min_delay_slots);
        if (slack < 0)
            throw std::invalid_argument("waiting_time: schedule violates " + c.predecessor +
                                        "->" + c.successor);
        total += slack;
    }
    return total;
}

std::vector<double> grid_draw(const FlowVector& flows) {
    std::vector<double> out(flows.grid_to_load.size());
    for (size_t t = 0; t < out.size(); ++t)
        out[t] = flows.grid_to_load[t] + flows.grid_to_charge[t];
    return out;
}

std::vector<double> cost_per_slot(const Instance& inst, const FlowVector& flows, double alpha) {
    const int T = inst.grid.slots;
    std::vector<double> out(T, 0.0);
    for (int t = 0; t < T; ++t) {
        const double draw = flows.grid_to_load[t] + flows.grid_to_charge[t];
        out[t] = draw * inst.prices.grid_price[t] -
                 flows.ess_to_sell[t] * alpha * inst.prices.grid_price[t];
    }
    return out;
}

double energy_cost(const Instance& inst, const ScheduleAssignment& schedule,
                   const FlowVector& flows, double alpha) {
    auto issues = check_flows(inst, schedule, flows);
    if (!issues.empty())
        throw std::invalid_argument("energy_cost: infeasible flows: " + issues.front());
    auto ec = cost_per_slot(inst, flows, alpha);
    return std::accumulate(ec.begin(), ec.end(), 0.0);
}

double mo_value(double cost, double uc_raw, double par_value, double waiting, const Weights& w,
                bool unit_weights) {
    const double c = unit_weights ? uc_raw : w.convenience * uc_raw;
    const double p = unit_weights ? par_value : w.peak_ratio * par_value;
    const double q = unit_weights ? waiting : w.waiting * waiting;
    const double denom = c - p - q;
    if (denom <= 0.0) throw NonPositiveDenominator(c, p, q);
    return cost / denom;
}

ObjectiveBreakdown evaluate(const Instance& inst, const ScheduleAssignment& schedule,
                            const FlowVector& flows, double alpha, const Weights& w,
                            bool unit_weights) {
    ObjectiveBreakdown out;
    out.cost_per_slot = cost_per_slot(inst, flows, alpha);
    out.cost_cents = std::accumulate(out.cost_per_slot.begin(), out.cost_per_slot.end(), 0.0);
    auto uc = user_convenience(inst, schedule);
    out.uc_raw = uc.raw;
    out.uc_max = uc.max;
    out.uc_index_percent = uc.index_percent;
    out.grid_draw_per_slot = grid_draw(flows);
    out.par = par(out.grid_draw_per_slot);
    out.waiting_slots = waiting_time(inst, schedule);
    try {
        out.mo_value = mo_value(out.cost_cents, out.uc_raw, out.par, out.waiting_slots, w,
                                unit_weights);
    } catch (const NonPositiveDenominator&) {
        // comfort terms cannot pay for the cost here; the ratio is undefined
        out.mo_value = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

std::vector<std::string> check_flows(const Instance& inst, const ScheduleAssignment& schedule,
                                     const FlowVector& flows, double tol) {
    std::vector<std::string> bad;
    const int T = inst.grid.slots;
    const double dt = inst.grid.dt_hours;
    const double eta = inst.ess.efficiency;
    const auto res = res_energy(inst.res, inst.grid);
    const auto demand = appliance_demand(inst, schedule);

    auto nonneg = [&](const std::vector<double>& v, const char* name) {
        for (double x : v)
            if (x < -tol) {
                bad.push_back(std::string(name) + " negative");
                return;
            }
    };
    nonneg(flows.res_to_load, "res_to_load");
    nonneg(flows.res_to_charge, "res_to_charge");
    nonneg(flows.grid_to_charge, "grid_to_charge");
    nonneg(flows.grid_to_load, "grid_to_load");
    nonneg(flows.ess_to_load, "ess_to_load");
    nonneg(flows.ess_to_sell, "ess_to_sell");

    double level = inst.ess.level_initial_kwh;
    for (int t = 0; t < T; ++t) {
        const double charge = flows.res_to_charge[t] + flows.grid_to_charge[t];
        const double discharge = flows.ess_to_load[t] + flows.ess_to_sell[t];
        if (flows.res_to_load[t] + flows.res_to_charge[t] > res[t] + tol)
            bad.push_back("renewable split exceeds output at slot " + std::to_string(t));
        if (charge > inst.ess.charge_rate_kw * dt * flows.mode_charging[t] + tol)
            bad.push_back("charge rate/mode violated at slot " + std::to_string(t));
        if (discharge > inst.ess.discharge_rate_kw * dt * (1 - flows.mode_charging[t]) + tol)
            bad.push_back("discharge rate/mode violated at slot " + std::to_string(t));
        if (charge > tol && discharge > tol)
            bad.push_back("simultaneous charge and discharge at slot " + std::to_string(t));
        level += charge * eta - discharge / eta;
        if (std::abs(level - flows.ess_level[t]) > 1e-5)
            bad.push_back("level recursion broken at slot " + std::to_string(t));
        if (level < inst.ess.level_min_kwh - tol || level > inst.ess.level_max_kwh + tol)
            bad.push_back("level bounds violated at slot " + std::to_string(t));
        const double supplied = flows.res_to_load[t] + flows.ess_to_load[t] +
                                flows.grid_to_load[t];
        if (std::abs(supplied - demand[t]) > 1e-5)
            bad.push_back("load balance broken at slot " + std::to_string(t));
    }
    if (std::abs(level - inst.ess.level_initial_kwh) > 1e-5)
        bad.push_back("terminal level differs from initial level");
    return bad;
}

}  // namespace hems
