#pragma once

#include <stdexcept>

#include "hems/model.hpp"

namespace hems {

// Raised when the scalarized objective denominator is not positive.
struct NonPositiveDenominator : std::runtime_error {
    double convenience_term;
    double peak_term;
    double waiting_term;
    NonPositiveDenominator(double c, double p, double w)
        : std::runtime_error("multi-objective denominator is not positive"),
          convenience_term(c), peak_term(p), waiting_term(w) {}
};

// Trapezoidal convenience score of running appliance `a` in slot t:
// 0 outside the usable range, 1 inside the best range, linear in between.
double uc_value(int t, const ShiftableAppliance& a);

// (raw score, index in percent). Raw = sum over appliances and operating
// slots of priority * uc_value; index normalized by the schedule-independent
// maximum sum(priority * duration). Empty shiftable set reports 100%.
struct ConvenienceResult {
    double raw = 0.0;
    double max = 0.0;
    double index_percent = 100.0;
};
ConvenienceResult user_convenience(const Instance& inst, const ScheduleAssignment& schedule);

// Peak-to-average ratio of a nonnegative draw vector; 1.0 for an all-zero
// draw (its flat-profile limit). Throws on negative entries.
double par(const std::vector<double>& grid_draw);

// Total slack of the consecutive constraints in slots; every term must be
// nonnegative or the schedule breaks the precedence rules (throws).
double waiting_time(const Instance& inst, const ScheduleAssignment& schedule);

// Daily cost in cents for given flows: sum of grid-draw cost minus selling
// revenue at alpha * grid price.
double energy_cost(const Instance& inst, const ScheduleAssignment& schedule,
                   const FlowVector& flows, double alpha);

// Scalarized objective. Weighted form uses w1*UC - w2*PAR - w3*WT; the
// unit-weights mode reproduces the plain UC - PAR - WT denominator.
double mo_value(double cost, double uc_raw, double par_value, double waiting, const Weights& w,
                bool unit_weights);

// Per-slot grid draw E_LD(t) = grid_to_load + grid_to_charge.
std::vector<double> grid_draw(const FlowVector& flows);

// Per-slot cost trace EC(t).
std::vector<double> cost_per_slot(const Instance& inst, const FlowVector& flows, double alpha);

// Full re-evaluation of a (schedule, flows) pair into one breakdown.
ObjectiveBreakdown evaluate(const Instance& inst, const ScheduleAssignment& schedule,
                            const FlowVector& flows, double alpha, const Weights& w,
                            bool unit_weights);

// Flow sanity: nonnegativity, rate caps, level recursion/bounds, terminal
// level, no simultaneous charge and discharge, load balance. Returns the
// list of violated rules (empty when clean).
std::vector<std::string> check_flows(const Instance& inst, const ScheduleAssignment& schedule,
                                     const FlowVector& flows, double tol = 1e-6);

}  // namespace hems
