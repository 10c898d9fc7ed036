#pragma once

#include "hems/lp.hpp"
#include "hems/model.hpp"

namespace hems {

struct LowerBoundBreakdown {
    double nonshiftable_cost = 0.0;   // fixed tariff cost of the always-scheduled loads
    double shiftable_min_cost = 0.0;  // each appliance priced at its cheapest window
    double storage_arbitrage_min = 0.0;  // optimum of the standalone battery problem
    double res_benefit = 0.0;            // tariff value of the full renewable output
    double total = 0.0;
    // conditions under which the bound is attained exactly
    bool alpha_is_one = false;
    std::vector<int> window_starts;  // cheapest-window start per shiftable appliance
};

// Cheapest tariff window of `lot` consecutive slots: (window price sum,
// earliest minimizing start).
struct WindowCost {
    double price_sum = 0.0;
    int start = 0;
};
WindowCost min_window_cost(const std::vector<double>& prices, int lot);

// Tariff value of the renewable output, cents.
double res_benefit(const std::vector<double>& res_energy, const std::vector<double>& prices);

// Closed-form cost bound: fixed loads at tariff + shiftable loads at their
// cheapest windows + standalone storage-arbitrage optimum - renewable value.
LowerBoundBreakdown lower_bound(const Instance& inst, double alpha,
                                const ToleranceSettings& tol = {});

}  // namespace hems
