#include "hems/lowerbound.hpp"

#include <stdexcept>

#include "hems/formulation.hpp"

namespace hems {

WindowCost min_window_cost(const std::vector<double>& prices, int lot) {
    const int T = static_cast<int>(prices.size());
    if (lot < 1 || lot > T) throw std::invalid_argument("min_window_cost: lot out of range");
    WindowCost best;
    double sum = 0.0;
    for (int t = 0; t < lot; ++t) sum += prices[t];
    best.price_sum = sum;
    best.start = 0;
    for (int s = 1; s + lot <= T; ++s) {
        sum += prices[s + lot - 1] - prices[s - 1];
        if (sum < best.price_sum - 1e-12) {
            best.price_sum = sum;
            best.start = s;
        }
    }
    return best;
}

double res_benefit(const std::vector<double>& res_energy, const std::vector<double>& prices) {
    if (res_energy.size() != prices.size())
        throw std::invalid_argument("res_benefit: length mismatch");
    double total = 0.0;
    for (size_t t = 0; t < prices.size(); ++t) total += res_energy[t] * prices[t];
    return total;
}

LowerBoundBreakdown lower_bound(const Instance& inst, double alpha,
                                const ToleranceSettings& tol) {
    LowerBoundBreakdown out;
    const auto& price = inst.prices.grid_price;
    const auto e_n = non_shiftable_demand(inst);
    for (int t = 0; t < inst.grid.slots; ++t) out.nonshiftable_cost += e_n[t] * price[t];

    for (const auto& a : inst.shiftable) {
        auto w = min_window_cost(price, a.duration_slots);
        out.shiftable_min_cost += a.power_kw * inst.grid.dt_hours * w.price_sum;
        out.window_starts.push_back(w.start);
    }

    auto mip = build_ess_arbitrage_mip(inst.prices, inst.ess, inst.grid);
    auto sol = solve_mip(mip, tol);
    if (!sol.optimal())
        throw std::runtime_error(std::string("lower_bound: arbitrage solve failed: ") +
                                 to_string(sol.status));
    out.storage_arbitrage_min = sol.objective;

    out.res_benefit = res_benefit(res_energy(inst.res, inst.grid), price);
    out.total = out.nonshiftable_cost + out.shiftable_min_cost + out.storage_arbitrage_min -
                out.res_benefit;
    out.alpha_is_one = alpha == 1.0;
    return out;
}

}  // namespace hems
