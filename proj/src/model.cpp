#include "hems/model.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace hems {

namespace {

void check(ValidationReport& rep, bool cond, const std::string& field, const std::string& rule) {
    if (!cond) rep.issues.push_back({field, rule});
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    const int T = inst.grid.slots;
    check(rep, T >= 1, "grid.slots", "T >= 1");
    check(rep, inst.grid.dt_hours > 0, "grid.dt_hours", "dt > 0");

    check(rep, static_cast<int>(inst.prices.grid_price.size()) == T, "prices.grid_price",
          "length == T");
    for (double p : inst.prices.grid_price)
        if (!(p > 0)) {
            check(rep, false, "prices.grid_price", "all prices > 0");
            break;
        }
    check(rep, inst.prices.alpha > 0 && inst.prices.alpha <= 1.0, "prices.alpha",
          "0 < alpha <= 1");

    if (inst.res.is_ghi_form()) {
        check(rep, static_cast<int>(inst.res.ghi.size()) == T, "res.ghi", "length == T");
        check(rep, inst.res.area_m2 > 0, "res.area_m2", "area > 0");
        check(rep, inst.res.efficiency > 0 && inst.res.efficiency <= 1, "res.efficiency",
              "0 < eta <= 1");
        for (double g : inst.res.ghi)
            if (g < 0) {
                check(rep, false, "res.ghi", "entries >= 0");
                break;
            }
    } else {
        check(rep, static_cast<int>(inst.res.energy_kwh.size()) == T, "res.energy_kwh",
              "length == T");
        for (double e : inst.res.energy_kwh)
            if (e < 0) {
                check(rep, false, "res.energy_kwh", "entries >= 0");
                break;
            }
    }

    const auto& ess = inst.ess;
    check(rep, ess.efficiency > 0 && ess.efficiency <= 1, "ess.efficiency", "0 < eta <= 1");
    check(rep, ess.charge_rate_kw >= 0, "ess.charge_rate_kw", "rate >= 0");
    check(rep, ess.discharge_rate_kw >= 0, "ess.discharge_rate_kw", "rate >= 0");
    check(rep, ess.level_min_kwh <= ess.level_initial_kwh, "ess.level_initial_kwh",
          "el_min <= el0");
    check(rep, ess.level_initial_kwh <= ess.level_max_kwh, "ess.level_initial_kwh",
          "el0 <= el_max");

    std::set<std::string> names;
    for (const auto& a : inst.shiftable) {
        const std::string f = "shiftable." + a.name;
        check(rep, names.insert(a.name).second, f, "unique name");
        check(rep, a.power_kw > 0, f + ".power_kw", "power > 0");
        check(rep, a.duration_slots >= 1 && a.duration_slots <= T, f + ".duration_slots",
              "1 <= lot <= T");
        check(rep, a.priority >= 1 && a.priority <= 3, f + ".priority", "in {1,2,3}");
        check(rep,
              a.usable.first <= a.best.first && a.best.first <= a.best.last &&
                  a.best.last <= a.usable.last,
              f + ".ranges", "us <= bs <= be <= ue");
        check(rep, a.usable.first >= 0 && a.usable.last <= T, f + ".ranges",
              "within the day");
        if (a.requested_start) {
            check(rep, *a.requested_start >= 0 && *a.requested_start <= T - a.duration_slots,
                  f + ".requested_start", "fits within the day");
        }
    }
    for (const auto& b : inst.non_shiftable) {
        const std::string f = "non_shiftable." + b.name;
        check(rep, b.power_kw > 0, f + ".power_kw", "power > 0");
        check(rep, static_cast<int>(b.on.size()) == T, f + ".on", "length == T");
        for (int v : b.on)
            if (v != 0 && v != 1) {
                check(rep, false, f + ".on", "entries in {0,1}");
                break;
            }
    }

    // consecutive constraints: known endpoints, no self-loops, acyclic
    for (const auto& c : inst.consecutive) {
        const std::string f = "consecutive." + c.predecessor + "->" + c.successor;
        check(rep, c.predecessor != c.successor, f, "predecessor != successor");
        check(rep, c.min_delay_slots >= 0, f, "delay >= 0");
        check(rep, inst.find_shiftable(c.predecessor) != nullptr, f,
              "predecessor is a shiftable appliance");
        check(rep, inst.find_shiftable(c.successor) != nullptr, f,
              "successor is a shiftable appliance");
    }
    {
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& c : inst.consecutive) adj[c.predecessor].push_back(c.successor);
        std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
        bool cyclic = false;
        std::function<void(const std::string&)> dfs = [&](const std::string& u) {
            state[u] = 1;
            for (const auto& v : adj[u]) {
                if (state[v] == 1) cyclic = true;
                else if (state[v] == 0) dfs(v);
                if (cyclic) return;
            }
            state[u] = 2;
        };
        for (const auto& kv : adj) {
            if (state[kv.first] == 0) dfs(kv.first);
            if (cyclic) break;
        }
        check(rep, !cyclic, "consecutive", "acyclic");
    }

    const auto& w = inst.weights;
    check(rep, w.convenience >= 0 && w.convenience <= 1, "weights.convenience", "in [0,1]");
    check(rep, w.peak_ratio >= 0 && w.peak_ratio <= 1, "weights.peak_ratio", "in [0,1]");
    check(rep, w.waiting >= 0 && w.waiting <= 1, "weights.waiting", "in [0,1]");
    check(rep, std::abs(w.convenience + w.peak_ratio + w.waiting - 1.0) <= 1e-9, "weights",
          "w1 + w2 + w3 == 1");
    return rep;
}

std::vector<double> res_energy(const ResProfile& res, const TimeGrid& grid) {
    std::vector<double> out(grid.slots, 0.0);
    if (res.is_ghi_form()) {
        if (static_cast<int>(res.ghi.size()) != grid.slots)
            throw std::invalid_argument("res_energy: ghi length mismatch");
        for (int t = 0; t < grid.slots; ++t) {
            if (res.ghi[t] < 0) throw std::invalid_argument("res_energy: negative ghi");
            out[t] = res.ghi[t] * res.area_m2 * res.efficiency * grid.dt_hours;
        }
    } else {
        if (static_cast<int>(res.energy_kwh.size()) != grid.slots)
            throw std::invalid_argument("res_energy: energy length mismatch");
        for (int t = 0; t < grid.slots; ++t) {
            if (res.energy_kwh[t] < 0) throw std::invalid_argument("res_energy: negative energy");
            out[t] = res.energy_kwh[t];
        }
    }
    return out;
}

std::vector<double> non_shiftable_demand(const Instance& inst) {
    const int T = inst.grid.slots;
    std::vector<double> out(T, 0.0);
    for (const auto& b : inst.non_shiftable)
        for (int t = 0; t < T; ++t)
            if (b.on[t]) out[t] += b.power_kw * inst.grid.dt_hours;
    return out;
}

std::vector<double> appliance_demand(const Instance& inst, const ScheduleAssignment& schedule) {
    const int T = inst.grid.slots;
    std::vector<double> out = non_shiftable_demand(inst);
    for (const auto& kv : schedule.start)
        if (inst.find_shiftable(kv.first) == nullptr)
            throw std::invalid_argument("appliance_demand: unknown appliance " + kv.first);
    for (const auto& a : inst.shiftable) {
        auto it = schedule.start.find(a.name);
        if (it == schedule.start.end())
            throw std::invalid_argument("appliance_demand: schedule misses " + a.name);
        for (int t = 0; t < T; ++t)
            if (runs_in_slot(it->second, a.duration_slots, t))
                out[t] += a.power_kw * inst.grid.dt_hours;
    }
    return out;
}

ValidationReport validate_schedule(const Instance& inst, const ScheduleAssignment& schedule) {
    ValidationReport rep;
    const int T = inst.grid.slots;
    for (const auto& a : inst.shiftable) {
        auto it = schedule.start.find(a.name);
        if (it == schedule.start.end()) {
            rep.issues.push_back({"schedule." + a.name, "missing start"});
            continue;
        }
        if (it->second < 0 || it->second > T - a.duration_slots)
            rep.issues.push_back({"schedule." + a.name, "start must fit the day"});
    }
    for (const auto& c : inst.consecutive) {
        auto p = schedule.start.find(c.predecessor);
        auto s = schedule.start.find(c.successor);
        if (p == schedule.start.end() || s == schedule.start.end()) continue;
        const auto* pa = inst.find_shiftable(c.predecessor);
        if (p->second + pa->duration_slots + c.min_delay_slots > s->second)
            rep.issues.push_back({"schedule." + c.predecessor + "->" + c.successor,
                                  "successor starts after predecessor end plus delay"});
    }
    return rep;
}

}  // namespace hems
