#include "hems/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hems {

using nlohmann::json;

int parse_slot_label(const std::string& label) {
    // accept a bare integer first
    try {
        size_t pos = 0;
        int v = std::stoi(label, &pos);
        if (pos == label.size()) return v;
    } catch (...) {
    }
    std::istringstream is(label);
    int hour = 0;
    std::string suffix;
    if (!(is >> hour >> suffix)) throw std::runtime_error("bad time label: " + label);
    for (auto& c : suffix) c = static_cast<char>(std::toupper(c));
    suffix.erase(std::remove(suffix.begin(), suffix.end(), '.'), suffix.end());
    if (suffix == "AM") return hour;
    if (suffix == "PM") return hour + 12;
    throw std::runtime_error("bad time label: " + label);
}

std::string slot_label(int slot) {
    if (slot < 12) return std::to_string(slot) + " A.M.";
    if (slot == 12) return "12 A.M.";
    if (slot == 24) return "12 P.M.";
    return std::to_string(slot - 12) + " P.M.";
}

namespace {

int slot_field(const json& j) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) return parse_slot_label(j.get<std::string>());
    throw std::runtime_error("expected a slot index or time label");
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.contains(key)) throw std::runtime_error(std::string("missing field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("bad field ") + key + ": " + e.what());
    }
}

}  // namespace

Instance instance_from_json(const json& j) {
    Instance inst;
    const auto& grid = j.contains("grid") ? j.at("grid") : json::object();
    inst.grid.slots = grid.value("slots", 24);
    inst.grid.dt_hours = grid.value("dt_hours", 1.0);

    const auto& prices = j.contains("prices") ? j.at("prices") : json::object();
    inst.prices.grid_price = require<std::vector<double>>(prices, "cents_per_kwh");
    inst.prices.alpha = prices.value("alpha", 1.0);

    const auto& res = j.contains("res") ? j.at("res") : json::object();
    if (res.contains("ghi_kw_per_m2")) {
        inst.res.ghi = require<std::vector<double>>(res, "ghi_kw_per_m2");
        inst.res.area_m2 = require<double>(res, "area_m2");
        inst.res.efficiency = require<double>(res, "efficiency");
    } else if (res.contains("energy_kwh")) {
        inst.res.energy_kwh = require<std::vector<double>>(res, "energy_kwh");
    } else {
        inst.res.energy_kwh.assign(inst.grid.slots, 0.0);
    }

    const auto& ess = j.contains("ess") ? j.at("ess") : json::object();
    inst.ess.efficiency = ess.value("efficiency", 1.0);
    inst.ess.charge_rate_kw = ess.value("charge_rate_kw", 0.0);
    inst.ess.discharge_rate_kw = ess.value("discharge_rate_kw", 0.0);
    inst.ess.level_initial_kwh = ess.value("level_initial_kwh", 0.0);
    inst.ess.level_min_kwh = ess.value("level_min_kwh", 0.0);
    inst.ess.level_max_kwh = ess.value("level_max_kwh", 0.0);

    for (const auto& a : j.value("shiftable", json::array())) {
        ShiftableAppliance s;
        s.name = require<std::string>(a, "name");
        s.power_kw = require<double>(a, "pr_kw");
        s.duration_slots = require<int>(a, "lot_slots");
        const auto utr = a.at("utr");
        const auto btr = a.at("btr");
        s.usable = {slot_field(utr.at(0)), slot_field(utr.at(1))};
        s.best = {slot_field(btr.at(0)), slot_field(btr.at(1))};
        s.priority = require<int>(a, "priority");
        if (a.contains("requested_start")) s.requested_start = slot_field(a.at("requested_start"));
        inst.shiftable.push_back(std::move(s));
    }
    for (const auto& b : j.value("non_shiftable", json::array())) {
        NonShiftableAppliance n;
        n.name = require<std::string>(b, "name");
        n.power_kw = require<double>(b, "pr_kw");
        if (b.contains("on")) {
            n.on = require<std::vector<int>>(b, "on");
        } else {
            n.on.assign(inst.grid.slots, 0);
            const int start = slot_field(b.at("start"));
            const int dur = require<int>(b, "duration_slots");
            for (int t = start; t < start + dur && t < inst.grid.slots; ++t) n.on[t] = 1;
        }
        inst.non_shiftable.push_back(std::move(n));
    }
    for (const auto& c : j.value("consecutive", json::array())) {
        ConsecutiveConstraint cc;
        cc.predecessor = require<std::string>(c, "predecessor");
        cc.successor = require<std::string>(c, "successor");
        cc.min_delay_slots = require<int>(c, "min_delay_slots");
        inst.consecutive.push_back(std::move(cc));
    }
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        inst.weights.convenience = require<double>(w, "convenience");
        inst.weights.peak_ratio = require<double>(w, "peak_ratio");
        inst.weights.waiting = require<double>(w, "waiting");
    }
    return inst;
}

json instance_to_json(const Instance& inst) {
    json j;
    j["grid"] = {{"slots", inst.grid.slots}, {"dt_hours", inst.grid.dt_hours}};
    j["prices"] = {{"cents_per_kwh", inst.prices.grid_price}, {"alpha", inst.prices.alpha}};
    if (inst.res.is_ghi_form()) {
        j["res"] = {{"ghi_kw_per_m2", inst.res.ghi},
                    {"area_m2", inst.res.area_m2},
                    {"efficiency", inst.res.efficiency}};
    } else {
        j["res"] = {{"energy_kwh", inst.res.energy_kwh}};
    }
    j["ess"] = {{"efficiency", inst.ess.efficiency},
                {"charge_rate_kw", inst.ess.charge_rate_kw},
                {"discharge_rate_kw", inst.ess.discharge_rate_kw},
                {"level_initial_kwh", inst.ess.level_initial_kwh},
                {"level_min_kwh", inst.ess.level_min_kwh},
                {"level_max_kwh", inst.ess.level_max_kwh}};
    j["shiftable"] = json::array();
    for (const auto& a : inst.shiftable) {
        json e = {{"name", a.name},
                  {"pr_kw", a.power_kw},
                  {"lot_slots", a.duration_slots},
                  {"utr", {a.usable.first, a.usable.last}},
                  {"btr", {a.best.first, a.best.last}},
                  {"priority", a.priority}};
        if (a.requested_start) e["requested_start"] = *a.requested_start;
        j["shiftable"].push_back(std::move(e));
    }
    j["non_shiftable"] = json::array();
    for (const auto& b : inst.non_shiftable)
        j["non_shiftable"].push_back({{"name", b.name}, {"pr_kw", b.power_kw}, {"on", b.on}});
    j["consecutive"] = json::array();
    for (const auto& c : inst.consecutive)
        j["consecutive"].push_back({{"predecessor", c.predecessor},
                                    {"successor", c.successor},
                                    {"min_delay_slots", c.min_delay_slots}});
    j["weights"] = {{"convenience", inst.weights.convenience},
                    {"peak_ratio", inst.weights.peak_ratio},
                    {"waiting", inst.weights.waiting}};
    return j;
}

Instance load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    Instance inst = instance_from_json(j);
    auto rep = validate_instance(inst);
    if (!rep.ok()) throw std::runtime_error("invalid config " + path + ": " + rep.summary());
    return inst;
}

json solution_to_json(const Instance& inst, const DaySolution& sol) {
    json j;
    j["scenario"] = sol.scenario;
    j["alpha"] = sol.alpha;
    j["proven_optimal"] = sol.proven_optimal;
    json starts = json::object();
    for (const auto& kv : sol.schedule.start) {
        starts[kv.first] = {{"slot", kv.second}, {"label", slot_label(kv.second)}};
    }
    j["schedule"] = starts;
    j["flows"] = {{"res_to_load", sol.flows.res_to_load},
                  {"res_to_charge", sol.flows.res_to_charge},
                  {"grid_to_charge", sol.flows.grid_to_charge},
                  {"grid_to_load", sol.flows.grid_to_load},
                  {"ess_to_load", sol.flows.ess_to_load},
                  {"ess_to_sell", sol.flows.ess_to_sell},
                  {"mode_charging", sol.flows.mode_charging},
                  {"ess_level", sol.flows.ess_level}};
    const auto& o = sol.objectives;
    j["objectives"] = {{"cost_cents", o.cost_cents},
                       {"uc_raw", o.uc_raw},
                       {"uc_max", o.uc_max},
                       {"uc_index_percent", o.uc_index_percent},
                       {"par", o.par},
                       {"waiting_slots", o.waiting_slots},
                       {"mo_value", o.mo_value}};
    j["traces"] = {{"cost_per_slot", o.cost_per_slot},
                   {"grid_draw_per_slot", o.grid_draw_per_slot},
                   {"demand", appliance_demand(inst, sol.schedule)}};
    return j;
}

json lower_bound_to_json(const LowerBoundBreakdown& lb) {
    return {{"nonshiftable_cost", lb.nonshiftable_cost},
            {"shiftable_min_cost", lb.shiftable_min_cost},
            {"storage_arbitrage_min", lb.storage_arbitrage_min},
            {"res_benefit", lb.res_benefit},
            {"total", lb.total},
            {"alpha_is_one", lb.alpha_is_one},
            {"window_starts", lb.window_starts}};
}

std::string emit_schedule_table(const Instance& inst, const DaySolution& sol) {
    std::ostringstream os;
    os << std::left << std::setw(18) << "appliance" << std::right << std::setw(10) << "start"
       << std::setw(14) << "energy_kwh" << std::setw(12) << "cost_cents" << "\n";
    for (const auto& a : inst.shiftable) {
        const int st = sol.schedule.start.at(a.name);
        double energy = a.power_kw * inst.grid.dt_hours * a.duration_slots;
        double cost = 0.0;
        for (int t = st; t < st + a.duration_slots; ++t)
            cost += a.power_kw * inst.grid.dt_hours * inst.prices.grid_price[t];
        os << std::left << std::setw(18) << a.name << std::right << std::setw(10)
           << slot_label(st) << std::setw(14) << std::setprecision(6) << energy << std::setw(12)
           << std::setprecision(6) << cost << "\n";
    }
    return os.str();
}

std::string traces_csv(const Instance& inst, const std::vector<DaySolution>& solutions) {
    std::ostringstream os;
    os << "scenario,slot,price_cents_per_kwh,demand_kwh,res_to_load_kwh,res_to_charge_kwh,"
          "grid_to_charge_kwh,grid_to_load_kwh,ess_to_load_kwh,ess_to_sell_kwh,mode_charging,"
          "ess_level_kwh,grid_draw_kwh,cost_cents\n";
    os << std::setprecision(12);
    for (const auto& sol : solutions) {
        const auto demand = appliance_demand(inst, sol.schedule);
        for (int t = 0; t < inst.grid.slots; ++t) {
            os << sol.scenario << ',' << t << ',' << inst.prices.grid_price[t] << ','
               << demand[t] << ',' << sol.flows.res_to_load[t] << ','
               << sol.flows.res_to_charge[t] << ',' << sol.flows.grid_to_charge[t] << ','
               << sol.flows.grid_to_load[t] << ',' << sol.flows.ess_to_load[t] << ','
               << sol.flows.ess_to_sell[t] << ',' << sol.flows.mode_charging[t] << ','
               << sol.flows.ess_level[t] << ',' << sol.objectives.grid_draw_per_slot[t] << ','
               << sol.objectives.cost_per_slot[t] << "\n";
        }
    }
    return os.str();
}

std::string instance_checksum(const Instance& inst) {
    const std::string s = instance_to_json(inst).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace hems
