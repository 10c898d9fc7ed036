#pragma once

#include <string>

#include <json.hpp>

#include "hems/lowerbound.hpp"
#include "hems/scheduler.hpp"

namespace hems {

// Slot labels follow the source tables: "0 A.M." is midnight, "12 A.M."
// noon, "X P.M." hour X+12; slot t covers [t:00, t+1:00).
int parse_slot_label(const std::string& label);
std::string slot_label(int slot);

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

// Parses, validates, and returns the instance; throws std::runtime_error
// with a field-specific message on parse errors, and with the full issue
// list on validation failures.
Instance load_config(const std::string& path);

nlohmann::json solution_to_json(const Instance& inst, const DaySolution& sol);
nlohmann::json lower_bound_to_json(const LowerBoundBreakdown& lb);

// Per-appliance start / energy / tariff-cost table, one line per appliance.
std::string emit_schedule_table(const Instance& inst, const DaySolution& sol);

// One CSV row per slot and scenario: demand, every flow, draw, price, cost.
std::string traces_csv(const Instance& inst, const std::vector<DaySolution>& solutions);

std::string instance_checksum(const Instance& inst);

}  // namespace hems
