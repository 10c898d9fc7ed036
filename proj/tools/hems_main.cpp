#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hems/config_io.hpp"

using nlohmann::json;

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

hems::Weights parse_weight_triple(const std::string& s) {
    auto v = parse_double_list(s);
    if (v.size() != 3) throw std::runtime_error("--weights expects w1,w2,w3 or 'unit'");
    return hems::Weights{v[0], v[1], v[2]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Day-ahead home energy scheduler: appliance starts, battery dispatch, "
                 "PV allocation, and selling under a time-of-use tariff"};
    std::string config_path;
    std::string scenario = "all";
    std::string weights_arg = "unit";
    std::string alpha_sweep_arg;
    std::string weight_sweep_path;
    std::string out_dir = ".";
    double alpha = -1.0;  // negative: use the config value
    bool lower_bound_only = false;
    long seed = 0;
    hems::ScenarioConfig cfg;

    app.add_option("--config", config_path, "instance JSON")->required();
    app.add_option("--scenario", scenario, "normal|economic|smart|all")
        ->check(CLI::IsMember({"normal", "economic", "smart", "all"}));
    app.add_option("--alpha", alpha, "selling-price factor in (0,1]");
    app.add_option("--alpha-sweep", alpha_sweep_arg, "comma list of alpha values (smart runs)");
    app.add_option("--weights", weights_arg, "w1,w2,w3 summing to 1, or 'unit'");
    app.add_option("--weight-sweep", weight_sweep_path,
                   "JSON file with a list of [w1,w2,w3] triples");
    app.add_flag("--lower-bound-only", lower_bound_only, "compute the cost bound and stop");
    app.add_option("--out", out_dir, "output directory for report.json and traces.csv");
    app.add_option("--tol-feasibility", cfg.tol.feasibility, "solver feasibility tolerance");
    app.add_option("--tol-integrality", cfg.tol.integrality, "integrality tolerance");
    app.add_option("--tol-gap", cfg.tol.mip_gap, "absolute branch-and-bound gap");
    app.add_option("--cap-resolution", cfg.cap_resolution, "peak-cap grid points");
    app.add_option("--search-radius", cfg.search_radius, "local-search move size (slots)");
    app.add_option("--max-passes", cfg.max_passes, "local-search pass limit");
    app.add_option("--seed", seed,
                   "accepted for interface compatibility; every algorithm is deterministic");
    CLI11_PARSE(app, argc, argv);
    (void)seed;

    try {
        hems::Instance inst = hems::load_config(config_path);
        if (alpha > 0) inst.prices.alpha = alpha;
        cfg.alpha = inst.prices.alpha;
        if (weights_arg == "unit") {
            cfg.unit_weights = true;
        } else {
            cfg.unit_weights = false;
            cfg.weights = parse_weight_triple(weights_arg);
        }

        json report;
        report["config_path"] = config_path;
        report["instance"] = hems::instance_to_json(inst);
        report["checksum"] = hems::instance_checksum(inst);

        auto lb = hems::lower_bound(inst, inst.prices.alpha, cfg.tol);
        report["lower_bound"] = hems::lower_bound_to_json(lb);

        std::vector<hems::DaySolution> solutions;
        if (!lower_bound_only) {
            const bool want_all = scenario == "all";
            if (want_all || scenario == "normal")
                solutions.push_back(hems::run_normal(inst, cfg));
            if (want_all || scenario == "economic")
                solutions.push_back(hems::run_economic(inst, inst.prices.alpha, cfg));
            if (want_all || scenario == "smart")
                solutions.push_back(hems::run_smart(inst, inst.prices.alpha, cfg));
            report["scenarios"] = json::object();
            for (const auto& s : solutions)
                report["scenarios"][s.scenario] = hems::solution_to_json(inst, s);

            if (!alpha_sweep_arg.empty()) {
                report["alpha_sweep"] = json::array();
                for (double a : parse_double_list(alpha_sweep_arg)) {
                    auto s = hems::run_smart(inst, a, cfg);
                    auto e = hems::solution_to_json(inst, s);
                    e["alpha"] = a;
                    report["alpha_sweep"].push_back(std::move(e));
                }
            }
            if (!weight_sweep_path.empty()) {
                std::ifstream in(weight_sweep_path);
                if (!in) throw std::runtime_error("cannot open " + weight_sweep_path);
                json triples;
                in >> triples;
                std::vector<hems::Weights> ws;
                for (const auto& t : triples)
                    ws.push_back(hems::Weights{t.at(0).get<double>(), t.at(1).get<double>(),
                                               t.at(2).get<double>()});
                auto sols = hems::weight_sweep(inst, inst.prices.alpha, ws, cfg);
                report["weight_sweep"] = json::array();
                for (size_t i = 0; i < sols.size(); ++i) {
                    auto e = hems::solution_to_json(inst, sols[i]);
                    e["weights"] = {ws[i].convenience, ws[i].peak_ratio, ws[i].waiting};
                    report["weight_sweep"].push_back(std::move(e));
                }
            }
            for (const auto& s : solutions) {
                std::cout << "== " << s.scenario << " (alpha " << s.alpha << ") ==\n"
                          << hems::emit_schedule_table(inst, s)
                          << "cost " << s.objectives.cost_cents << " cents, UC "
                          << s.objectives.uc_index_percent << "%, PAR " << s.objectives.par
                          << ", WT " << s.objectives.waiting_slots << ", MO "
                          << s.objectives.mo_value << "\n\n";
            }
        }
        std::cout << "lower bound " << lb.total << " cents ("
                  << lb.nonshiftable_cost << " fixed + " << lb.shiftable_min_cost
                  << " shiftable + " << lb.storage_arbitrage_min << " storage - "
                  << lb.res_benefit << " pv)\n";

        std::filesystem::create_directories(out_dir);
        {
            std::ofstream out(std::filesystem::path(out_dir) / "report.json");
            out << report.dump(2) << "\n";
        }
        {
            std::ofstream out(std::filesystem::path(out_dir) / "traces.csv");
            out << hems::traces_csv(inst, solutions);
        }
        return 0;
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
