#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterprep/cli.hpp"

namespace {

using clusterprep::ControlSetting;
using clusterprep::cli::RunConfig;

ControlSetting parse_control(const std::string& s) {
    if (s == "global") return ControlSetting::global;
    if (s == "local") return ControlSetting::local;
    throw CLI::ValidationError("--control", "must be 'local' or 'global'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("graph")) cfg.graph = j["graph"].get<std::string>();
    if (j.contains("control")) cfg.control = parse_control(j["control"].get<std::string>());
    if (j.contains("coupling_J")) cfg.coupling = j["coupling_J"].get<double>();
    if (j.contains("coupling")) cfg.coupling = j["coupling"].get<double>();
    if (j.contains("slices")) cfg.slices = j["slices"].get<int>();
    if (j.contains("restarts")) cfg.restarts = j["restarts"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    if (j.contains("tmin_tol")) cfg.tmin_tol = j["tmin_tol"].get<double>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("tgrid")) {
        if (j["tgrid"].is_string())
            cfg.tgrid = clusterprep::cli::parse_tgrid(j["tgrid"].get<std::string>());
        else
            cfg.tgrid = j["tgrid"].get<std::vector<double>>();
    }
    if (j.contains("graphs")) cfg.graphs = j["graphs"].get<std::vector<std::string>>();
}

struct FlagSet {
    std::string graph, control, tgrid, out, config;
    double coupling = 1.0, threshold = 0.999, tmin_tol = 0.005;
    int slices = 64, restarts = 20;
    std::uint64_t seed = 0;
    std::vector<std::string> graphs;

    CLI::Option *o_graph = nullptr, *o_control = nullptr, *o_tgrid = nullptr, *o_out = nullptr,
                *o_config = nullptr, *o_coupling = nullptr, *o_threshold = nullptr,
                *o_tmin_tol = nullptr, *o_slices = nullptr, *o_restarts = nullptr,
                *o_seed = nullptr, *o_graphs = nullptr;

    void attach(CLI::App* sub, bool with_table_list) {
        o_graph = sub->add_option("--graph", graph,
                                  "graph: family token (K3, C4, L3, G2x3), edge-list file, or "
                                  "inline edge list");
        o_control = sub->add_option("--control", control, "control setting: local or global")
                        ->check(CLI::IsMember({"local", "global"}));
        o_coupling = sub->add_option("--coupling", coupling, "Ising coupling J (default 1)");
        o_slices = sub->add_option("--slices", slices, "number of pulse slices N");
        o_restarts = sub->add_option("--restarts", restarts, "optimizer restarts");
        o_seed = sub->add_option("--seed", seed, "random seed");
        o_threshold = sub->add_option("--threshold", threshold, "fidelity threshold");
        o_tmin_tol = sub->add_option("--tmin-tol", tmin_tol,
                                     "minimal-time bisection tolerance, units 1/(2J)");
        o_tgrid = sub->add_option("--tgrid", tgrid,
                                  "times in 1/(2J): 'a:b:step', comma list, or one value");
        o_out = sub->add_option("--out", out, "output CSV path (JSON written alongside)");
        o_config = sub->add_option("--config", config, "JSON config file (flags override it)");
        if (with_table_list)
            o_graphs = sub->add_option("names", graphs, "graph names (one table row each)");
    }

    // defaults -> config file -> explicitly passed flags
    RunConfig resolve() const {
        RunConfig cfg;
        if (o_config->count()) apply_config_file(cfg, config);
        if (o_graph->count()) cfg.graph = graph;
        if (o_control->count()) cfg.control = parse_control(control);
        if (o_coupling->count()) cfg.coupling = coupling;
        if (o_slices->count()) cfg.slices = slices;
        if (o_restarts->count()) cfg.restarts = restarts;
        if (o_seed->count()) cfg.seed = seed;
        if (o_threshold->count()) cfg.threshold = threshold;
        if (o_tmin_tol->count()) cfg.tmin_tol = tmin_tol;
        if (o_tgrid->count()) cfg.tgrid = clusterprep::cli::parse_tgrid(tgrid);
        if (o_out->count()) cfg.out = out;
        if (o_graphs && o_graphs->count()) cfg.graphs = graphs;
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-optimal cluster-state preparation: reduction, pulse optimization, "
                 "and the analytic three-qubit solution"};
    app.require_subcommand(1);

    auto* s_reduce = app.add_subcommand("reduce", "reduce a graph problem to its invariant "
                                                  "subspace; report d, overlap, matrices");
    auto* s_curve = app.add_subcommand("curve", "best fidelity over a grid of transfer times");
    auto* s_table = app.add_subcommand("table", "d / overlap / minimal time per graph");
    auto* s_analytic = app.add_subcommand("analytic", "closed-form three-qubit solution report");
    auto* s_pulses = app.add_subcommand("pulses", "optimize and write one pulse sequence");

    FlagSet f_reduce, f_curve, f_table, f_analytic, f_pulses;
    f_reduce.attach(s_reduce, false);
    f_curve.attach(s_curve, false);
    f_table.attach(s_table, true);
    f_analytic.attach(s_analytic, false);
    f_pulses.attach(s_pulses, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (s_reduce->parsed()) return clusterprep::cli::cmd_reduce(f_reduce.resolve());
        if (s_curve->parsed()) return clusterprep::cli::cmd_curve(f_curve.resolve());
        if (s_table->parsed()) return clusterprep::cli::cmd_table(f_table.resolve());
        if (s_analytic->parsed()) return clusterprep::cli::cmd_analytic(f_analytic.resolve());
        if (s_pulses->parsed()) return clusterprep::cli::cmd_pulses(f_pulses.resolve());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
