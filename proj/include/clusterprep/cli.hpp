#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterprep/qcore.hpp"

namespace clusterprep::cli {

// One run's worth of settings. Precedence: command-line flags override config
// file values override these defaults.
struct RunConfig {
    std::string graph;                // family token, edge-list path, or edge-list text
    ControlSetting control = ControlSetting::global;
    double coupling = 1.0;            // J
    int slices = 100;                 // pulse slices N
    int restarts = 20;
    std::uint64_t seed = 0;
    double threshold = 0.999;         // fidelity threshold for minimal times
    double tmin_tol = 0.005;          // bisection tolerance, units 1/(2J)
    std::vector<double> tgrid;        // curve grid / single pulse time, units 1/(2J)
    std::string out;                  // CSV path; a .json summary is written alongside
    std::vector<std::string> graphs;  // table rows
};

// Row of the reproduction table (times in 1/(2J); wall_seconds is machine
// dependent and excluded from the determinism contract).
struct TableRow {
    std::string graph;
    int d = 0;
    double overlap = -1.0; // -1 when undefined (more than one control)
    double t_min = 0.0;
    double fidelity = 0.0;
    std::string status = "ok";
    double wall_seconds = 0.0;
};

// "a:b:step" (inclusive of b up to rounding) or a comma-separated list or a
// single value; throws std::invalid_argument on malformed input.
std::vector<double> parse_tgrid(const std::string& text);

// Resolve a --graph value: if it names a readable file, parse its contents as
// an edge list, otherwise parse the value itself (token or inline edge list).
CouplingGraph load_graph(const std::string& spec);

// Subcommand entry points; each returns a process exit code
// (0 success, 1 usage error, 2 computation failure).
int cmd_reduce(const RunConfig& cfg);
int cmd_curve(const RunConfig& cfg);
int cmd_table(const RunConfig& cfg);
int cmd_analytic(const RunConfig& cfg);
int cmd_pulses(const RunConfig& cfg);

} // namespace clusterprep::cli
