#include "clusterprep/cli.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "clusterprep/analytic.hpp"
#include "clusterprep/errors.hpp"
#include "clusterprep/grape.hpp"
#include "clusterprep/graph.hpp"
#include "clusterprep/reduce.hpp"

namespace clusterprep::cli {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string control_name(ControlSetting s) {
    return s == ControlSetting::global ? "global" : "local";
}

std::string json_path(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const auto slash = csv_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

// config echo common to every CSV header
std::string header_block(const std::string& command, const RunConfig& cfg,
                         const std::string& graph_field) {
    std::ostringstream h;
    h << "# clusterprep " << command << "\n";
    if (!graph_field.empty()) h << "# graph: " << graph_field << "\n";
    h << "# control: " << control_name(cfg.control) << "\n"
      << "# coupling_J: " << fmt(cfg.coupling) << "\n"
      << "# slices: " << cfg.slices << "\n"
      << "# restarts: " << cfg.restarts << "\n"
      << "# seed: " << cfg.seed << "\n"
      << "# threshold: " << fmt(cfg.threshold) << "\n"
      << "# time_unit: 1/(2J)\n"
      << "# amplitude_unit: J\n";
    return h.str();
}

json config_json(const RunConfig& cfg) {
    return {{"graph", cfg.graph},          {"control", control_name(cfg.control)},
            {"coupling_J", cfg.coupling},  {"slices", cfg.slices},
            {"restarts", cfg.restarts},    {"seed", cfg.seed},
            {"threshold", cfg.threshold},  {"tmin_tol", cfg.tmin_tol},
            {"time_unit", "1/(2J)"},       {"amplitude_unit", "J"}};
}

json matrix_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (long long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long long j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

void matrix_csv(std::ostringstream& out, const std::string& label, const Eigen::MatrixXcd& m) {
    for (long long i = 0; i < m.rows(); ++i)
        for (long long j = 0; j < m.cols(); ++j)
            out << label << ',' << i << ',' << j << ',' << fmt(m(i, j).real()) << ','
                << fmt(m(i, j).imag()) << "\n";
}

void validate(const RunConfig& cfg) {
    if (cfg.coupling <= 0) throw std::invalid_argument("coupling must be positive");
    if (cfg.slices < 1) throw std::invalid_argument("slices must be positive");
    if (cfg.restarts < 1) throw std::invalid_argument("restarts must be positive");
    if (cfg.threshold <= 0 || cfg.threshold > 1)
        throw std::invalid_argument("threshold must be in (0, 1]");
    if (cfg.tmin_tol <= 0) throw std::invalid_argument("tmin-tol must be positive");
    for (double t : cfg.tgrid)
        if (t < 0) throw std::invalid_argument("times must be nonnegative");
}

GrapeConfig grape_config(const RunConfig& cfg) {
    GrapeConfig g;
    g.restarts = cfg.restarts;
    g.seed = cfg.seed;
    return g;
}

// reduced representation of the run's control problem (exact: the invariant
// subspace contains the whole reachable set)
ControlProblem reduced_control_problem(const RunConfig& cfg, const CouplingGraph& g) {
    return as_control_problem(reduce_problem(build_problem(g, cfg.control, cfg.coupling)));
}

// run fn(0..n-1) on a bounded pool; results keyed by index so assembly is
// deterministic regardless of scheduling
void run_indexed(int n, const std::function<void(int)>& fn) {
    const int workers =
        std::max(1, std::min({n, 8, static_cast<int>(std::thread::hardware_concurrency())}));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 1;
}

int computation_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

} // namespace

std::vector<double> parse_tgrid(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty time grid");
    auto parse_num = [](const std::string& s) {
        size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number in time grid: '" + s + "'");
        }
        if (pos != s.size()) throw std::invalid_argument("bad number in time grid: '" + s + "'");
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw std::invalid_argument("time range must be a:b:step");
        const double a = parse_num(parts[0]), b = parse_num(parts[1]), step = parse_num(parts[2]);
        if (step <= 0) throw std::invalid_argument("time range step must be positive");
        if (b < a) throw std::invalid_argument("time range must have b >= a");
        const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
        for (int k = 0; k < count; ++k) out.push_back(a + k * step);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in time grid");
        out.push_back(parse_num(item));
    }
    if (out.empty()) throw std::invalid_argument("empty time grid");
    return out;
}

CouplingGraph load_graph(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("no graph given");
    std::ifstream in(spec);
    if (in) {
        std::stringstream buf;
        buf << in.rdbuf();
        CouplingGraph g = parse_graph(buf.str());
        // keep a family token from the file, otherwise label the row by path
        if (g.name.empty() || g.name.rfind("edges(", 0) == 0) g.name = spec;
        return g;
    }
    return parse_graph(spec);
}

int cmd_reduce(const RunConfig& cfg) {
    CouplingGraph g;
    try {
        validate(cfg);
        g = load_graph(cfg.graph);
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    try {
        const PhysicalProblem prob = build_problem(g, cfg.control, cfg.coupling);
        const ReducedProblem red = reduce_problem(prob);
        const bool single = red.controls_r.size() == 1;
        const double overlap = single ? drift_control_overlap(red) : -1.0;

        std::cout << "graph " << g.name << ": d = " << red.dim;
        if (single) std::cout << ", overlap = " << fmt(overlap);
        std::cout << "\n";

        if (!cfg.out.empty()) {
            std::ostringstream csv;
            csv << header_block("reduce", cfg, g.name);
            csv << "# d: " << red.dim << "\n";
            if (single) csv << "# overlap: " << fmt(overlap) << "\n";
            csv << "matrix,row,col,re,im\n";
            matrix_csv(csv, "drift_r", red.drift_r);
            for (size_t j = 0; j < red.controls_r.size(); ++j)
                matrix_csv(csv, "control_r_" + std::to_string(j + 1), red.controls_r[j]);
            matrix_csv(csv, "initial_r", red.initial_r);
            matrix_csv(csv, "target_r", red.target_r);
            matrix_csv(csv, "basis", red.basis);
            write_file(cfg.out, csv.str());

            json out = {{"command", "reduce"},
                        {"config", config_json(cfg)},
                        {"graph", g.name},
                        {"d", red.dim},
                        {"drift_r", matrix_json(red.drift_r)},
                        {"initial_r", matrix_json(red.initial_r)},
                        {"target_r", matrix_json(red.target_r)},
                        {"basis", matrix_json(red.basis)}};
            if (single) out["overlap"] = overlap;
            json controls = json::array();
            for (const auto& c : red.controls_r) controls.push_back(matrix_json(c));
            out["controls_r"] = std::move(controls);
            write_file(json_path(cfg.out), out.dump(2) + "\n");
        }
        return 0;
    } catch (const reduction_error& e) {
        return computation_error(e.what());
    } catch (const std::exception& e) {
        return computation_error(e.what());
    }
}

int cmd_curve(const RunConfig& cfg) {
    CouplingGraph g;
    try {
        validate(cfg);
        if (cfg.tgrid.empty()) throw std::invalid_argument("curve needs a time grid (--tgrid)");
        if (cfg.out.empty()) throw std::invalid_argument("curve needs an output path (--out)");
        g = load_graph(cfg.graph);
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    try {
        const ControlProblem prob = reduced_control_problem(cfg, g);
        const GrapeConfig gcfg = grape_config(cfg);
        const double unit = 0.5 / cfg.coupling; // time units per 1/(2J)
        const int n = static_cast<int>(cfg.tgrid.size());
        std::vector<double> fid(n, 0.0);
        std::vector<std::string> errors(n);
        run_indexed(n, [&](int i) {
            try {
                fid[i] = optimize(prob, cfg.tgrid[i] * unit, cfg.slices, gcfg).fidelity;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
        for (const auto& e : errors)
            if (!e.empty()) return computation_error(e);

        double best = 0.0;
        for (double f : fid) best = std::max(best, f);
        std::ostringstream csv;
        csv << header_block("curve", cfg, g.name);
        csv << "# best_fidelity: " << fmt(best) << "\n";
        csv << "T,best_fidelity\n";
        for (int i = 0; i < n; ++i) csv << fmt(cfg.tgrid[i]) << ',' << fmt(fid[i]) << "\n";
        write_file(cfg.out, csv.str());

        json rows = json::array();
        for (int i = 0; i < n; ++i) rows.push_back({{"T", cfg.tgrid[i]}, {"fidelity", fid[i]}});
        json out = {{"command", "curve"},
                    {"config", config_json(cfg)},
                    {"graph", g.name},
                    {"best_fidelity", best},
                    {"points", std::move(rows)}};
        write_file(json_path(cfg.out), out.dump(2) + "\n");

        for (int i = 0; i < n; ++i)
            std::cout << "T = " << fmt(cfg.tgrid[i]) << "  F = " << fmt(fid[i]) << "\n";
        return 0;
    } catch (const std::exception& e) {
        return computation_error(e.what());
    }
}

int cmd_table(const RunConfig& cfg) {
    std::vector<std::string> names = cfg.graphs;
    try {
        validate(cfg);
        if (names.empty()) throw std::invalid_argument("table needs at least one graph name");
        if (cfg.out.empty()) throw std::invalid_argument("table needs an output path (--out)");
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    const int n = static_cast<int>(names.size());
    std::vector<TableRow> rows(n);
    run_indexed(n, [&](int i) {
        TableRow& row = rows[i];
        row.graph = names[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const CouplingGraph g = load_graph(names[i]);
            row.graph = g.name;
            const ReducedProblem red = reduce_problem(build_problem(g, cfg.control, cfg.coupling));
            row.d = red.dim;
            if (red.controls_r.size() == 1) row.overlap = drift_control_overlap(red);
            const auto res = minimal_time(as_control_problem(red), cfg.threshold, cfg.tmin_tol,
                                          cfg.slices, grape_config(cfg), cfg.coupling);
            row.t_min = res.t_min;
            row.fidelity = res.fidelity;
        } catch (const optimization_failure& e) {
            row.status = std::string("failed: ") + e.what();
            row.fidelity = e.achieved;
        } catch (const std::exception& e) {
            row.status = std::string("failed: ") + e.what();
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });

    bool all_ok = true;
    std::ostringstream csv;
    csv << header_block("table", cfg, "");
    csv << "# graphs: ";
    for (int i = 0; i < n; ++i) csv << (i ? "," : "") << names[i];
    csv << "\n# tmin_tol: " << fmt(cfg.tmin_tol) << "\n";
    csv << "# wall_seconds is machine dependent and outside the determinism contract\n";
    csv << "graph,d,overlap,t_min,fidelity,status,wall_seconds\n";
    json jrows = json::array();
    for (const auto& row : rows) {
        const bool ok = row.status == "ok";
        all_ok = all_ok && ok;
        std::string quoted_status = row.status;
        for (auto& c : quoted_status)
            if (c == ',') c = ';';
        csv << row.graph << ',' << (row.d > 0 ? std::to_string(row.d) : "") << ','
            << (row.overlap >= 0 ? fmt(row.overlap) : "") << ','
            << (ok ? fmt(row.t_min) : "") << ',' << fmt(row.fidelity) << ',' << quoted_status
            << ',' << fmt(row.wall_seconds) << "\n";
        json jr = {{"graph", row.graph}, {"status", row.status},
                   {"fidelity", row.fidelity}, {"wall_seconds", row.wall_seconds}};
        if (row.d > 0) jr["d"] = row.d;
        if (row.overlap >= 0) jr["overlap"] = row.overlap;
        if (ok) jr["t_min"] = row.t_min;
        jrows.push_back(std::move(jr));
        std::cout << row.graph << ": ";
        if (row.d > 0) std::cout << "d = " << row.d << "  ";
        if (row.overlap >= 0) std::cout << "overlap = " << fmt(row.overlap) << "  ";
        if (ok)
            std::cout << "t_min = " << fmt(row.t_min) << "  F = " << fmt(row.fidelity);
        else
            std::cout << row.status;
        std::cout << "\n";
    }
    try {
        write_file(cfg.out, csv.str());
        json out = {{"command", "table"}, {"config", config_json(cfg)}, {"rows", std::move(jrows)}};
        write_file(json_path(cfg.out), out.dump(2) + "\n");
    } catch (const std::exception& e) {
        return computation_error(e.what());
    }
    return all_ok ? 0 : 2;
}

int cmd_analytic(const RunConfig& cfg) {
    try {
        const double theta_star = optimal_angle();
        const AnalyticSolution sol = optimal_solution();
        const double fidelity = verify_solution(sol);
        const double t2j = transfer_time(M_PI / 2.0) * 2.0; // units of 1/(2J)

        std::cout << "optimal angle = " << fmt(theta_star) << " rad\n"
                  << "optimal amplitude = " << fmt(sol.amplitude) << " J\n"
                  << "hard pulse angle = " << fmt(sol.hard_pulse_angle) << " rad\n"
                  << "duration = " << fmt(t2j) << " (1/(2J))\n"
                  << "verified fidelity = " << fmt(fidelity) << "\n";

        if (!cfg.out.empty()) {
            // theta sweep of the segment duration
            const int sweep_n = 200;
            std::vector<std::pair<double, double>> sweep;
            for (int i = 0; i <= sweep_n; ++i) {
                const double th = M_PI / 3.0 + (M_PI / 3.0) * i / sweep_n;
                sweep.emplace_back(th, transfer_time(th) * 2.0);
            }
            // Bloch trajectory of the optimal path: constant segment about the
            // orthogonal axis, then the hard kick about the control axis
            const ReducedProblem k3 = reduced_k3();
            const auto axes = rotation_axes(k3);
            const Eigen::Vector3d a = axes.control.normalized();
            const Eigen::Vector3d r = axes.drift + sol.amplitude * axes.control;
            const Eigen::Vector3d n = r.normalized();
            auto rotate = [](const Eigen::Vector3d& s, const Eigen::Vector3d& ax, double ang) {
                const double c = std::cos(ang), si = std::sin(ang);
                return Eigen::Vector3d(s * c + ax.cross(s) * si + ax * ax.dot(s) * (1.0 - c));
            };
            Eigen::Vector3d s0(std::sqrt(3.0) / 2.0, 0.0, 0.5);
            const int traj_n = 120;
            std::vector<std::array<double, 4>> traj;
            for (int i = 0; i <= traj_n; ++i) {
                const double t = sol.duration * i / traj_n;
                const Eigen::Vector3d s = rotate(s0, n, r.norm() * t);
                traj.push_back({t * 2.0, s.x(), s.y(), s.z()});
            }
            const Eigen::Vector3d send = rotate(traj.empty() ? s0 : Eigen::Vector3d(traj.back()[1],
                                                traj.back()[2], traj.back()[3]),
                                                a, 2.0 * sol.hard_pulse_angle);
            traj.push_back({sol.duration * 2.0, send.x(), send.y(), send.z()});

            std::ostringstream csv;
            csv << "# clusterprep analytic\n"
                << "# time_unit: 1/(2J)\n"
                << "# amplitude_unit: J\n"
                << "# optimal_angle_rad: " << fmt(theta_star) << "\n"
                << "# optimal_amplitude_J: " << fmt(sol.amplitude) << "\n"
                << "# hard_pulse_angle_rad: " << fmt(sol.hard_pulse_angle) << "\n"
                << "# duration: " << fmt(t2j) << "\n"
                << "# verified_fidelity: " << fmt(fidelity) << "\n"
                << "section,x1,x2,x3,x4\n";
            for (const auto& [th, tt] : sweep)
                csv << "sweep," << fmt(th) << ',' << fmt(tt) << ",,\n";
            for (const auto& p : traj)
                csv << "trajectory," << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
                    << fmt(p[3]) << "\n";
            write_file(cfg.out, csv.str());

            json jsweep = json::array();
            for (const auto& [th, tt] : sweep) jsweep.push_back({{"theta", th}, {"T", tt}});
            json jtraj = json::array();
            for (const auto& p : traj)
                jtraj.push_back({{"t", p[0]}, {"sx", p[1]}, {"sy", p[2]}, {"sz", p[3]}});
            json out = {{"command", "analytic"},
                        {"optimal_angle_rad", theta_star},
                        {"optimal_amplitude_J", sol.amplitude},
                        {"hard_pulse_angle_rad", sol.hard_pulse_angle},
                        {"duration", t2j},
                        {"verified_fidelity", fidelity},
                        {"time_unit", "1/(2J)"},
                        {"sweep", std::move(jsweep)},
                        {"trajectory", std::move(jtraj)}};
            write_file(json_path(cfg.out), out.dump(2) + "\n");
        }
        return 0;
    } catch (const std::exception& e) {
        return computation_error(e.what());
    }
}

int cmd_pulses(const RunConfig& cfg) {
    CouplingGraph g;
    try {
        validate(cfg);
        if (cfg.tgrid.size() != 1)
            throw std::invalid_argument("pulses needs exactly one time (--tgrid T)");
        if (cfg.out.empty()) throw std::invalid_argument("pulses needs an output path (--out)");
        g = load_graph(cfg.graph);
    } catch (const std::exception& e) {
        return usage_error(e.what());
    }
    try {
        const ControlProblem prob = reduced_control_problem(cfg, g);
        const double t2j = cfg.tgrid[0];
        const double unit = 0.5 / cfg.coupling;
        const OptimizationResult res =
            optimize(prob, t2j * unit, cfg.slices, grape_config(cfg));
        const int nsl = res.pulse.slices();
        const int m = res.pulse.n_controls();
        const double slice_2j = t2j / nsl;
        const bool below = res.fidelity < cfg.threshold;

        std::ostringstream csv;
        csv << header_block("pulses", cfg, g.name);
        csv << "# T: " << fmt(t2j) << "\n";
        csv << "# achieved_fidelity: " << fmt(res.fidelity) << "\n";
        if (below)
            csv << "# warning: fidelity below threshold " << fmt(cfg.threshold) << "\n";
        csv << "slice_start,slice_duration";
        for (int j = 1; j <= m; ++j) csv << ",u_" << j;
        csv << "\n";
        for (int k = 0; k < nsl; ++k) {
            csv << fmt(k * slice_2j) << ',' << fmt(slice_2j);
            for (int j = 0; j < m; ++j) csv << ',' << fmt(res.pulse.amplitudes(k, j));
            csv << "\n";
        }
        write_file(cfg.out, csv.str());

        json amps = json::array();
        for (int k = 0; k < nsl; ++k) {
            json row = json::array();
            for (int j = 0; j < m; ++j) row.push_back(res.pulse.amplitudes(k, j));
            amps.push_back(std::move(row));
        }
        json out = {{"command", "pulses"},     {"config", config_json(cfg)},
                    {"graph", g.name},         {"T", t2j},
                    {"achieved_fidelity", res.fidelity}, {"converged", res.converged},
                    {"amplitudes", std::move(amps)}};
        if (below) out["warning"] = "fidelity below threshold";
        write_file(json_path(cfg.out), out.dump(2) + "\n");

        std::cout << "graph " << g.name << ": T = " << fmt(t2j) << "  F = " << fmt(res.fidelity)
                  << (below ? "  (below threshold)" : "") << "\n";
        return 0;
    } catch (const std::exception& e) {
        return computation_error(e.what());
    }
}

} // namespace clusterprep::cli
