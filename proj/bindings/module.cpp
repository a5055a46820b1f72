#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clusterprep/analytic.hpp"
#include "clusterprep/errors.hpp"
#include "clusterprep/graph.hpp"
#include "clusterprep/grape.hpp"
#include "clusterprep/qcore.hpp"
#include "clusterprep/reduce.hpp"

namespace py = pybind11;
using namespace clusterprep;

PYBIND11_MODULE(_core, m) {
    m.doc() = "cluster-state preparation: graphs, reduction, pulse optimization";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<reduction_error>(m, "ReductionError", PyExc_RuntimeError);
    py::register_exception<optimization_failure>(m, "OptimizationFailure", PyExc_RuntimeError);

    // graphs
    py::class_<CouplingGraph>(m, "CouplingGraph")
        .def(py::init<>())
        .def_readwrite("n_qubits", &CouplingGraph::n_qubits)
        .def_readwrite("edges", &CouplingGraph::edges)
        .def_readwrite("name", &CouplingGraph::name)
        .def("__eq__", [](const CouplingGraph& a, const CouplingGraph& b) { return a == b; })
        .def("__repr__", [](const CouplingGraph& g) {
            return "CouplingGraph(" + (g.name.empty() ? std::to_string(g.n_qubits) + " qubits"
                                                      : g.name) + ")";
        });
    m.def("complete_graph", &complete_graph, py::arg("n"));
    m.def("cycle_graph", &cycle_graph, py::arg("n"));
    m.def("path_graph", &path_graph, py::arg("n"));
    m.def("grid_graph", &grid_graph, py::arg("rows"), py::arg("cols"));
    m.def("parse_graph", &parse_graph, py::arg("text"),
          "Family token (K5, C4, L3, G2x3) or an n=<count> edge-list text");
    m.def("render", &render, py::arg("graph"));

    // states and Hamiltonians
    py::enum_<ControlSetting>(m, "ControlSetting")
        .value("local", ControlSetting::local)
        .value("global_", ControlSetting::global);
    py::class_<PhysicalProblem>(m, "PhysicalProblem")
        .def_readwrite("drift", &PhysicalProblem::drift)
        .def_readwrite("controls", &PhysicalProblem::controls)
        .def_readwrite("initial", &PhysicalProblem::initial)
        .def_readwrite("target", &PhysicalProblem::target)
        .def_readwrite("coupling", &PhysicalProblem::coupling);
    m.def("pauli_on", &pauli_on, py::arg("n"), py::arg("qubit"), py::arg("axis"));
    m.def("drift_hamiltonian", &drift_hamiltonian, py::arg("graph"), py::arg("coupling"),
          py::arg("include_local") = false);
    m.def("drift_diagonal", &drift_diagonal, py::arg("graph"), py::arg("coupling"),
          py::arg("include_local") = false);
    m.def("local_controls", &local_controls, py::arg("n"));
    m.def("global_control", &global_control, py::arg("n"));
    m.def("initial_state", &initial_state, py::arg("n"));
    m.def("cluster_state", &cluster_state, py::arg("graph"), py::arg("coupling") = 1.0);
    m.def("evolve", &evolve, py::arg("psi"), py::arg("h"), py::arg("t"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("bloch_vector", &bloch_vector, py::arg("psi"));
    m.def("build_problem", &build_problem, py::arg("graph"), py::arg("setting"),
          py::arg("coupling") = 1.0);

    // invariant-subspace reduction
    py::class_<ReducedProblem>(m, "ReducedProblem")
        .def_readwrite("dim", &ReducedProblem::dim)
        .def_readwrite("drift_r", &ReducedProblem::drift_r)
        .def_readwrite("controls_r", &ReducedProblem::controls_r)
        .def_readwrite("initial_r", &ReducedProblem::initial_r)
        .def_readwrite("target_r", &ReducedProblem::target_r)
        .def_readwrite("basis", &ReducedProblem::basis);
    m.def("cyclic_shift_operator", &cyclic_shift_operator, py::arg("n"));
    m.def("persymmetry_operator", &persymmetry_operator, py::arg("n"));
    m.def("invariant_subspace",
          py::overload_cast<const StateVector&, const std::vector<Operator>&, double>(
              &invariant_subspace),
          py::arg("seed"), py::arg("ops"), py::arg("tol") = 1e-10);
    m.def("invariant_subspace",
          py::overload_cast<const PhysicalProblem&, double>(&invariant_subspace),
          py::arg("problem"), py::arg("tol") = 1e-10);
    m.def("reduce_problem", &reduce_problem, py::arg("problem"), py::arg("tol") = 1e-10);
    m.def("drift_control_overlap", &drift_control_overlap, py::arg("reduced"));

    // pulse optimization
    py::class_<ControlProblem>(m, "ControlProblem")
        .def(py::init<>())
        .def_readwrite("drift", &ControlProblem::drift)
        .def_readwrite("controls", &ControlProblem::controls)
        .def_readwrite("initial", &ControlProblem::initial)
        .def_readwrite("target", &ControlProblem::target);
    m.def("as_control_problem",
          py::overload_cast<const PhysicalProblem&>(&as_control_problem), py::arg("problem"));
    m.def("as_control_problem",
          py::overload_cast<const ReducedProblem&>(&as_control_problem), py::arg("reduced"));
    py::class_<PulseSequence>(m, "PulseSequence")
        .def(py::init<>())
        .def(py::init([](double duration, const Eigen::MatrixXd& amplitudes) {
                 PulseSequence p;
                 p.duration = duration;
                 p.amplitudes = amplitudes;
                 return p;
             }),
             py::arg("duration"), py::arg("amplitudes"))
        .def_static("zero", &PulseSequence::zero, py::arg("duration"), py::arg("slices"),
                    py::arg("n_controls"))
        .def_readwrite("duration", &PulseSequence::duration)
        .def_readwrite("amplitudes", &PulseSequence::amplitudes)
        .def_property_readonly("slices", &PulseSequence::slices)
        .def_property_readonly("n_controls", &PulseSequence::n_controls);
    py::class_<GrapeConfig>(m, "GrapeConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &GrapeConfig::max_iterations)
        .def_readwrite("step_init", &GrapeConfig::step_init)
        .def_readwrite("shrink", &GrapeConfig::shrink)
        .def_readwrite("convergence_tol", &GrapeConfig::convergence_tol)
        .def_readwrite("restarts", &GrapeConfig::restarts)
        .def_readwrite("seed", &GrapeConfig::seed)
        .def_readwrite("init_scale", &GrapeConfig::init_scale)
        .def_readwrite("restart_scale_cycle", &GrapeConfig::restart_scale_cycle)
        .def_readwrite("stop_fidelity", &GrapeConfig::stop_fidelity);
    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("pulse", &OptimizationResult::pulse)
        .def_readonly("fidelity", &OptimizationResult::fidelity)
        .def_readonly("trace", &OptimizationResult::trace)
        .def_readonly("seed", &OptimizationResult::seed)
        .def_readonly("converged", &OptimizationResult::converged);
    py::class_<MinimalTimeResult>(m, "MinimalTimeResult")
        .def_readonly("t_min", &MinimalTimeResult::t_min)
        .def_readonly("fidelity", &MinimalTimeResult::fidelity)
        .def_readonly("pulse", &MinimalTimeResult::pulse);
    m.def("propagate_state", &propagate_state, py::arg("pulse"), py::arg("problem"));
    m.def("propagate", &propagate, py::arg("pulse"), py::arg("problem"));
    m.def("gradient", &gradient, py::arg("pulse"), py::arg("problem"));
    m.def("optimize", &optimize, py::arg("problem"), py::arg("duration"), py::arg("slices"),
          py::arg("config") = GrapeConfig{}, py::arg("warm_start") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
    m.def("fidelity_vs_time", &fidelity_vs_time, py::arg("problem"), py::arg("t_grid"),
          py::arg("slices"), py::arg("config") = GrapeConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("minimal_time", &minimal_time, py::arg("problem"), py::arg("threshold"),
          py::arg("time_tol"), py::arg("slices"), py::arg("config") = GrapeConfig{},
          py::arg("coupling") = 1.0, py::call_guard<py::gil_scoped_release>());

    // closed-form three-qubit treatment
    py::class_<RotationAxes>(m, "RotationAxes")
        .def_readonly("drift", &RotationAxes::drift)
        .def_readonly("control", &RotationAxes::control);
    py::class_<AnalyticSolution>(m, "AnalyticSolution")
        .def(py::init<>())
        .def(py::init([](double amplitude, double hard_pulse_angle, double duration) {
                 return AnalyticSolution{amplitude, hard_pulse_angle, duration};
             }),
             py::arg("amplitude"), py::arg("hard_pulse_angle"), py::arg("duration"))
        .def_readwrite("amplitude", &AnalyticSolution::amplitude)
        .def_readwrite("hard_pulse_angle", &AnalyticSolution::hard_pulse_angle)
        .def_readwrite("duration", &AnalyticSolution::duration);
    py::class_<OrthogonalAxis>(m, "OrthogonalAxis")
        .def_readonly("op", &OrthogonalAxis::op)
        .def_readonly("axis", &OrthogonalAxis::axis);
    py::class_<TrotterComparison>(m, "TrotterComparison")
        .def_readonly("optimal", &TrotterComparison::optimal)
        .def_readonly("generic", &TrotterComparison::generic);
    m.def("reduced_k3", &reduced_k3);
    m.def("rotation_axes", &rotation_axes, py::arg("reduced"));
    m.def("transfer_time", &transfer_time, py::arg("theta"));
    m.def("optimal_angle", &optimal_angle, py::arg("grid_resolution") = 2001);
    m.def("optimal_solution", &optimal_solution);
    m.def("orthogonal_axis", &orthogonal_axis);
    m.def("verify_solution", &verify_solution, py::arg("solution"));
    m.def("trotter_segment_compare", &trotter_segment_compare, py::arg("v"), py::arg("delta"));
}
