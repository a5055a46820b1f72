"""Time-optimal preparation of graph-state entanglement on Ising networks.

Thin wrapper over the compiled core: coupling graphs, invariant-subspace
reduction, piecewise-constant pulse optimization, and the closed-form
three-qubit solution.
"""

from ._core import (
    AnalyticSolution,
    ControlProblem,
    ControlSetting,
    CouplingGraph,
    GrapeConfig,
    MinimalTimeResult,
    OptimizationFailure,
    OptimizationResult,
    OrthogonalAxis,
    ParseError,
    PhysicalProblem,
    PulseSequence,
    ReducedProblem,
    ReductionError,
    RotationAxes,
    TrotterComparison,
    as_control_problem,
    bloch_vector,
    build_problem,
    cluster_state,
    complete_graph,
    cycle_graph,
    cyclic_shift_operator,
    drift_control_overlap,
    drift_diagonal,
    drift_hamiltonian,
    evolve,
    fidelity,
    fidelity_vs_time,
    global_control,
    gradient,
    grid_graph,
    initial_state,
    invariant_subspace,
    local_controls,
    minimal_time,
    optimal_angle,
    optimal_solution,
    optimize,
    orthogonal_axis,
    parse_graph,
    path_graph,
    pauli_on,
    persymmetry_operator,
    propagate,
    propagate_state,
    reduce_problem,
    reduced_k3,
    render,
    rotation_axes,
    transfer_time,
    trotter_segment_compare,
    verify_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
