#pragma once

#include <Eigen/Dense>
#include <vector>

#include "clusterprep/graph.hpp"

namespace clusterprep {

using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Computational basis convention: qubit 0 is the most significant bit, so the
// basis index of |b_1 b_2 ... b_n> is sum_q b_q * 2^(n-1-q) and single-qubit
// operators embed as kron(I, ..., sigma, ..., I) with sigma at slot `qubit`.

Operator pauli_on(int n, int qubit, char axis); // axis one of 'x','y','z'

// Ising drift for the coupling graph, J > 0.
// include_local=false (default): (pi J/2) * sum_edges sigma_z^a sigma_z^b  -- the
// form every optimization target below uses.
// include_local=true: (pi J/2) * sum_edges (1 + sigma_z^a)(1 - sigma_z^b) with
// a < b, which adds the single-qubit terms and a constant.
Operator drift_hamiltonian(const CouplingGraph& g, double coupling, bool include_local = false);

// Diagonal of drift_hamiltonian (it is diagonal in the computational basis).
Eigen::VectorXd drift_diagonal(const CouplingGraph& g, double coupling, bool include_local = false);

// 2n operators ordered [x_0/2, y_0/2, x_1/2, y_1/2, ...].
std::vector<Operator> local_controls(int n);

// (1/2) sum_q sigma_x^q
Operator global_control(int n);

// |I_n> = |+>^n, the uniform superposition.
StateVector initial_state(int n);

// |T_n> = exp(-i H_d /(2J)) |I_n> with the ZZ-only drift; computed as a phase
// per basis state.
StateVector cluster_state(const CouplingGraph& g, double coupling);

// exp(-i h t) |psi> via Hermitian eigendecomposition. Requires h Hermitian
// (entrywise to 1e-12) and t >= 0; result renormalized.
StateVector evolve(const StateVector& psi, const Operator& h, double t);

// |<a|b>|
double fidelity(const StateVector& a, const StateVector& b);

// (<sx>, <sy>, <sz>) of a normalized two-level state.
Eigen::Vector3d bloch_vector(const StateVector& psi);

enum class ControlSetting { local, global };

struct PhysicalProblem {
    Operator drift;
    std::vector<Operator> controls;
    StateVector initial;
    StateVector target;
    double coupling = 1.0;
};

// State-transfer problem |I_n> -> |T_n> with ZZ-only drift and the requested
// control scheme.
PhysicalProblem build_problem(const CouplingGraph& g, ControlSetting setting, double coupling = 1.0);

} // namespace clusterprep
