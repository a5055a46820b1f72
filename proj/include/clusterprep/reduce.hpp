#pragma once

#include <Eigen/Dense>
#include <vector>

#include "clusterprep/qcore.hpp"

namespace clusterprep {

// Problem projected onto the smallest invariant subspace containing the
// initial state. basis is a 2^n x d isometry V; the reduced operators are
// V^dag H V and reduced states V^dag psi, so propagating reduced quantities
// is exactly equivalent to the full problem.
struct ReducedProblem {
    int dim = 0;
    Operator drift_r;
    std::vector<Operator> controls_r;
    StateVector initial_r;
    StateVector target_r;
    Eigen::MatrixXcd basis;
};

// Permutation operator of the cyclic qubit shift: bit string (b_1...b_n) ->
// (b_n b_1 ... b_{n-1}).
Operator cyclic_shift_operator(int n);

// Global bit flip X^(x)n (the anti-diagonal permutation).
Operator persymmetry_operator(int n);

// Orthonormal basis (columns) of the smallest subspace containing `seed` that
// is invariant under every operator in `ops`. Grown by repeated application
// and Gram-Schmidt with re-orthogonalization; new directions below
// tol * max(1, |op*v|) are discarded.
Eigen::MatrixXcd invariant_subspace(const StateVector& seed, const std::vector<Operator>& ops,
                                    double tol = 1e-10);
Eigen::MatrixXcd invariant_subspace(const PhysicalProblem& problem, double tol = 1e-10);

// Projects the problem onto the invariant subspace grown from the initial
// state. The basis is canonicalized: columns are drift eigenvectors ordered by
// descending overlap with the initial state (ties by ascending eigenvalue),
// each phased so its largest-magnitude entry is real positive; target_r gets a
// real-positive global phase the same way. Throws reduction_error if the
// target is not contained in the subspace.
ReducedProblem reduce_problem(const PhysicalProblem& problem, double tol = 1e-10);

// |tr(drift_r^dag control_r)| / (|drift_r|_F |control_r|_F); requires exactly
// one control.
double drift_control_overlap(const ReducedProblem& rp);

} // namespace clusterprep
