#pragma once

#include <Eigen/Dense>

#include "clusterprep/reduce.hpp"

namespace clusterprep {

// Closed-form treatment of the three-qubit complete-graph problem in its
// two-dimensional reduced space, where states live on the Bloch sphere and
// the time-optimal pulse is one constant-amplitude segment plus a final
// instantaneous rotation about the control axis.

// The reduced K3 problem built directly from its known 2x2 matrices
// (drift (pi J/2) diag(-1, 3), control (1/2)[[2,sqrt3],[sqrt3,0]], initial
// (sqrt3/2, 1/2), target (sqrt3/2, -1/2)); J = 1. Identical to
// reduce_problem(build_problem(complete_graph(3), global)).
ReducedProblem reduced_k3();

struct RotationAxes {
    Eigen::Vector3d drift;   // (0, 0, -2 pi J)
    Eigen::Vector3d control; // (sqrt3, 0, 1)
};

// Bloch rotation axes of a d=2 reduced problem: H = alpha*1 + r.sigma/2.
RotationAxes rotation_axes(const ReducedProblem& rp);

// Duration (time units) of the constant-amplitude segment whose rotation axis
// makes angle theta with the control axis:
//   T(theta) = (2 / (sqrt3 pi J)) sin(theta) asin(sqrt3 / (2 sin theta)),
// defined for theta in [pi/3, 2pi/3]; domain_error outside.
double transfer_time(double theta);

// argmin of transfer_time over its domain: coarse scan at grid_resolution
// points (>= 3), then golden-section refinement. Returns pi/2.
double optimal_angle(int grid_resolution = 2001);

struct AnalyticSolution {
    double amplitude = 0.0;        // constant control amplitude u
    double hard_pulse_angle = 0.0; // phi of the final kick about the control axis
    double duration = 0.0;         // segment length, time units
};

// (u, phi, T) = (pi J/2, -pi/4, 2/(3 sqrt3 J)).
AnalyticSolution optimal_solution();

struct OrthogonalAxis {
    Eigen::Matrix2cd op;      // (sqrt3 pi J/2) (-sqrt3 I_z + I_x)
    Eigen::Vector3d axis;     // its Bloch axis, orthogonal to the control axis
};

// Generator of the optimal segment: drift + (pi/2) control up to a multiple
// of the identity; its axis is perpendicular to the control axis.
OrthogonalAxis orthogonal_axis();

// Simulates the solution (constant segment, then a rotation by
// 2*hard_pulse_angle about the normalized control axis) on reduced_k3() and
// returns the fidelity against the target.
double verify_solution(const AnalyticSolution& sol);

struct TrotterComparison {
    double optimal = 0.0; // rotation angle about the orthogonal axis, pure rotation
    double generic = 0.0; // angle consumed by the segment with control admixture v
};

// Transports a Bloch point between two nearby control-axis orbit circles
// (a) purely about the orthogonal axis and (b) with an extra v * control
// admixture, and returns the orthogonal-axis angle each spends. The pure
// rotation never needs more angle: optimal <= generic, equal at v = 0.
// Requires 0 < delta <= 0.01 time units.
TrotterComparison trotter_segment_compare(double v, double delta);

} // namespace clusterprep
