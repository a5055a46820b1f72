#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "clusterprep/qcore.hpp"
#include "clusterprep/reduce.hpp"

namespace clusterprep {

// Common view of a state-transfer problem; both the full and the reduced
// representations convert to this.
struct ControlProblem {
    Operator drift;
    std::vector<Operator> controls;
    StateVector initial;
    StateVector target;
};

ControlProblem as_control_problem(const PhysicalProblem& p);
ControlProblem as_control_problem(const ReducedProblem& p);

// Piecewise-constant pulse: `slices()` uniform slices of total length
// `duration` (time units, J = 1); amplitudes(k, j) is the amplitude of
// control j during slice k.
struct PulseSequence {
    double duration = 0.0;
    Eigen::MatrixXd amplitudes;

    int slices() const { return static_cast<int>(amplitudes.rows()); }
    int n_controls() const { return static_cast<int>(amplitudes.cols()); }

    static PulseSequence zero(double duration, int slices, int n_controls);
};

struct GrapeConfig {
    int max_iterations = 3000;
    double step_init = 0.2;        // initial line-search step
    double shrink = 0.5;           // backtracking shrink factor
    double convergence_tol = 1e-10; // stop when a fidelity gain falls below this
    int restarts = 20;             // restart 0 is the zero pulse, the rest random
    std::uint64_t seed = 0;
    double init_scale = M_PI;      // random amplitudes uniform in [-1,1]*init_scale*J
    // Successive random restarts cycle through these multipliers of init_scale,
    // so some restarts explore the strong-driving regime (amplitudes are
    // unconstrained and short-time solutions often need large kicks).
    std::vector<double> restart_scale_cycle = {1.0, 1.0, 8.0, 64.0};
    double stop_fidelity = 1.0 - 1e-9; // stop early once reached
};

struct OptimizationResult {
    PulseSequence pulse;
    double fidelity = 0.0;
    std::vector<double> trace; // accepted fidelity per iteration of the reported restart
    std::uint64_t seed = 0;
    bool converged = false;    // reached stop_fidelity or the line search stalled
};

// Final state U_N ... U_1 |initial>, U_k = exp(-i dt (H_d + sum_j u_jk H_j)).
StateVector propagate_state(const PulseSequence& pulse, const ControlProblem& problem);
// |<target| U |initial>|
double propagate(const PulseSequence& pulse, const ControlProblem& problem);

// Exact d fidelity / d amplitudes(k, j), via the spectral derivative of each
// slice exponential (divided differences over eigenvalue pairs).
Eigen::MatrixXd gradient(const PulseSequence& pulse, const ControlProblem& problem);

// Multi-restart gradient ascent with backtracking line search. Deterministic
// for a fixed config: restart r draws from an RNG stream seeded by (seed, r),
// and the reported result is the first restart reaching stop_fidelity, else
// the best over all restarts (ties to the lower restart index).
OptimizationResult optimize(const ControlProblem& problem, double duration, int slices,
                            const GrapeConfig& cfg,
                            const std::optional<PulseSequence>& warm_start = std::nullopt);

// Best fidelity per grid time (time units); independent runs per point.
std::vector<std::pair<double, double>> fidelity_vs_time(const ControlProblem& problem,
                                                        const std::vector<double>& t_grid,
                                                        int slices, const GrapeConfig& cfg);

struct MinimalTimeResult {
    double t_min = 0.0;   // units of 1/(2J)
    double fidelity = 0.0; // achieved at t_min
    PulseSequence pulse;
};

// Smallest T with best fidelity >= threshold, found by bisection on
// [0, 1]*1/(2J) to within time_tol (also in 1/(2J) units; one 1/(2J) is
// 0.5/coupling time units). Each probe is warm-started from the nearest
// already-solved T. Throws optimization_failure if even T = 1/(2J) stays
// below threshold.
MinimalTimeResult minimal_time(const ControlProblem& problem, double threshold, double time_tol,
                               int slices, const GrapeConfig& cfg, double coupling = 1.0);

} // namespace clusterprep
