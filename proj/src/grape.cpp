#include "clusterprep/grape.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>

#include "clusterprep/errors.hpp"

namespace clusterprep {

using namespace std::complex_literals;

ControlProblem as_control_problem(const PhysicalProblem& p) {
    return {p.drift, p.controls, p.initial, p.target};
}

ControlProblem as_control_problem(const ReducedProblem& p) {
    return {p.drift_r, p.controls_r, p.initial_r, p.target_r};
}

PulseSequence PulseSequence::zero(double duration, int slices, int n_controls) {
    if (duration < 0 || slices < 1 || n_controls < 1)
        throw std::invalid_argument("PulseSequence::zero: bad shape");
    return {duration, Eigen::MatrixXd::Zero(slices, n_controls)};
}

namespace {

void check_shapes(const PulseSequence& pulse, const ControlProblem& problem) {
    if (pulse.slices() < 1) throw std::invalid_argument("pulse has no slices");
    if (pulse.duration < 0) throw std::invalid_argument("pulse duration must be >= 0");
    if (pulse.n_controls() != static_cast<int>(problem.controls.size()))
        throw std::invalid_argument("pulse/control count mismatch");
    const auto d = problem.drift.rows();
    if (problem.drift.cols() != d || problem.initial.size() != d || problem.target.size() != d)
        throw std::invalid_argument("problem dimensions inconsistent");
    for (const auto& c : problem.controls)
        if (c.rows() != d || c.cols() != d) throw std::invalid_argument("control dimension mismatch");
}

struct SliceEig {
    Eigen::VectorXd val;
    Eigen::MatrixXcd vec;
};

void decompose(const PulseSequence& pulse, const ControlProblem& problem,
               std::vector<SliceEig>& out) {
    const int n = pulse.slices();
    out.resize(n);
    Operator h;
    Eigen::SelfAdjointEigenSolver<Operator> es;
    for (int k = 0; k < n; ++k) {
        h = problem.drift;
        for (int j = 0; j < pulse.n_controls(); ++j) h += pulse.amplitudes(k, j) * problem.controls[j];
        es.compute(h);
        out[k].val = es.eigenvalues();
        out[k].vec = es.eigenvectors();
    }
}

StateVector apply_slice(const SliceEig& se, double dt, const StateVector& psi, double sign = -1.0) {
    StateVector c = se.vec.adjoint() * psi;
    for (long long p = 0; p < c.size(); ++p) c(p) *= std::exp(sign * 1.0i * dt * se.val(p));
    return se.vec * c;
}

} // namespace

StateVector propagate_state(const PulseSequence& pulse, const ControlProblem& problem) {
    check_shapes(pulse, problem);
    const double dt = pulse.duration / pulse.slices();
    std::vector<SliceEig> eig;
    decompose(pulse, problem, eig);
    StateVector psi = problem.initial;
    for (const auto& se : eig) psi = apply_slice(se, dt, psi);
    return psi;
}

double propagate(const PulseSequence& pulse, const ControlProblem& problem) {
    return std::abs(problem.target.dot(propagate_state(pulse, problem)));
}

Eigen::MatrixXd gradient(const PulseSequence& pulse, const ControlProblem& problem) {
    check_shapes(pulse, problem);
    const int n = pulse.slices();
    const int m = pulse.n_controls();
    const double dt = pulse.duration / n;
    std::vector<SliceEig> eig;
    decompose(pulse, problem, eig);

    std::vector<StateVector> fwd(n + 1);
    fwd[0] = problem.initial;
    for (int k = 0; k < n; ++k) fwd[k + 1] = apply_slice(eig[k], dt, fwd[k]);
    const std::complex<double> z = problem.target.dot(fwd[n]);
    const double az = std::max(std::abs(z), 1e-300);

    Eigen::MatrixXd grad(n, m);
    StateVector chi = problem.target; // (U_{k+1}...U_{N-1})^dag |target>, k = n-1 first
    Eigen::MatrixXcd kmat;
    for (int k = n - 1; k >= 0; --k) {
        const auto& se = eig[k];
        const long long d = se.val.size();
        const double scale = std::max(1.0, se.val.cwiseAbs().maxCoeff());
        kmat.resize(d, d);
        for (long long p = 0; p < d; ++p) {
            const std::complex<double> ep = std::exp(-1.0i * dt * se.val(p));
            for (long long q = 0; q < d; ++q) {
                const double gap = se.val(p) - se.val(q);
                if (std::abs(gap) > 1e-12 * scale)
                    kmat(p, q) = (ep - std::exp(-1.0i * dt * se.val(q))) / gap;
                else // degenerate pair: derivative of exp at the midpoint
                    kmat(p, q) = -1.0i * dt * std::exp(-1.0i * dt * 0.5 * (se.val(p) + se.val(q)));
            }
        }
        const StateVector a = se.vec.adjoint() * chi;       // slice eigenbasis
        const StateVector b = se.vec.adjoint() * fwd[k];
        for (int j = 0; j < m; ++j) {
            const Eigen::MatrixXcd mj = se.vec.adjoint() * problem.controls[j] * se.vec;
            const std::complex<double> dz = a.dot(mj.cwiseProduct(kmat) * b);
            grad(k, j) = std::real(std::conj(z) * dz) / az;
        }
        chi = apply_slice(se, dt, chi, +1.0); // U_k^dag chi
    }
    return grad;
}

namespace {

// deterministic uniform in [-1, 1] from a 64-bit stream
double sym_uniform(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

std::uint64_t restart_stream(std::uint64_t seed, int restart) {
    std::uint64_t h = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(restart) + 1);
    h ^= h >> 30; h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27; h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

struct AscentOutcome {
    PulseSequence pulse;
    double fidelity = 0.0;
    std::vector<double> trace;
    bool converged = false;
};

AscentOutcome ascend(PulseSequence pulse, const ControlProblem& problem, const GrapeConfig& cfg) {
    AscentOutcome out;
    double f = propagate(pulse, problem);
    out.trace.push_back(f);
    double step = cfg.step_init;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        if (f >= cfg.stop_fidelity) { out.converged = true; break; }
        const Eigen::MatrixXd g = gradient(pulse, problem);
        if (g.norm() < 1e-15) { out.converged = true; break; }
        step *= 2.0; // try growing first; backtrack from there
        bool improved = false;
        double gain = 0.0;
        while (step > 1e-14) {
            PulseSequence trial = pulse;
            trial.amplitudes += step * g;
            const double ft = propagate(trial, problem);
            if (ft > f) {
                gain = ft - f;
                pulse = std::move(trial);
                f = ft;
                improved = true;
                break;
            }
            step *= cfg.shrink;
        }
        out.trace.push_back(f);
        if (!improved || gain < cfg.convergence_tol) { out.converged = true; break; }
    }
    if (f >= cfg.stop_fidelity) out.converged = true;
    out.pulse = std::move(pulse);
    out.fidelity = f;
    return out;
}

} // namespace

OptimizationResult optimize(const ControlProblem& problem, double duration, int slices,
                            const GrapeConfig& cfg, const std::optional<PulseSequence>& warm_start) {
    if (duration < 0) throw std::invalid_argument("optimize: duration must be >= 0");
    if (slices < 1) throw std::invalid_argument("optimize: need at least one slice");
    if (cfg.restarts < 1) throw std::invalid_argument("optimize: need at least one restart");
    const int m = static_cast<int>(problem.controls.size());
    if (m < 1) throw std::invalid_argument("optimize: problem has no controls");

    // candidate inits: optional warm start, then the zero pulse, then random
    // draws whose scale cycles through restart_scale_cycle
    std::vector<PulseSequence> inits;
    if (warm_start) {
        if (warm_start->slices() != slices || warm_start->n_controls() != m)
            throw std::invalid_argument("optimize: warm start shape mismatch");
        PulseSequence w = *warm_start;
        w.duration = duration;
        inits.push_back(std::move(w));
    }
    inits.push_back(PulseSequence::zero(duration, slices, m));
    for (int r = 1; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(restart_stream(cfg.seed, r));
        double scale = cfg.init_scale;
        if (!cfg.restart_scale_cycle.empty())
            scale *= cfg.restart_scale_cycle[(r - 1) % cfg.restart_scale_cycle.size()];
        PulseSequence p = PulseSequence::zero(duration, slices, m);
        for (int k = 0; k < slices; ++k)
            for (int j = 0; j < m; ++j) p.amplitudes(k, j) = scale * sym_uniform(rng);
        inits.push_back(std::move(p));
    }

    OptimizationResult best;
    best.seed = cfg.seed;
    bool have = false;
    for (const auto& init : inits) {
        AscentOutcome o = ascend(init, problem, cfg);
        if (!have || o.fidelity > best.fidelity) {
            have = true;
            best.pulse = std::move(o.pulse);
            best.fidelity = o.fidelity;
            best.trace = std::move(o.trace);
            best.converged = o.converged;
        }
        if (best.fidelity >= cfg.stop_fidelity) break; // first restart to reach it wins
    }
    return best;
}

std::vector<std::pair<double, double>> fidelity_vs_time(const ControlProblem& problem,
                                                        const std::vector<double>& t_grid,
                                                        int slices, const GrapeConfig& cfg) {
    if (t_grid.empty()) throw std::invalid_argument("fidelity_vs_time: empty grid");
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.emplace_back(t, optimize(problem, t, slices, cfg).fidelity);
    return out;
}

MinimalTimeResult minimal_time(const ControlProblem& problem, double threshold, double time_tol,
                               int slices, const GrapeConfig& cfg, double coupling) {
    if (threshold <= 0 || threshold > 1) throw std::invalid_argument("minimal_time: bad threshold");
    if (time_tol <= 0) throw std::invalid_argument("minimal_time: time_tol must be positive");
    if (coupling <= 0) throw std::invalid_argument("minimal_time: coupling must be positive");

    const double unit = 0.5 / coupling; // one 1/(2J) in time units
    GrapeConfig probe_cfg = cfg;
    probe_cfg.stop_fidelity = threshold; // the bisection only needs the crossing

    std::map<double, OptimizationResult> solved; // key: T in 1/(2J) units
    auto probe = [&](double t_units) -> const OptimizationResult& {
        std::optional<PulseSequence> warm;
        double best_gap = 1e300;
        for (const auto& [tu, res] : solved) {
            const double gap = std::abs(tu - t_units);
            if (res.fidelity >= threshold && gap < best_gap) {
                best_gap = gap;
                warm = res.pulse;
            }
        }
        auto res = optimize(problem, t_units * unit, slices, probe_cfg, warm);
        return solved.emplace(t_units, std::move(res)).first->second;
    };

    double lo = 0.0, hi = 1.0;
    if (probe(hi).fidelity < threshold)
        throw optimization_failure("minimal_time: fidelity below threshold even at T = 1/(2J)",
                                   solved.at(hi).fidelity);
    if (probe(lo).fidelity >= threshold) hi = lo;
    while (hi - lo > time_tol) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid).fidelity >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    const auto& at_hi = solved.at(hi);
    return {hi, at_hi.fidelity, at_hi.pulse};
}

} // namespace clusterprep
