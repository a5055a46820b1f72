#include "clusterprep/analytic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace clusterprep {

using namespace std::complex_literals;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Eigen::Vector3d control_axis_unit() { return Eigen::Vector3d(kSqrt3 / 2.0, 0.0, 0.5); }

// right-handed rotation of s by angle about unit axis n
Eigen::Vector3d rodrigues(const Eigen::Vector3d& s, const Eigen::Vector3d& n, double angle) {
    const double c = std::cos(angle), si = std::sin(angle);
    return s * c + n.cross(s) * si + n * (n.dot(s)) * (1.0 - c);
}

} // namespace

ReducedProblem reduced_k3() {
    ReducedProblem rp;
    rp.dim = 2;
    rp.drift_r = Operator::Zero(2, 2);
    rp.drift_r(0, 0) = -M_PI / 2.0;
    rp.drift_r(1, 1) = 3.0 * M_PI / 2.0;
    Operator c(2, 2);
    c << 1.0, kSqrt3 / 2.0, kSqrt3 / 2.0, 0.0;
    rp.controls_r = {c};
    rp.initial_r = StateVector(2);
    rp.initial_r << kSqrt3 / 2.0, 0.5;
    rp.target_r = StateVector(2);
    rp.target_r << kSqrt3 / 2.0, -0.5;
    // first basis vector spans the middle-weight computational states, the
    // second the |000> / |111> pair
    rp.basis = Eigen::MatrixXcd::Zero(8, 2);
    for (int i = 1; i < 7; ++i) rp.basis(i, 0) = 1.0 / std::sqrt(6.0);
    rp.basis(0, 1) = rp.basis(7, 1) = 1.0 / std::sqrt(2.0);
    return rp;
}

RotationAxes rotation_axes(const ReducedProblem& rp) {
    if (rp.dim != 2 || rp.controls_r.size() != 1)
        throw std::invalid_argument("rotation_axes: need a d = 2 problem with one control");
    auto bloch = [](const Operator& h) {
        return Eigen::Vector3d(2.0 * h(0, 1).real(), -2.0 * h(0, 1).imag(),
                               (h(0, 0) - h(1, 1)).real());
    };
    return {bloch(rp.drift_r), bloch(rp.controls_r[0])};
}

double transfer_time(double theta) {
    if (theta < M_PI / 3.0 - 1e-12 || theta > 2.0 * M_PI / 3.0 + 1e-12)
        throw std::domain_error("transfer_time: theta outside [pi/3, 2pi/3]");
    const double s = std::sin(theta);
    const double arg = std::min(1.0, kSqrt3 / (2.0 * s));
    return (2.0 / (kSqrt3 * M_PI)) * s * std::asin(arg);
}

double optimal_angle(int grid_resolution) {
    if (grid_resolution < 3)
        throw std::invalid_argument("optimal_angle: need at least 3 grid points");
    const double a = M_PI / 3.0, b = 2.0 * M_PI / 3.0;
    // coarse grid to bracket the minimum, then golden-section refinement
    const int grid = grid_resolution - 1;
    int best = 0;
    double best_t = transfer_time(a);
    for (int i = 1; i <= grid; ++i) {
        const double t = transfer_time(a + (b - a) * i / grid);
        if (t < best_t) { best_t = t; best = i; }
    }
    double lo = a + (b - a) * std::max(0, best - 1) / grid;
    double hi = a + (b - a) * std::min(grid, best + 1) / grid;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = transfer_time(x1), f2 = transfer_time(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = transfer_time(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = transfer_time(x2);
        }
    }
    return 0.5 * (lo + hi);
}

AnalyticSolution optimal_solution() {
    return {M_PI / 2.0, -M_PI / 4.0, 2.0 / (3.0 * kSqrt3)};
}

OrthogonalAxis orthogonal_axis() {
    OrthogonalAxis oa;
    oa.op = Eigen::Matrix2cd::Zero();
    const double s = kSqrt3 * M_PI / 4.0; // (sqrt3 pi / 2) * (1/2) from I_z, I_x
    oa.op(0, 0) = -kSqrt3 * s;
    oa.op(1, 1) = kSqrt3 * s;
    oa.op(0, 1) = oa.op(1, 0) = s;
    oa.axis = Eigen::Vector3d(kSqrt3 * M_PI / 2.0, 0.0, -3.0 * M_PI / 2.0);
    return oa;
}

double verify_solution(const AnalyticSolution& sol) {
    if (sol.duration < 0) throw std::invalid_argument("verify_solution: negative duration");
    const ReducedProblem rp = reduced_k3();
    const Operator h = rp.drift_r + sol.amplitude * rp.controls_r[0];
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    Eigen::VectorXcd coef = es.eigenvectors().adjoint() * rp.initial_r;
    for (int p = 0; p < 2; ++p)
        coef(p) *= std::exp(-1.0i * sol.duration * es.eigenvalues()(p));
    StateVector psi = es.eigenvectors() * coef;
    // instantaneous kick: exp(-i phi n.sigma) rotates the Bloch vector by
    // 2 phi about the unit control axis n
    const Eigen::Vector3d n = control_axis_unit();
    const double phi = sol.hard_pulse_angle;
    Eigen::Matrix2cd kick;
    kick << std::cos(phi) - 1.0i * std::sin(phi) * n.z(),
        -1.0i * std::sin(phi) * (n.x() - 1.0i * n.y()),
        -1.0i * std::sin(phi) * (n.x() + 1.0i * n.y()),
        std::cos(phi) + 1.0i * std::sin(phi) * n.z();
    psi = kick * psi;
    return std::abs(rp.target_r.dot(psi));
}

TrotterComparison trotter_segment_compare(double v, double delta) {
    if (!(delta > 0.0) || delta > 0.01)
        throw std::domain_error("trotter_segment_compare: delta must be in (0, 0.01]");
    const Eigen::Vector3d a = control_axis_unit();
    const Eigen::Vector3d orth = orthogonal_axis().axis; // norm sqrt3 pi
    const Eigen::Vector3d n = orth.normalized();
    // start on the great circle through the control axis perpendicular to the
    // orthogonal axis, at polar angle pi/3 from the control axis
    const double chi0 = M_PI / 3.0;
    const Eigen::Vector3d s0 = std::cos(chi0) * a + std::sin(chi0) * n.cross(a);
    // generic segment: orthogonal rotation plus control admixture v (the
    // control's Bloch vector is 2a)
    const Eigen::Vector3d gen = orth + 2.0 * v * a;
    const Eigen::Vector3d s1 = rodrigues(s0, gen.normalized(), gen.norm() * delta);
    const double h1 = std::clamp(s1.dot(a), -1.0, 1.0);
    TrotterComparison out;
    out.optimal = std::abs(std::acos(h1) - chi0); // a pure meridian rotation needs this much
    out.generic = orth.norm() * delta;            // orthogonal-axis angle the segment consumed
    return out;
}

} // namespace clusterprep
