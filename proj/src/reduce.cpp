#include "clusterprep/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "clusterprep/errors.hpp"

namespace clusterprep {

Operator cyclic_shift_operator(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("cyclic_shift_operator: n out of range");
    const long long dim = 1LL << n;
    Operator s = Operator::Zero(dim, dim);
    for (long long i = 0; i < dim; ++i) {
        // (b_1...b_n) -> (b_n b_1...b_{n-1}); qubit 0 is the MSB
        long long j = (i >> 1) | ((i & 1) << (n - 1));
        s(j, i) = 1.0;
    }
    return s;
}

Operator persymmetry_operator(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("persymmetry_operator: n out of range");
    const long long dim = 1LL << n;
    Operator p = Operator::Zero(dim, dim);
    for (long long i = 0; i < dim; ++i) p(dim - 1 - i, i) = 1.0;
    return p;
}

Eigen::MatrixXcd invariant_subspace(const StateVector& seed, const std::vector<Operator>& ops,
                                    double tol) {
    if (seed.size() == 0) throw std::invalid_argument("invariant_subspace: empty seed");
    if (seed.norm() < 1e-14) throw std::invalid_argument("invariant_subspace: zero seed");
    const long long dim = seed.size();
    for (const auto& op : ops)
        if (op.rows() != dim || op.cols() != dim)
            throw std::invalid_argument("invariant_subspace: operator dimension mismatch");

    std::vector<StateVector> basis{seed / seed.norm()};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (const auto& op : ops) {
            StateVector w = op * basis[i];
            const double scale = std::max(1.0, w.norm());
            for (int pass = 0; pass < 2; ++pass) // re-orthogonalize to keep V^dag V = 1 tight
                for (const auto& b : basis) w -= b * b.dot(w);
            if (w.norm() > tol * scale) {
                basis.push_back(w / w.norm());
                if (static_cast<long long>(basis.size()) > dim)
                    throw std::logic_error("invariant_subspace: basis exceeded space dimension");
            }
        }
    }
    Eigen::MatrixXcd v(dim, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) v.col(k) = basis[k];
    return v;
}

Eigen::MatrixXcd invariant_subspace(const PhysicalProblem& problem, double tol) {
    std::vector<Operator> ops{problem.drift};
    ops.insert(ops.end(), problem.controls.begin(), problem.controls.end());
    return invariant_subspace(problem.initial, ops, tol);
}

namespace {

// rotate the global phase so the largest-magnitude entry is real positive
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const std::complex<double> z = v(imax);
    if (std::abs(z) > 0) v *= std::conj(z) / std::abs(z);
}

} // namespace

ReducedProblem reduce_problem(const PhysicalProblem& problem, double tol) {
    Eigen::MatrixXcd v = invariant_subspace(problem, tol);

    const StateVector proj = v * (v.adjoint() * problem.target);
    const double residual = (problem.target - proj).norm();
    if (residual > std::max(tol, 1e-9))
        throw reduction_error("reduce_problem: target not in the invariant subspace", residual);

    // canonical basis: drift eigenvectors, ordered by descending overlap with
    // the initial state (ties by ascending eigenvalue), phases real-positive
    Eigen::SelfAdjointEigenSolver<Operator> es(Eigen::MatrixXcd(v.adjoint() * problem.drift * v));
    Eigen::MatrixXcd w = v * es.eigenvectors();
    const int d = static_cast<int>(w.cols());
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    Eigen::VectorXd overlap(d);
    for (int k = 0; k < d; ++k) overlap(k) = std::abs(w.col(k).dot(problem.initial));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(overlap(a) - overlap(b)) > 1e-9) return overlap(a) > overlap(b);
        return es.eigenvalues()(a) < es.eigenvalues()(b);
    });
    Eigen::MatrixXcd basis(w.rows(), d);
    for (int k = 0; k < d; ++k) basis.col(k) = w.col(order[k]);
    for (int k = 0; k < d; ++k) fix_phase(basis.col(k));

    ReducedProblem rp;
    rp.dim = d;
    rp.basis = basis;
    rp.drift_r = basis.adjoint() * problem.drift * basis;
    rp.controls_r.reserve(problem.controls.size());
    for (const auto& c : problem.controls) rp.controls_r.push_back(basis.adjoint() * c * basis);
    rp.initial_r = basis.adjoint() * problem.initial;
    rp.target_r = basis.adjoint() * problem.target;
    fix_phase(rp.target_r); // fidelity is phase-invariant; pick the real-positive form
    return rp;
}

double drift_control_overlap(const ReducedProblem& rp) {
    if (rp.controls_r.size() != 1)
        throw std::invalid_argument("drift_control_overlap: needs exactly one control");
    const double num = std::abs((rp.drift_r.adjoint() * rp.controls_r[0]).trace());
    const double den = rp.drift_r.norm() * rp.controls_r[0].norm();
    if (den == 0) throw std::invalid_argument("drift_control_overlap: zero operator");
    return num / den;
}

} // namespace clusterprep
