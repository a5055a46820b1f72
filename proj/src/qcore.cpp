#include "clusterprep/qcore.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace clusterprep {

using namespace std::complex_literals;

namespace {

constexpr double hermiticity_tol = 1e-12;

void check_qubit_count(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("qubit count out of range [1,20]");
}

// +1 if bit of `qubit` in basis index is 0, else -1 (qubit 0 = MSB)
inline int zsign(long long index, int n, int qubit) {
    return ((index >> (n - 1 - qubit)) & 1) ? -1 : 1;
}

} // namespace

Operator pauli_on(int n, int qubit, char axis) {
    check_qubit_count(n);
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("pauli_on: qubit out of range");
    const long long dim = 1LL << n;
    Operator m = Operator::Zero(dim, dim);
    for (long long i = 0; i < dim; ++i) {
        long long flipped = i ^ (1LL << (n - 1 - qubit));
        switch (axis) {
            case 'x': m(flipped, i) = 1.0; break;
            case 'y': m(flipped, i) = std::complex<double>(0.0, zsign(i, n, qubit)); break;
            case 'z': m(i, i) = zsign(i, n, qubit); break;
            default: throw std::invalid_argument("pauli_on: axis must be 'x', 'y' or 'z'");
        }
    }
    return m;
}

Eigen::VectorXd drift_diagonal(const CouplingGraph& g, double coupling, bool include_local) {
    check_qubit_count(g.n_qubits);
    if (coupling <= 0) throw std::invalid_argument("drift: coupling J must be positive");
    const int n = g.n_qubits;
    const long long dim = 1LL << n;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    for (long long i = 0; i < dim; ++i) {
        double acc = 0;
        for (const auto& [a, b] : g.edges) {
            if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("drift: edge out of range");
            const int za = zsign(i, n, a), zb = zsign(i, n, b);
            acc += include_local ? (1.0 + za) * (1.0 - zb) : za * zb;
        }
        diag(i) = (M_PI * coupling / 2.0) * acc;
    }
    return diag;
}

Operator drift_hamiltonian(const CouplingGraph& g, double coupling, bool include_local) {
    return drift_diagonal(g, coupling, include_local).cast<std::complex<double>>().asDiagonal();
}

std::vector<Operator> local_controls(int n) {
    check_qubit_count(n);
    std::vector<Operator> ops;
    ops.reserve(2 * n);
    for (int q = 0; q < n; ++q) {
        ops.push_back(0.5 * pauli_on(n, q, 'x'));
        ops.push_back(0.5 * pauli_on(n, q, 'y'));
    }
    return ops;
}

Operator global_control(int n) {
    check_qubit_count(n);
    const long long dim = 1LL << n;
    Operator m = Operator::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        for (long long i = 0; i < dim; ++i) m(i ^ (1LL << (n - 1 - q)), i) += 0.5;
    }
    return m;
}

StateVector initial_state(int n) {
    check_qubit_count(n);
    const long long dim = 1LL << n;
    return StateVector::Constant(dim, std::pow(2.0, -0.5 * n));
}

StateVector cluster_state(const CouplingGraph& g, double coupling) {
    const Eigen::VectorXd diag = drift_diagonal(g, coupling, false);
    StateVector psi = initial_state(g.n_qubits);
    const double t = 1.0 / (2.0 * coupling);
    for (long long i = 0; i < psi.size(); ++i) psi(i) *= std::exp(-1.0i * diag(i) * t);
    return psi;
}

StateVector evolve(const StateVector& psi, const Operator& h, double t) {
    if (h.rows() != h.cols() || h.rows() != psi.size())
        throw std::invalid_argument("evolve: dimension mismatch");
    if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
        throw std::invalid_argument("evolve: Hamiltonian not Hermitian");
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    StateVector coeffs = es.eigenvectors().adjoint() * psi;
    for (long long k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(-1.0i * es.eigenvalues()(k) * t);
    StateVector out = es.eigenvectors() * coeffs;
    return out / out.norm();
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
    return std::abs(a.dot(b));
}

Eigen::Vector3d bloch_vector(const StateVector& psi) {
    if (psi.size() != 2) throw std::invalid_argument("bloch_vector: need a two-level state");
    const std::complex<double> a = psi(0), b = psi(1);
    return {2.0 * std::real(std::conj(a) * b), 2.0 * std::imag(std::conj(a) * b),
            std::norm(a) - std::norm(b)};
}

PhysicalProblem build_problem(const CouplingGraph& g, ControlSetting setting, double coupling) {
    PhysicalProblem p;
    p.coupling = coupling;
    p.drift = drift_hamiltonian(g, coupling, false);
    p.controls = setting == ControlSetting::global ? std::vector<Operator>{global_control(g.n_qubits)}
                                                   : local_controls(g.n_qubits);
    p.initial = initial_state(g.n_qubits);
    p.target = cluster_state(g, coupling);
    return p;
}

} // namespace clusterprep
