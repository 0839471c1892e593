#include "ghzpump/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

int qubits_for_dim(Eigen::Index dim, const char* what) {
    if (dim < 2) throw std::invalid_argument(std::string(what) + ": dimension too small");
    int n = 0;
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument(std::string(what) + ": dimension not a power of two");
        d /= 2;
        ++n;
    }
    return n;
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

int GroundState::n_qubits() const { return qubits_for_dim(amps.size(), "GroundState"); }

int DensityMatrix::n_qubits() const { return qubits_for_dim(mat.rows(), "DensityMatrix"); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat + mat.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DensityMatrix: not square");
    if (hermiticity_deviation() > 1e-12)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (trace_deviation() > 1e-9)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 beyond 1e-9");
    if (min_eigenvalue() < -1e-8)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-8");
}

DensityMatrix DensityMatrix::pure(const GroundState& psi) {
    return DensityMatrix{psi.amps * psi.amps.adjoint(), psi.basis};
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits, Basis basis) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityMatrix{std::move(m), basis};
}

Matrix SectorProjector::to_matrix() const {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index i : indices) m(i, i) = 1.0;
    return m;
}

Vector SectorProjector::apply(const Vector& v) const {
    Vector out = Vector::Zero(v.size());
    for (Eigen::Index i : indices) out(i) = v(i);
    return out;
}

GroundState ghz_state(int n_qubits, int sign) {
    if (n_qubits < 1) throw std::invalid_argument("ghz_state: n_qubits must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("ghz_state: sign must be +1 or -1");
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Vector v = Vector::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(dim - 1) = sign / std::sqrt(2.0);
    return GroundState{std::move(v), Basis::Z};
}

SectorProjector sector_projector(int n_qubits, int n, Basis basis) {
    if (n_qubits < 1) throw std::invalid_argument("sector_projector: n_qubits must be >= 1");
    if (n < 0 || n > n_qubits) throw std::invalid_argument("sector_projector: n outside [0, N]");
    SectorProjector p;
    p.n_qubits = n_qubits;
    p.n = n;
    p.basis = basis;
    const std::uint64_t dim = std::uint64_t(1) << n_qubits;
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (popcount(s) == n) p.indices.push_back(static_cast<Eigen::Index>(s));
    }
    return p;
}

void hadamard_transform(Vector& v) {
    const Eigen::Index dim = v.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index h = 1; h < dim; h <<= 1) {
        for (Eigen::Index i = 0; i < dim; i += h << 1) {
            for (Eigen::Index j = i; j < i + h; ++j) {
                const Complex a = v(j);
                const Complex b = v(j + h);
                v(j) = (a + b) * inv_sqrt2;
                v(j + h) = (a - b) * inv_sqrt2;
            }
        }
    }
}

void hadamard_transform(Matrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        Vector col = m.col(c);
        hadamard_transform(col);
        m.col(c) = col;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Vector row = m.row(r).transpose();
        hadamard_transform(row);
        m.row(r) = row.transpose();
    }
}

GroundState basis_change(const GroundState& psi, Basis target) {
    GroundState out = psi;
    if (psi.basis == target) return out;
    hadamard_transform(out.amps);
    out.basis = target;
    return out;
}

DensityMatrix basis_change(const DensityMatrix& rho, Basis target) {
    DensityMatrix out = rho;
    if (rho.basis == target) return out;
    hadamard_transform(out.mat);
    out.basis = target;
    return out;
}

double fidelity(const DensityMatrix& rho, const GroundState& target) {
    const GroundState t = basis_change(target, rho.basis);
    if (t.amps.size() != rho.mat.rows())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Complex val = t.amps.adjoint() * rho.mat * t.amps;
    return val.real();
}

}  // namespace ghzpump
