#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace ghzpump {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Representation basis of a ground-space object. Z is the computational
/// basis |0>,|1>; X is the per-qubit |+>,|-> basis, ordered so that bit
/// value 1 means |->. The tag is explicit data and never inferred.
enum class Basis { Z, X };

inline const char* to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

inline int popcount(std::uint64_t v) { return static_cast<int>(__builtin_popcountll(v)); }

double binomial(int n, int k);

/// Pure state over the 2^N ground space with a basis tag.
struct GroundState {
    Vector amps;
    Basis basis = Basis::Z;

    int n_qubits() const;
    double norm() const { return amps.norm(); }
};

/// Ground-space density matrix with a basis tag.
struct DensityMatrix {
    Matrix mat;
    Basis basis = Basis::Z;

    int n_qubits() const;
    double trace_deviation() const { return std::abs(mat.trace().real() - 1.0) + std::abs(mat.trace().imag()); }
    double hermiticity_deviation() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
    /// Throws std::invalid_argument when Hermiticity (1e-12), trace (1e-9)
    /// or positivity (-1e-8) are violated.
    void validate() const;

    static DensityMatrix pure(const GroundState& psi);
    static DensityMatrix maximally_mixed(int n_qubits, Basis basis = Basis::Z);
};

/// Projector onto the ground strings with n qubits in |1> (Z) or |-> (X).
/// Stored as the index set of matching bitstrings.
struct SectorProjector {
    int n_qubits = 0;
    int n = 0;
    Basis basis = Basis::Z;
    std::vector<Eigen::Index> indices;

    int rank() const { return static_cast<int>(indices.size()); }
    Matrix to_matrix() const;
    Vector apply(const Vector& v) const;
};

/// (|0...0> + sign |1...1>)/sqrt(2) in the Z basis. sign is +1 or -1.
GroundState ghz_state(int n_qubits, int sign);

SectorProjector sector_projector(int n_qubits, int n, Basis basis);

/// Per-qubit Hadamard transform between the Z and X representations.
/// Involution: applying twice returns the input.
GroundState basis_change(const GroundState& psi, Basis target);
DensityMatrix basis_change(const DensityMatrix& rho, Basis target);

/// In-place fast Walsh-Hadamard transform with 1/sqrt(2) per stage.
void hadamard_transform(Vector& v);
void hadamard_transform(Matrix& m);

/// <target|rho|target>. Both arguments may carry different basis tags; the
/// target is rotated to the density matrix's basis first.
double fidelity(const DensityMatrix& rho, const GroundState& target);

}  // namespace ghzpump
