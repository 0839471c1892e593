#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "ghzpump/drive.hpp"
#include "ghzpump/params.hpp"
#include "ghzpump/space.hpp"
#include "ghzpump/states.hpp"

namespace ghzpump {

using SparseOp = Eigen::SparseMatrix<Complex>;

/// op * e^{i freq t} + h.c.; freq == 0 means the term is static and `op`
/// itself must be Hermitian.
struct HamiltonianTone {
    SparseOp op;
    double freq = 0.0;
};

/// Hamiltonian + jump operators in a fixed representation basis. The frame
/// rotates at the excited-level/oscillator resonance, so interaction terms
/// are static and each drive tone carries an explicit e^{i Delta t} phase.
struct LindbladModel {
    Basis basis = Basis::Z;
    int n_qubits = 0;
    Eigen::Index dim = 0;
    Eigen::Index ground_dim = 0;  // leading block of ground bitstrings
    SparseOp h_static;
    std::vector<HamiltonianTone> tones;
    std::vector<SparseOp> jumps;

    bool time_dependent() const { return !tones.empty(); }
};

/// g (b^dag J_1e + h.c.) for Z, g (c^dag J_-f + h.c.) for X, restricted to
/// the truncated basis. Hermitian; conserves total excitation.
SparseOp build_interaction(Basis config, const SystemParams& params, const TruncatedSpace& space);

/// (Omega/2) J_e1 (Z) or (Omega/2) J_f- (X); the returned tone is the
/// positive-frequency half, frequency = tone detuning.
HamiltonianTone build_drive(const DriveTone& tone, const SystemParams& params,
                            const TruncatedSpace& space);

/// Per-atom spontaneous-emission operators for every level the space
/// enumerates, plus the oscillator decay operators (zero operators when
/// kappa = 0).
std::vector<SparseOp> build_jumps(const SystemParams& params, const TruncatedSpace& space);

/// Assembles the full model for every schedule tone whose configuration the
/// space contains.
LindbladModel build_full_model(const DriveSchedule& schedule, const SystemParams& params,
                               const TruncatedSpace& space);

}  // namespace ghzpump
