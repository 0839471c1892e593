#pragma once

#include <vector>

#include "ghzpump/drive.hpp"
#include "ghzpump/liouvillian.hpp"
#include "ghzpump/params.hpp"
#include "ghzpump/states.hpp"

namespace ghzpump {

/// Complex effective detuning and coupling of one (tone, sector) pair after
/// adiabatic elimination of the excited level and oscillator.
struct EffectiveDetunings {
    Complex delta_eff;  // Delta~_n = Delta~ - n g^2 / delta~
    Complex g_eff;      // g~_n = g - Delta~ delta~ / (n g); undefined at n = 0
};

/// Throws std::domain_error for the n = 0 coupling (no oscillator path in an
/// empty sector); delta_eff is still defined there.
EffectiveDetunings effective_detuning(Basis config, const DriveTone& tone, int sector_n,
                                      const SystemParams& params);
Complex effective_delta(Basis config, const DriveTone& tone, int sector_n,
                        const SystemParams& params);

enum class Channel { kappa, gamma0, gamma1 };

enum class EffectiveTerms { all, resonant_only };

/// One engineered decay process: sqrt(rate) x transition pattern x sector
/// projector, expressed in the configuration's own basis.
struct EffectiveJump {
    SparseOp op;
    Basis config = Basis::Z;
    int tone_f = 0;
    int sign = +1;
    int sector = 0;
    Channel channel = Channel::gamma0;
    int atom = -1;  // -1 for the kappa channel (identity pattern)
    double rate = 0.0;
};

/// Ground-space effective model: jump operators plus the diagonal AC-Stark
/// Hamiltonian, all in `basis`. With paired +/- tones the Stark terms cancel
/// exactly.
struct EffectiveModel {
    int n_qubits = 0;
    Basis basis = Basis::Z;
    std::vector<EffectiveJump> jumps;
    Eigen::VectorXd stark_diag;
    bool power_broadened = false;

    LindbladModel to_lindblad() const;
};

/// Builds the per-(tone, sector, channel, atom) jump operators and the Stark
/// Hamiltonian for one configuration. Rates follow
///   rate = gamma_channel Omega^2 / (4 |Delta~_n|^2)   (|g~_n|^2 for kappa),
/// power-broadened by adding broadening_factor * n * Omega^2 to the
/// denominator, n being the number of atoms the tone can excite in that
/// sector.
EffectiveModel build_effective_model(Basis config, const DriveSchedule& schedule,
                                     const SystemParams& params, bool power_broadening,
                                     double broadening_factor = 2.0,
                                     EffectiveTerms terms = EffectiveTerms::all);

/// Rotates every operator of the model into `target` (per-qubit Hadamard).
EffectiveModel rotate_effective_model(const EffectiveModel& m, Basis target);

/// Z and X models merged into one Lindbladian in `target`, modeling the
/// simultaneous action of both pumping operations.
EffectiveModel combine_effective_models(const EffectiveModel& z, const EffectiveModel& x,
                                        Basis target);

/// s = -Re( n Omega^2 / (4 Delta~_n) ).
double stark_shift(Basis config, const DriveTone& tone, int sector_n, const SystemParams& params);

/// Perturbative estimate of the total excited-state population under the
/// schedule, as the sum of the per-tone Z and X expressions. Note these are
/// linear in the Rabi frequencies as printed in their source.
double excited_population(const DriveSchedule& schedule, const SystemParams& params);

}  // namespace ghzpump
