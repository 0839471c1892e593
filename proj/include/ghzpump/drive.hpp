#pragma once

#include <vector>

#include "ghzpump/params.hpp"
#include "ghzpump/states.hpp"

namespace ghzpump {

/// One classical driving field tone. detuning defaults to sign*sqrt(F)*g,
/// the engineered dressed-state resonance of sector n = F.
struct DriveTone {
    Basis config = Basis::Z;  // which pumping operation the tone belongs to
    int index_f = 1;          // field index F >= 1
    int sign = +1;            // +1 red set, -1 blue set
    double rabi = 0.0;        // Omega >= 0
    double detuning = 0.0;    // Delta (= delta, measured from atom and oscillator alike)

    static DriveTone resonant(Basis config, int index_f, int sign, double rabi, double g);
};

/// The multi-tone field configuration: Z tones F = 1..N-1 (both signs) and
/// X tones for odd F <= N (both signs). Paired +/- tones must carry equal
/// Rabi frequencies so the AC Stark shifts compensate.
struct DriveSchedule {
    std::vector<DriveTone> tones;

    std::vector<DriveTone> config_tones(Basis config) const;
    /// Throws std::invalid_argument on negative rabi, even-F X tones with
    /// nonzero amplitude, or unpaired/unequal +/- amplitudes.
    void validate(int n_qubits) const;

    /// Z amplitudes z_rabi[F-1] for F = 1..N-1 and a common X amplitude on
    /// all odd F <= N, at the engineered detunings.
    static DriveSchedule make(int n_qubits, double g, const std::vector<double>& z_rabi,
                              double x_rabi);
};

}  // namespace ghzpump
