#pragma once

#include <string>

namespace ghzpump {

/// Physical constants of the N-atom + two-oscillator model. All frequencies
/// are expressed in units of the coupling g (so g = 1 in the default unit
/// system) and times in units of 1/g.
struct SystemParams {
    int n_qubits = 2;
    double g = 1.0;
    double gamma_e = 0.0;   // total decay rate of |e>
    double gamma_f = 0.0;   // total decay rate of |f>
    double gamma_0e = 0.0;  // branching |e> -> |0>
    double gamma_1e = 0.0;  // branching |e> -> |1>
    double gamma_0f = 0.0;  // branching |f> -> |0>
    double gamma_1f = 0.0;  // branching |f> -> |1>
    double kappa_b = 0.0;   // oscillator b decay
    double kappa_c = 0.0;   // oscillator c decay

    /// Throws std::invalid_argument when a rate is negative, N < 2, g <= 0,
    /// or the branching rates do not add up to the total rates.
    void validate() const;

    bool symmetric_branching() const;

    /// Equal branching to both ground states: gamma_ie = gamma_e/2, etc.
    static SystemParams symmetric(int n_qubits, double g, double gamma_e,
                                  double gamma_f, double kappa_b = 0.0,
                                  double kappa_c = 0.0);
};

}  // namespace ghzpump
