#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ghzpump/drive.hpp"
#include "ghzpump/params.hpp"

namespace ghzpump {

/// Engineered transition rates feeding the compartment models.
struct RateBundle {
    double gamma_z_plus = 0.0;   // compartment 2 -> {GHZ, GHZ-}, split 50/50
    double gamma_x_plus = 0.0;   // GHZ- depump
    double gamma_x_toss = 0.0;   // X action on intermediate sectors
    double gamma_12 = 0.0;       // compartment 1 -> 2
    double gamma_z_minus = 0.0;  // GHZ loss through off-resonant Z
    double gamma_x_minus = 0.0;  // GHZ loss through off-resonant X
    bool power_broadened = false;

    double gamma_minus() const { return gamma_z_minus + gamma_x_minus; }
};

/// Labeled transition-rate matrix; columns sum to zero.
struct CompartmentModel {
    std::vector<std::string> labels;
    Eigen::MatrixXd transition;
    double rate_unit = 1.0;  // Gamma_Z^+
    int n_qubits = 0;
    int ghz_index = -1;
    int ghz_minus_index = -1;
};

/// Z transfer rate out of sector n1 at the resonant tone F = n1:
/// weak 2 n1 gamma_0e Omega_F^2 / (gamma_e + kappa_b)^2, power-broadened with
/// + 2 n1 Omega_F^2 in the denominator.
double sector_transfer_rate(int n1, const DriveSchedule& schedule, const SystemParams& params,
                            bool power_broadening);

/// Sum of inverse transfer rates over the intermediate sectors
/// (exact harmonic sums, no log approximation).
double pumping_time(int n_from, int n_to, const DriveSchedule& schedule,
                    const SystemParams& params, bool power_broadening = false);

/// Twice the n1 = N-1 -> 0 time: on average two attempts land in GHZ.
double ghz_pumping_time(const DriveSchedule& schedule, const SystemParams& params,
                        bool power_broadening = false);

struct GhzLossRates {
    double gamma_z_minus = 0.0;
    double gamma_x_minus = 0.0;
    double gamma_x_toss = 0.0;
};

/// Closed-form loss rates from GHZ and the X-toss rate; requires symmetric
/// branching. Power broadening affects the toss rate only.
GhzLossRates ghz_loss_rates(const DriveSchedule& schedule, const SystemParams& params,
                            bool power_broadening = false);

/// GHZ- depump rate (= 2 x toss rate).
double ghz_minus_depump_rate(const DriveSchedule& schedule, const SystemParams& params,
                             bool power_broadening = false);

/// The analytic weak-driving bundle at the optimal amplitude assignment,
/// with the transition-matrix multipliers as printed (Gamma_12 = 3 log N
/// Gamma_Z^+ and so on).
RateBundle weak_rate_bundle(int n_qubits, double gamma, double omega, double g);

CompartmentModel build_4compartment(int n_qubits, const RateBundle& rates);

/// Strong-driving 3-compartment model; gamma_z_plus is the saturated
/// preparation rate, gamma_minus = 2 E_Z gamma_z_plus.
CompartmentModel build_3compartment_strong(int n_qubits, double gamma_z_plus, double e_z);

Eigen::VectorXd compartment_steady_state(const CompartmentModel& model);

struct StationaryError {
    double exact = 0.0;   // 1 - P_GHZ(inf) from the null vector
    double approx = 0.0;  // first-order closed form
};
StationaryError stationary_error(const CompartmentModel& model);

/// Effective exponential preparation rate Gamma_+ from the matrix
/// exponential of T with the GHZ-out column dropped, starting in GHZ-.
/// t0 <= 0 selects the default 1/Gamma_Z^+.
double effective_rate(const CompartmentModel& model, bool drop_loss = true, double t0 = 0.0);

struct BNKappa {
    double b = 0.0;
    double kappa = 0.0;
};
/// Weak-driving preparation-time prefactor b(N) and the exponential-rate
/// factor kappa(N), from the matrix exponential of the normalized 4-compartment
/// transition matrix.
BNKappa bn_kappa(int n_qubits);

Eigen::VectorXd compartment_populations(const CompartmentModel& model, const Eigen::VectorXd& p0,
                                        double t, bool drop_loss = false);

}  // namespace ghzpump
