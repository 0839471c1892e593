#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghzpump/drive.hpp"
#include "ghzpump/dynamics.hpp"
#include "ghzpump/params.hpp"

namespace ghzpump {

/// Analytic weak-driving assignment: ceil-1 amplitudes at eta = 2, the
/// X amplitude balancing the two pumping rates, and the decay rate tuned to
/// a target stationary error E.
struct WeakDriveParams {
    int n_qubits = 0;
    std::vector<double> a_f;  // a_f[F-1], F = 1..N-1
    double a_x = 0.0;
    double gamma = 0.0;  // gamma_e = gamma_f
    double alpha = 1.0;  // Omega = alpha * gamma
    double eta = 2.0;
    double target_error = 0.0;

    double omega() const { return alpha * gamma; }
    DriveSchedule schedule(double g) const;
    SystemParams system(double g) const;
};

WeakDriveParams weak_drive_params(int n_qubits, double target_error, double alpha = 1.0,
                                  double g = 1.0);

/// H = sum 1/(F A_F^2), G = sum F A_F^2/(N-F)^2 over F = 1..N-1.
/// Throws std::domain_error when some A_F = 0 (H diverges).
std::pair<double, double> hg_functions(const std::vector<double>& a_f);

/// Strong-driving (power-broadened) parameter bundle; internally E_Z = E/5.
struct StrongDriveParams {
    int n_qubits = 0;
    double gamma = 0.0;    // Z-pumping decay, gamma_e
    double gamma_f = 0.0;  // X-pumping decay
    double omega_x = 0.0;
    std::vector<double> omega_f;  // omega_f[F-1], F = 1..N-1
    double e_z = 0.0;
    double target_error = 0.0;
    double gamma_z_plus = 0.0;  // 1 / (Z pumping time)
    double tau_ghz = 0.0;       // ~ 66 N^{3/2} log N / (g sqrt(E))

    DriveSchedule schedule(double g) const;
    SystemParams system(double g) const;
};

StrongDriveParams strong_drive_params(int n_qubits, double target_error, double g = 1.0);

/// Lambert-W solution of the minimal time-to-error problem for the
/// exponential error ansatz.
struct DynamicalSolution {
    double c = 0.0;
    double tau = 0.0;    // rescaled time sqrt(W^2 + 2W)/sqrt(E)
    double gamma = 0.0;  // physical decay rate
    double t_ghz = 0.0;  // physical preparation time
    double w_m1 = 0.0;
    double stationary_over_dynamical = 0.0;  // 1 + 2/W
};

DynamicalSolution dynamical_optimum(int n_qubits, double target_error, double alpha,
                                    double kappa_eff, double f_n, double h_n, double g = 1.0);
/// Defaults kappa, f(N), h(N) to the weak-driving compartment choices.
DynamicalSolution dynamical_optimum(int n_qubits, double target_error, double alpha = 1.0,
                                    double g = 1.0);

/// h(N) and f(N) of the weak-driving compartment reduction.
double h_of_n(int n_qubits);
double f_of_n(int n_qubits);

struct FixedTimeSolution {
    double gamma_opt = 0.0;
    double error = 0.0;
    double w0 = 0.0;
};

FixedTimeSolution fixed_time_optimum(double t_max, int n_qubits, double g, double alpha,
                                     double kappa_eff, double f_n, double h_n);

/// Largest qubit number reaching error E within time T (weak resp. strong
/// driving closed forms).
double max_qubits_weak(double g_t, double error, double kappa_eff = 1.0, double alpha = 1.0);
double max_qubits_strong(double g_t, double error);

enum class ModelKind { effective, full_k1, full_k2, compartment };

struct MinimizerOptions {
    int budget = 500;    // total objective evaluations across restarts
    int restarts = 3;    // jittered Nelder-Mead restarts
    std::uint64_t seed = 0;
    double jitter = 0.1;
    bool power_broadening = true;
    double broadening_factor = 2.0;
    double horizon_units = 400.0;  // max_time in units of 1/Gamma_Z^+
    int samples = 400;
    double g = 1.0;
};

struct MinimizerResult {
    std::vector<double> params;  // [A_1..A_{N-1}, A_X, gamma, gamma_f]
    double time = 0.0;
    bool reached = false;
    int evaluations = 0;

    WeakDriveParams as_weak(int n_qubits, double alpha) const;
};

/// Objective used by the minimizer (exposed for tests/CLI): time to reach
/// target_f with the given parameter vector, nullopt when unreachable.
std::optional<double> evaluate_time_to_fidelity(int n_qubits, double target_f, ModelKind kind,
                                                const std::vector<double>& params,
                                                const MinimizerOptions& opts);

/// Deterministic Nelder-Mead search over {A_F, A_X, gamma, gamma_f} seeded
/// from the analytic optimum; never returns a slower time than the seed.
MinimizerResult numeric_time_minimizer(int n_qubits, double target_f, ModelKind kind,
                                       const WeakDriveParams& seed, const MinimizerOptions& opts);

}  // namespace ghzpump
