#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghzpump/liouvillian.hpp"
#include "ghzpump/states.hpp"

namespace ghzpump {

struct IntegratorConfig {
    double initial_step = 0.0;  // 0 = auto (sample spacing / 100)
    double rtol = 1e-8;
    double atol = 1e-10;
    double max_time = 1e4;       // units 1/g
    int samples = 200;           // sample count including t = 0
    double trotter_slice = 0.0;  // units 1/g; 0 = auto (0.1 / fastest engineered rate)
    bool use_expm_stepping = false;  // exact exponential stepping, time-independent models only
    double trace_tolerance = 1e-6;
    double positivity_tolerance = -1e-8;
};

/// Time series of density-matrix observables. Sector populations are taken
/// over the ground block in the basis the model is expressed in.
struct SimTrace {
    std::vector<double> times;
    std::vector<double> ghz_fidelity;
    std::vector<double> ghz_minus_pop;
    std::vector<Eigen::VectorXd> sector_pops;
    std::vector<double> trace_dev;
    std::vector<double> min_eigenvalue;
    bool failed = false;
    std::string diagnostic;
};

struct SteadyStateResult {
    std::vector<DensityMatrix> states;
    bool degenerate = false;
    double residual = 0.0;
};

/// Integrates rho' = -i[H, rho] + sum_k L_k rho L_k^dag - (1/2){L_k^dag L_k, rho}
/// with an adaptive embedded Runge-Kutta pair on the vectorized density
/// matrix; Hermiticity is restored by symmetrization after every accepted
/// step. A ground-space rho0 is embedded with empty excited sectors.
SimTrace evolve(const LindbladModel& model, const DensityMatrix& rho0,
                const IntegratorConfig& cfg);

/// Alternates one slice under the Z model (in its basis) and one under the
/// X model (in its basis) with a basis change in between; converges to the
/// simultaneous action as the slice duration goes to zero.
SimTrace trotter_evolve(const LindbladModel& model_z, const LindbladModel& model_x,
                        const DensityMatrix& rho0, const IntegratorConfig& cfg);

/// Null-space solve of the vectorized Liouvillian for small dimensions,
/// long-time integration otherwise. Time-independent models only.
SteadyStateResult steady_state(const LindbladModel& model);

/// First time the GHZ fidelity reaches target_f, refined by bisection
/// between samples to 1e-3 relative; nullopt when max_time is exhausted.
std::optional<double> time_to_fidelity(const LindbladModel& model, const DensityMatrix& rho0,
                                       double target_f, const IntegratorConfig& cfg);
std::optional<double> time_to_fidelity(const LindbladModel& model_z, const LindbladModel& model_x,
                                       const DensityMatrix& rho0, double target_f,
                                       const IntegratorConfig& cfg);

}  // namespace ghzpump
