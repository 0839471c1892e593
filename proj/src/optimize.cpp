#include "ghzpump/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ghzpump/effective.hpp"
#include "ghzpump/lambertw.hpp"
#include "ghzpump/ratemodel.hpp"

namespace ghzpump {

namespace {

double logn_of(int n) { return std::log(static_cast<double>(n)); }

std::vector<double> ceil1_amplitudes(int n_qubits, double eta) {
    std::vector<double> a(n_qubits - 1);
    for (int f = 1; f <= n_qubits - 1; ++f)
        a[f - 1] = std::sqrt(std::min(1.0, eta * (n_qubits - f) / f));
    return a;
}

}  // namespace

DriveSchedule WeakDriveParams::schedule(double g) const {
    std::vector<double> z(a_f.size());
    for (std::size_t i = 0; i < a_f.size(); ++i) z[i] = a_f[i] * omega();
    return DriveSchedule::make(n_qubits, g, z, a_x * omega());
}

SystemParams WeakDriveParams::system(double g) const {
    return SystemParams::symmetric(n_qubits, g, gamma, gamma);
}

WeakDriveParams weak_drive_params(int n_qubits, double target_error, double alpha, double g) {
    if (n_qubits < 2) throw std::invalid_argument("weak_drive_params: N >= 2 required");
    if (!(target_error > 0.0 && target_error < 1.0))
        throw std::invalid_argument("weak_drive_params: E must be in (0, 1)");
    const double logn = logn_of(n_qubits);
    WeakDriveParams p;
    p.n_qubits = n_qubits;
    p.eta = 2.0;
    p.alpha = alpha;
    p.target_error = target_error;
    p.a_f = ceil1_amplitudes(n_qubits, p.eta);
    p.a_x = std::sqrt(2.0 / (3.0 * n_qubits * logn));
    const double bracket = 27.0 * n_qubits * logn * logn / 16.0 *
                           (1.0 + 5.0 / (9.0 * logn * logn)) * (1.0 + 1.0 / (3.0 * logn));
    p.gamma = g * std::sqrt(target_error) / std::sqrt(bracket);
    return p;
}

std::pair<double, double> hg_functions(const std::vector<double>& a_f) {
    const int n_qubits = static_cast<int>(a_f.size()) + 1;
    double h = 0.0, g = 0.0;
    for (int f = 1; f <= n_qubits - 1; ++f) {
        const double a2 = a_f[f - 1] * a_f[f - 1];
        if (a2 <= 0.0) throw std::domain_error("hg_functions: A_F = 0 makes H diverge");
        h += 1.0 / (f * a2);
        g += f * a2 / ((n_qubits - f) * double(n_qubits - f));
    }
    return {h, g};
}

DriveSchedule StrongDriveParams::schedule(double g) const {
    return DriveSchedule::make(n_qubits, g, omega_f, omega_x);
}

SystemParams StrongDriveParams::system(double g) const {
    SystemParams p;
    p.n_qubits = n_qubits;
    p.g = g;
    p.gamma_e = gamma;
    p.gamma_0e = p.gamma_1e = 0.5 * gamma;
    p.gamma_f = gamma_f;
    p.gamma_0f = p.gamma_1f = 0.5 * gamma_f;
    p.validate();
    return p;
}

StrongDriveParams strong_drive_params(int n_qubits, double target_error, double g) {
    if (n_qubits < 2) throw std::invalid_argument("strong_drive_params: N >= 2 required");
    if (!(target_error > 0.0 && target_error < 1.0))
        throw std::invalid_argument("strong_drive_params: E must be in (0, 1)");
    const double logn = logn_of(n_qubits);
    StrongDriveParams p;
    p.n_qubits = n_qubits;
    p.target_error = target_error;
    p.e_z = target_error / 5.0;  // the 3-compartment model gives E = 5 E_Z
    p.gamma = std::sqrt(8.0 * g * g * p.e_z / (9.0 * n_qubits * logn * logn));
    p.omega_f.resize(n_qubits - 1);
    for (int f = 1; f <= n_qubits - 1; ++f) {
        p.omega_f[f - 1] = std::sqrt(8.0 * g * g * p.e_z / (9.0 * n_qubits * (n_qubits - 1) * logn) *
                                     (n_qubits - f) / f);
    }
    p.omega_x = std::pow(2.0, 1.25) / (3.0 * std::pow(5.0, 0.25)) * g * std::sqrt(p.e_z) /
                (std::pow(n_qubits, 1.5) * std::sqrt(logn));
    p.gamma_f = 4.0 / std::sqrt(5.0) * g * std::sqrt(p.e_z) / std::sqrt(double(n_qubits));
    // saturated Z pumping time: 9/sqrt(2) (N-1) sqrt(N) log N / (g sqrt(E_Z))
    const double tau_z = 9.0 / std::sqrt(2.0) * (n_qubits - 1) * std::sqrt(double(n_qubits)) *
                         logn / (g * std::sqrt(p.e_z));
    p.gamma_z_plus = 1.0 / tau_z;
    CompartmentModel m3 = build_3compartment_strong(n_qubits, p.gamma_z_plus, p.e_z);
    p.tau_ghz = 1.0 / effective_rate(m3, /*drop_loss=*/true);
    return p;
}

double h_of_n(int n_qubits) {
    const double logn = logn_of(n_qubits);
    return 3.0 * n_qubits * logn / 8.0 * (1.0 + 5.0 / (9.0 * logn * logn));
}

double f_of_n(int n_qubits) {
    return 2.0 / (3.0 + 9.0 * logn_of(n_qubits));
}

DynamicalSolution dynamical_optimum(int n_qubits, double target_error, double alpha,
                                    double kappa_eff, double f_n, double h_n, double g) {
    if (!(target_error > 0.0 && target_error < 1.0))
        throw std::invalid_argument("dynamical_optimum: E must be in (0, 1)");
    DynamicalSolution s;
    const double e = target_error;
    s.w_m1 = lambert_w(-1, -2.0 * e / (std::exp(2.0)));
    s.stationary_over_dynamical = 1.0 + 2.0 / s.w_m1;
    s.c = std::sqrt(e) * std::sqrt(s.stationary_over_dynamical);
    s.tau = std::sqrt(s.w_m1 * s.w_m1 + 2.0 * s.w_m1) / std::sqrt(e);
    s.gamma = g * s.c * std::sqrt(f_n) / std::sqrt(h_n);
    s.t_ghz = s.tau / (g * kappa_eff * alpha * alpha) * std::sqrt(h_n) / std::pow(f_n, 1.5);
    (void)n_qubits;
    return s;
}

DynamicalSolution dynamical_optimum(int n_qubits, double target_error, double alpha, double g) {
    return dynamical_optimum(n_qubits, target_error, alpha, bn_kappa(n_qubits).kappa,
                             f_of_n(n_qubits), h_of_n(n_qubits), g);
}

FixedTimeSolution fixed_time_optimum(double t_max, int n_qubits, double g, double alpha,
                                     double kappa_eff, double f_n, double h_n) {
    if (!(t_max > 0.0)) throw std::invalid_argument("fixed_time_optimum: T must be > 0");
    (void)n_qubits;
    FixedTimeSolution s;
    const double a2 = alpha * alpha;
    const double arg = t_max * t_max * kappa_eff * kappa_eff * a2 * a2 * f_n * f_n * f_n * g * g /
                       (2.0 * h_n);
    s.w0 = lambert_w(0, arg);
    s.gamma_opt = s.w0 / (t_max * kappa_eff * a2 * f_n);
    s.error = h_n / (f_n * f_n * f_n) * s.w0 * (s.w0 + 2.0) /
              (t_max * t_max * kappa_eff * kappa_eff * a2 * a2 * g * g);
    return s;
}

double max_qubits_weak(double g_t, double error, double kappa_eff, double alpha) {
    const double l = std::log(1.0 / error);
    return kappa_eff * kappa_eff * g_t * g_t * std::pow(alpha, 4.0) * error / (l * l);
}

double max_qubits_strong(double g_t, double error) {
    return std::pow(g_t, 2.0 / 3.0) * std::pow(error, 1.0 / 3.0) / 16.0;
}

WeakDriveParams MinimizerResult::as_weak(int n_qubits, double alpha) const {
    WeakDriveParams p;
    p.n_qubits = n_qubits;
    p.a_f.assign(params.begin(), params.begin() + (n_qubits - 1));
    p.a_x = params[n_qubits - 1];
    p.gamma = params[n_qubits];
    p.alpha = alpha;
    return p;
}

namespace {

struct Objective {
    int n_qubits;
    double target_f;
    ModelKind kind;
    const MinimizerOptions& opts;
    double alpha;  // Omega = alpha * gamma scaling for the amplitudes
    mutable int evals = 0;

    // params: [A_1..A_{N-1}, A_X, gamma, gamma_f]
    double operator()(const std::vector<double>& x) const {
        ++evals;
        auto t = evaluate_time_to_fidelity_alpha(n_qubits, target_f, kind, x, opts, alpha);
        return t ? *t : std::numeric_limits<double>::infinity();
    }

    static std::optional<double> evaluate_time_to_fidelity_alpha(int n_qubits, double target_f,
                                                                 ModelKind kind,
                                                                 const std::vector<double>& x,
                                                                 const MinimizerOptions& opts,
                                                                 double alpha) {
        const int np = n_qubits + 2;
        if (static_cast<int>(x.size()) != np)
            throw std::invalid_argument("minimizer: parameter vector size mismatch");
        for (double v : x)
            if (!(v > 0.0) || !std::isfinite(v)) return std::nullopt;
        const double gamma = x[n_qubits];
        const double gamma_f = x[n_qubits + 1];
        const double omega = alpha * gamma;
        const double g = opts.g;

        SystemParams sys;
        sys.n_qubits = n_qubits;
        sys.g = g;
        sys.gamma_e = gamma;
        sys.gamma_0e = sys.gamma_1e = 0.5 * gamma;
        sys.gamma_f = gamma_f;
        sys.gamma_0f = sys.gamma_1f = 0.5 * gamma_f;
        std::vector<double> z(n_qubits - 1);
        for (int f = 1; f <= n_qubits - 1; ++f) z[f - 1] = x[f - 1] * omega;
        const double x_amp = x[n_qubits - 1] * omega;
        DriveSchedule sched = DriveSchedule::make(n_qubits, g, z, x_amp);

        const double gz = sector_transfer_rate(1, sched, sys, opts.power_broadening);
        if (!(gz > 0.0)) return std::nullopt;
        IntegratorConfig cfg;
        cfg.max_time = opts.horizon_units / gz;
        cfg.samples = opts.samples;

        const DensityMatrix rho0 = DensityMatrix::maximally_mixed(n_qubits);
        if (kind == ModelKind::compartment) {
            GhzLossRates loss = ghz_loss_rates(sched, sys, opts.power_broadening);
            RateBundle r;
            r.gamma_z_plus = 1.0 / pumping_time(std::max(1, n_qubits - 2), 0, sched, sys,
                                                opts.power_broadening);
            r.gamma_12 = sector_transfer_rate(n_qubits - 1, sched, sys, opts.power_broadening);
            r.gamma_x_plus = ghz_minus_depump_rate(sched, sys, opts.power_broadening);
            r.gamma_x_toss = loss.gamma_x_toss;
            r.gamma_z_minus = loss.gamma_z_minus;
            r.gamma_x_minus = loss.gamma_x_minus;
            CompartmentModel m = build_4compartment(n_qubits, r);
            // maximally mixed initial populations per compartment
            Eigen::VectorXd p0(4);
            const double dg = std::pow(2.0, n_qubits);
            double pmid = 0.0;
            for (int n = 1; n <= n_qubits - 2; ++n) pmid += binomial(n_qubits, n) / dg;
            p0 << binomial(n_qubits, n_qubits - 1) / dg, pmid, 1.0 / dg, 1.0 / dg;
            const int steps = cfg.samples;
            double prev_t = 0.0, prev_f = p0(3);
            if (prev_f >= target_f) return 0.0;
            for (int i = 1; i <= steps; ++i) {
                const double t = cfg.max_time * i / steps;
                const double f = compartment_populations(m, p0, t)(3);
                if (f >= target_f)
                    return prev_t + (t - prev_t) * (target_f - prev_f) / (f - prev_f);
                prev_t = t;
                prev_f = f;
            }
            return std::nullopt;
        }

        if (kind == ModelKind::effective) {
            EffectiveModel mz = build_effective_model(Basis::Z, sched, sys, opts.power_broadening,
                                                      opts.broadening_factor);
            EffectiveModel mx = build_effective_model(Basis::X, sched, sys, opts.power_broadening,
                                                      opts.broadening_factor);
            EffectiveModel combined = combine_effective_models(mz, mx, Basis::Z);
            return time_to_fidelity(combined.to_lindblad(), rho0, target_f, cfg);
        }

        const int k = kind == ModelKind::full_k1 ? 1 : 2;
        TruncatedSpace space = TruncatedSpace::make(n_qubits, k, true, true);
        LindbladModel full = build_full_model(sched, sys, space);
        return time_to_fidelity(full, rho0, target_f, cfg);
    }
};

/// Nelder-Mead in log-parameter space; deterministic for a fixed seed.
std::pair<std::vector<double>, double> nelder_mead(const Objective& obj,
                                                   const std::vector<double>& x0, double spread,
                                                   int max_evals) {
    const int n = static_cast<int>(x0.size());
    auto to_log = [](const std::vector<double>& v) {
        std::vector<double> l(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) l[i] = std::log(v[i]);
        return l;
    };
    auto from_log = [](const std::vector<double>& l) {
        std::vector<double> v(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) v[i] = std::exp(l[i]);
        return v;
    };
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    int evals = 0;
    auto eval = [&](const std::vector<double>& l) {
        ++evals;
        return obj(from_log(l));
    };
    std::vector<Vertex> simplex;
    std::vector<double> l0 = to_log(x0);
    simplex.push_back({l0, eval(l0)});
    for (int i = 0; i < n; ++i) {
        std::vector<double> l = l0;
        l[i] += spread;
        simplex.push_back({l, eval(l)});
    }
    auto order = [&]() {
        std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
            if (a.f != b.f) return a.f < b.f;
            return a.x < b.x;  // deterministic tie-break
        });
    };
    order();
    while (evals < max_evals) {
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) centroid[j] += simplex[i].x[j];
        }
        for (double& c : centroid) c /= n;
        const Vertex& worst = simplex[n];
        auto combine = [&](double coef) {
            std::vector<double> x(n);
            for (int j = 0; j < n; ++j) x[j] = centroid[j] + coef * (worst.x[j] - centroid[j]);
            return x;
        };
        std::vector<double> xr = combine(-1.0);
        const double fr = eval(xr);
        if (fr < simplex[0].f) {
            std::vector<double> xe = combine(-2.0);
            const double fe = eval(xe);
            if (fe < fr)
                simplex[n] = {xe, fe};
            else
                simplex[n] = {xr, fr};
        } else if (fr < simplex[n - 1].f) {
            simplex[n] = {xr, fr};
        } else {
            std::vector<double> xc = combine(0.5);
            const double fc = eval(xc);
            if (fc < worst.f) {
                simplex[n] = {xc, fc};
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        simplex[i].x[j] = 0.5 * (simplex[i].x[j] + simplex[0].x[j]);
                    simplex[i].f = eval(simplex[i].x);
                    if (evals >= max_evals) break;
                }
            }
        }
        order();
    }
    return {from_log(simplex[0].x), simplex[0].f};
}

}  // namespace

std::optional<double> evaluate_time_to_fidelity(int n_qubits, double target_f, ModelKind kind,
                                                const std::vector<double>& params,
                                                const MinimizerOptions& opts) {
    return Objective::evaluate_time_to_fidelity_alpha(n_qubits, target_f, kind, params, opts,
                                                      /*alpha=*/1.0);
}

MinimizerResult numeric_time_minimizer(int n_qubits, double target_f, ModelKind kind,
                                       const WeakDriveParams& seed, const MinimizerOptions& opts) {
    if (seed.n_qubits != n_qubits)
        throw std::invalid_argument("numeric_time_minimizer: seed qubit count mismatch");
    std::vector<double> x0;
    x0.insert(x0.end(), seed.a_f.begin(), seed.a_f.end());
    x0.push_back(seed.a_x);
    x0.push_back(seed.gamma);
    x0.push_back(seed.gamma);  // gamma_f seeded equal to gamma

    Objective obj{n_qubits, target_f, kind, opts, seed.alpha};
    const double seed_time = obj(x0);

    std::vector<double> best_x = x0;
    double best_f = seed_time;
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, opts.jitter);
    const int restarts = std::max(1, opts.restarts);
    const int per_restart = std::max(10, opts.budget / restarts);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> start = x0;
        if (r > 0) {
            for (double& v : start) v *= std::exp(gauss(rng));
        }
        auto [x, f] = nelder_mead(obj, start, 0.3, per_restart);
        if (f < best_f || (f == best_f && x < best_x)) {
            best_f = f;
            best_x = x;
        }
    }
    MinimizerResult res;
    res.params = best_x;
    res.time = best_f;
    res.reached = std::isfinite(best_f);
    res.evaluations = obj.evals;
    return res;
}

}  // namespace ghzpump
