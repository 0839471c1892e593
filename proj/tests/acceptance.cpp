// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ghzpump/dynamics.hpp"
#include "ghzpump/effective.hpp"
#include "ghzpump/lambertw.hpp"
#include "ghzpump/liouvillian.hpp"
#include "ghzpump/optimize.hpp"
#include "ghzpump/ratemodel.hpp"

using namespace ghzpump;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Protocol {
    SystemParams sys;
    DriveSchedule sched;
    double gamma_z;  // n1 = 1 transfer rate, the pacing scale
};

/// Analytic weak amplitudes with an explicit gamma (gamma_e = gamma_f) and
/// Omega = alpha gamma.
Protocol explicit_gamma_protocol(int n, double gamma, double alpha) {
    WeakDriveParams w = weak_drive_params(n, 0.05, alpha);  // amplitudes depend on N only
    w.gamma = gamma;
    Protocol p;
    p.sys = w.system(1.0);
    p.sched = w.schedule(1.0);
    p.gamma_z = sector_transfer_rate(1, p.sched, p.sys, false);
    return p;
}

LindbladModel combined_effective(const Protocol& p, bool broaden) {
    EffectiveModel mz = build_effective_model(Basis::Z, p.sched, p.sys, broaden);
    EffectiveModel mx = build_effective_model(Basis::X, p.sched, p.sys, broaden);
    return combine_effective_models(mz, mx, Basis::Z).to_lindblad();
}

void criterion1() {
    // N=3 full model (one excitation), weak analytic parameters, g t in
    // [0, 1e4]: trace deviation <= 1e-9 and min eigenvalue >= -1e-8 at every
    // sample.
    WeakDriveParams w = weak_drive_params(3, 0.05, 1.0);
    SystemParams sys = w.system(1.0);
    DriveSchedule sched = w.schedule(1.0);
    TruncatedSpace space = TruncatedSpace::make(3, 1, true, true);
    LindbladModel full = build_full_model(sched, sys, space);
    IntegratorConfig cfg;
    cfg.max_time = 1e4;
    cfg.samples = 101;
    cfg.rtol = 1e-9;
    cfg.atol = 1e-12;
    SimTrace tr = evolve(full, DensityMatrix::maximally_mixed(3), cfg);
    double max_dev = 0.0, min_eig = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        max_dev = std::max(max_dev, tr.trace_dev[i]);
        min_eig = std::min(min_eig, tr.min_eigenvalue[i]);
    }
    const bool pass = !tr.failed && max_dev <= 1e-9 && min_eig >= -1e-8 &&
                      tr.times.size() == 101;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Lindblad sanity, N=3 full k=1: max trace dev %.2e (<=1e-9), min eig %.2e "
                  "(>=-1e-8)", max_dev, min_eig);
    report(1, pass, buf);
}

void criterion2() {
    // effective vs one-excitation model: ground-state populations within
    // 0.02 absolute at all samples, for N in {2, 3}, g = 50 gamma_e,
    // Omega = 0.05 gamma_e.
    bool pass = true;
    std::string detail = "effective-operator oracle:";
    for (int n : {2, 3}) {
        Protocol p = explicit_gamma_protocol(n, 1.0 / 50.0, 0.05);
        IntegratorConfig cfg;
        cfg.max_time = 2.5 / p.gamma_z;
        cfg.samples = 40;
        cfg.rtol = 1e-8;
        cfg.atol = 1e-11;
        TruncatedSpace space = TruncatedSpace::make(n, 1, true, true);
        LindbladModel full = build_full_model(p.sched, p.sys, space);
        SimTrace tf = evolve(full, DensityMatrix::maximally_mixed(n), cfg);
        LindbladModel eff = combined_effective(p, false);
        SimTrace te = evolve(eff, DensityMatrix::maximally_mixed(n), cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < tf.times.size(); ++i) {
            for (int s = 0; s <= n; ++s)
                worst = std::max(worst, std::abs(tf.sector_pops[i](s) - te.sector_pops[i](s)));
            worst = std::max(worst, std::abs(tf.ghz_fidelity[i] - te.ghz_fidelity[i]));
            worst = std::max(worst, std::abs(tf.ghz_minus_pop[i] - te.ghz_minus_pop[i]));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), " N=%d max dev %.4f", n, worst);
        detail += buf;
        pass = pass && !tf.failed && !te.failed && worst <= 0.02;
    }
    report(2, pass, detail + " (<=0.02)");
}

void criterion3() {
    // steady-state error vs the 4-compartment prediction within a factor 2,
    // N=3, g = 100 gamma_e.
    Protocol p = explicit_gamma_protocol(3, 1.0 / 100.0, 0.2);
    SteadyStateResult ss = steady_state(combined_effective(p, false));
    const double e_sim = 1.0 - fidelity(ss.states.at(0), ghz_state(3, +1));
    RateBundle r = weak_rate_bundle(3, p.sys.gamma_e, 0.2 * p.sys.gamma_e, 1.0);
    const double e_pred =
        r.gamma_minus() / r.gamma_z_plus * (3.0 + 1.0 / std::log(3.0));
    const double ratio = e_sim / e_pred;
    const bool pass = !ss.degenerate && ratio >= 0.5 && ratio <= 2.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "steady-state error: simulated %.3e vs predicted %.3e, ratio %.3f (in [0.5, 2])",
                  e_sim, e_pred, ratio);
    report(3, pass, buf);
}

// shared between criteria 4 and 9
std::vector<double> g_optimized_times(6, 0.0);

void criterion4() {
    // optimized time-to-0.9 stays within the weak-driving bound
    // b(N) sqrt(N) log^2 N / (alpha^2 g sqrt(E)), with the stationary error
    // E from the dynamical split at target error 0.1.
    const double alpha = 0.3;
    const double dyn_error = 0.1;
    const double e_stat = dyn_error * dynamical_optimum(2, dyn_error, alpha).stationary_over_dynamical;
    const double b_table[] = {0.0, 0.0, 55.0, 33.0, 27.0, 25.0};
    bool pass = true;
    std::string detail = "scaling bound:";
    for (int n = 2; n <= 5; ++n) {
        WeakDriveParams seed = weak_drive_params(n, e_stat, alpha);
        MinimizerOptions mo;
        mo.budget = n <= 4 ? 120 : 90;
        mo.restarts = 3;
        mo.seed = 20260809;
        mo.jitter = 0.1;
        mo.power_broadening = true;
        mo.horizon_units = 60.0;
        mo.samples = 150;
        MinimizerResult res = numeric_time_minimizer(n, 0.9, ModelKind::effective, seed, mo);
        const double logn = std::log(double(n));
        const double bound =
            b_table[n] * std::sqrt(double(n)) * logn * logn / (alpha * alpha * std::sqrt(e_stat));
        g_optimized_times[n] = res.time;
        char buf[96];
        std::snprintf(buf, sizeof(buf), " N=%d t=%.1f bound=%.1f ratio=%.3f", n, res.time, bound,
                      res.time / bound);
        detail += buf;
        pass = pass && res.reached && res.time <= bound;
    }
    report(4, pass, detail);
}

void criterion5() {
    struct Entry {
        int n;
        double b;
        double kappa;
    };
    const Entry table[] = {{2, 55, 0.28}, {3, 33, 0.32},  {4, 27, 0.34},  {5, 25, 0.35},
                           {6, 23, 0.36}, {7, 22, 0.36},  {8, 21, 0.37},  {10, 20, 0.38},
                           {20, 18, 0.39}, {50, 17, 0.40}, {100, 16, 0.41}};
    bool pass = true;
    double worst_b = 0.0, worst_k = 0.0;
    for (const Entry& e : table) {
        BNKappa bk = bn_kappa(e.n);
        worst_b = std::max(worst_b, std::abs(bk.b - e.b));
        worst_k = std::max(worst_k, std::abs(bk.kappa - e.kappa));
        pass = pass && std::abs(bk.b - e.b) <= 1.0 && std::abs(bk.kappa - e.kappa) <= 0.01;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "table reproduction: max |b - table| %.2f (<=1), max |kappa - table| %.3f "
                  "(<=0.01)", worst_b, worst_k);
    report(5, pass, buf);
}

void criterion6() {
    bool pass = true;
    const double w = lambert_w(-1, -0.2 / std::exp(2.0));
    pass = pass && std::abs(w - (-5.27)) <= 0.01;
    const double f1 = std::sqrt(1.0 + 2.0 / w);
    const double f2 = std::sqrt(w * w + 2.0 * w);
    pass = pass && std::abs(f1 - 0.788) <= 0.005 && std::abs(f2 - 4.15) <= 0.005;
    const double w3 = lambert_w(-1, -2.0 * 0.03 / std::exp(2.0));
    const double f3 = std::sqrt(1.0 + 2.0 / w3);
    const double f4 = std::sqrt(w3 * w3 + 2.0 * w3);
    pass = pass && std::abs(f3 - 0.838) <= 0.005 && std::abs(f4 - 5.63) <= 0.005;

    double worst = 0.0;
    const double min_z = -std::exp(-1.0);
    for (int i = 0; i <= 400; ++i) {
        const double z = std::pow(10.0, -10.0 + 14.0 * i / 400.0);
        const double res = std::abs(lambert_w(0, z) * std::exp(lambert_w(0, z)) - z) /
                           std::max(1.0, std::abs(z));
        worst = std::max(worst, res);
    }
    for (int i = 0; i <= 400; ++i) {
        const double z = min_z * std::pow(10.0, -8.0 * i / 400.0);
        for (int branch : {0, -1}) {
            const double wv = lambert_w(branch, z);
            worst = std::max(worst, std::abs(wv * std::exp(wv) - z) / std::max(1.0, std::abs(z)));
        }
    }
    pass = pass && worst <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Lambert-W anchors: W=%.4f, factors %.4f/%.4f and %.4f/%.4f, max residual %.1e",
                  w, f1, f2, f3, f4, worst);
    report(6, pass, buf);
}

void criterion7() {
    bool pass = true;
    double worst_stark = 0.0, worst_ghz = 0.0;
    for (int n = 2; n <= 8; ++n) {
        Protocol p = explicit_gamma_protocol(n, 0.02, 0.3);
        for (Basis config : {Basis::Z, Basis::X}) {
            EffectiveModel m = build_effective_model(config, p.sched, p.sys, false);
            // scale: largest single-tone shift
            double scale = 0.0;
            for (const DriveTone& t : p.sched.config_tones(config)) {
                for (int sec = 0; sec <= n; ++sec)
                    scale = std::max(scale, std::abs(stark_shift(config, t, sec, p.sys)));
            }
            if (scale > 0.0)
                worst_stark = std::max(worst_stark, m.stark_diag.cwiseAbs().maxCoeff() / scale);

            EffectiveModel res = build_effective_model(config, p.sched, p.sys, false, 2.0,
                                                       EffectiveTerms::resonant_only);
            const Vector ghz = basis_change(ghz_state(n, +1), config).amps;
            for (const EffectiveJump& j : res.jumps) {
                const double viol = (j.op * ghz).norm() / std::sqrt(j.rate);
                worst_ghz = std::max(worst_ghz, viol);
            }
        }
    }
    pass = worst_stark <= 1e-12 && worst_ghz <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Stark cancellation %.1e (<=1e-12 rel), resonant-jump GHZ leakage %.1e "
                  "(<=1e-12)", worst_stark, worst_ghz);
    report(7, pass, buf);
}

void criterion8() {
    const double e = 0.04;
    bool pass = true;
    // asymptotic coefficients from a large-N evaluation
    const int big = 1000000;
    StrongDriveParams ps = strong_drive_params(big, e);
    const double logn = std::log(double(big));
    const double c_gamma = ps.gamma * std::sqrt(double(big)) * logn / std::sqrt(e);
    const double c_gamma_f = ps.gamma_f * std::sqrt(double(big)) / std::sqrt(e);
    const double c_omega = ps.omega_x * std::pow(double(big), 1.5) * std::sqrt(logn) / std::sqrt(e);
    const double c_tau = ps.tau_ghz * std::sqrt(e) / (std::pow(double(big), 1.5) * logn);
    CompartmentModel m3 = build_3compartment_strong(big, ps.gamma_z_plus, ps.e_z);
    const double c_rate = effective_rate(m3) / ps.gamma_z_plus;
    pass = pass && std::abs(c_gamma / 0.42 - 1.0) <= 0.02;
    pass = pass && std::abs(c_gamma_f / 0.80 - 1.0) <= 0.02;
    pass = pass && std::abs(c_omega / 0.24 - 1.0) <= 0.02;
    pass = pass && std::abs(c_rate / 0.216 - 1.0) <= 0.02;
    pass = pass && std::abs(c_tau / 66.0 - 1.0) <= 0.02;

    StrongDriveParams p100 = strong_drive_params(100, e);
    CompartmentModel m100 = build_3compartment_strong(100, p100.gamma_z_plus, p100.e_z);
    const double gp = effective_rate(m100);
    const double target = 0.0152 * std::sqrt(e) / (std::pow(100.0, 1.5) * std::log(100.0));
    pass = pass && std::abs(gp / target - 1.0) <= 0.10;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "strong-driving constants: gamma %.4f/0.42, gamma_f %.4f/0.80, Omega %.4f/0.24, "
                  "rate %.4f/0.216, tau %.1f/66, N=100 rate ratio %.3f",
                  c_gamma, c_gamma_f, c_omega, c_rate, c_tau, gp / target);
    report(8, pass, buf);
}

void criterion9() {
    // regression fixtures generated by this repository's own converged
    // optimizer runs (criterion 4 shares the computation)
    const double fixtures[] = {0.0, 0.0, -1.0, -1.0, -1.0, -1.0};
    bool pass = true;
    std::string detail = "regression-pinned optimizer times:";
    for (int n = 2; n <= 5; ++n) {
        const double got = g_optimized_times[n];
        char buf[80];
        if (fixtures[n] > 0.0) {
            const double rel = std::abs(got - fixtures[n]) / fixtures[n];
            pass = pass && rel <= 1e-4;
            std::snprintf(buf, sizeof(buf), " N=%d %.6f (pinned %.6f)", n, got, fixtures[n]);
        } else {
            std::snprintf(buf, sizeof(buf), " N=%d %.12f (UNPINNED)", n, got);
            pass = false;
        }
        detail += buf;
    }
    report(9, pass, detail + " [N=8/k=2 and absolute hardware timescales substituted by 1-8]");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
