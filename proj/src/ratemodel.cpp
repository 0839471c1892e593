#include "ghzpump/ratemodel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <stdexcept>

#include "ghzpump/states.hpp"

namespace ghzpump {

namespace {

/// Per-sign resonant Rabi frequency of the tone addressing sector n (0 when
/// that tone is absent). Validates that both signs carry the same amplitude.
double tone_amplitude(Basis config, int f, const DriveSchedule& schedule) {
    double amp = -1.0;
    for (const DriveTone& t : schedule.tones) {
        if (t.config != config || t.index_f != f) continue;
        if (amp >= 0.0 && std::abs(amp - t.rabi) > 1e-12 * std::max(1.0, amp))
            throw std::invalid_argument("rate model requires equal +/- tone amplitudes");
        amp = t.rabi;
    }
    return amp < 0.0 ? 0.0 : amp;
}

}  // namespace

double sector_transfer_rate(int n1, const DriveSchedule& schedule, const SystemParams& params,
                            bool power_broadening) {
    if (n1 < 1 || n1 > params.n_qubits - 1)
        throw std::invalid_argument("sector_transfer_rate: n1 must be in [1, N-1]");
    const double om = tone_amplitude(Basis::Z, n1, schedule);
    const double gk = params.gamma_e + params.kappa_b;
    const double den = gk * gk + (power_broadening ? 2.0 * n1 * om * om : 0.0);
    return 2.0 * n1 * params.gamma_0e * om * om / den;
}

double pumping_time(int n_from, int n_to, const DriveSchedule& schedule,
                    const SystemParams& params, bool power_broadening) {
    if (!(n_from > n_to && n_to >= 0))
        throw std::invalid_argument("pumping_time: need n_from > n_to >= 0");
    double t = 0.0;
    for (int n = n_to + 1; n <= n_from; ++n)
        t += 1.0 / sector_transfer_rate(n, schedule, params, power_broadening);
    return t;
}

double ghz_pumping_time(const DriveSchedule& schedule, const SystemParams& params,
                        bool power_broadening) {
    return 2.0 * pumping_time(params.n_qubits - 1, 0, schedule, params, power_broadening);
}

GhzLossRates ghz_loss_rates(const DriveSchedule& schedule, const SystemParams& params,
                            bool power_broadening) {
    if (!params.symmetric_branching())
        throw std::invalid_argument("ghz_loss_rates: closed forms assume symmetric branching");
    const int N = params.n_qubits;
    const double g2 = params.g * params.g;
    GhzLossRates out;

    double zsum = 0.0;
    for (int f = 1; f <= N - 1; ++f) {
        const double om = tone_amplitude(Basis::Z, f, schedule);
        zsum += f * om * om / ((N - f) * double(N - f));
    }
    out.gamma_z_minus = 3.0 * params.gamma_e * N / (16.0 * g2) * zsum;

    const double pow2 = std::pow(2.0, N - 1);
    double xsum = 0.0;
    for (int nm = 2; nm <= N; nm += 2) {
        const double w = binomial(N, nm) * nm / pow2;
        double inner = 0.0;
        for (int f = 1; f <= N; f += 2) {
            const double om = tone_amplitude(Basis::X, f, schedule);
            inner += f * om * om / ((f - nm) * double(f - nm));
        }
        xsum += w * inner;
    }
    out.gamma_x_minus = params.gamma_f / (2.0 * g2) * xsum;

    const double gkc = params.gamma_f + params.kappa_c;
    double toss = 0.0;
    for (int f = 1; f <= N; f += 2) {
        const double om = tone_amplitude(Basis::X, f, schedule);
        const double den = gkc * gkc + (power_broadening ? 2.0 * f * om * om : 0.0);
        toss += params.gamma_f / den * binomial(N, f) * f * om * om / pow2;
    }
    out.gamma_x_toss = toss;
    return out;
}

double ghz_minus_depump_rate(const DriveSchedule& schedule, const SystemParams& params,
                             bool power_broadening) {
    return 2.0 * ghz_loss_rates(schedule, params, power_broadening).gamma_x_toss;
}

RateBundle weak_rate_bundle(int n_qubits, double gamma, double omega, double g) {
    if (n_qubits < 2) throw std::invalid_argument("weak_rate_bundle: N >= 2 required");
    const double logn = std::log(static_cast<double>(n_qubits));
    RateBundle r;
    r.gamma_z_plus = omega * omega / gamma * 2.0 / (3.0 * logn);
    r.gamma_12 = r.gamma_z_plus * 3.0 * logn;
    r.gamma_x_plus = r.gamma_z_plus;
    r.gamma_x_toss = 0.5 * r.gamma_z_plus;
    r.gamma_z_minus = gamma * omega * omega / (g * g) * 3.0 * n_qubits * logn / 8.0;
    r.gamma_x_minus = gamma * omega * omega / (g * g) * 5.0 * n_qubits / (24.0 * logn);
    return r;
}

CompartmentModel build_4compartment(int n_qubits, const RateBundle& rates) {
    for (double v : {rates.gamma_z_plus, rates.gamma_x_plus, rates.gamma_x_toss, rates.gamma_12,
                     rates.gamma_z_minus, rates.gamma_x_minus})
        if (v < 0.0) throw std::invalid_argument("build_4compartment: negative rate");
    const double gm = rates.gamma_minus();
    CompartmentModel m;
    m.labels = {"n1=N-1", "1<=n1<=N-2", "GHZ-", "GHZ"};
    m.n_qubits = n_qubits;
    m.rate_unit = rates.gamma_z_plus;
    m.ghz_index = 3;
    m.ghz_minus_index = 2;
    Eigen::MatrixXd t(4, 4);
    t << -rates.gamma_12, rates.gamma_x_toss, rates.gamma_x_plus, gm,
         rates.gamma_12, -(rates.gamma_x_toss + rates.gamma_z_plus), 0.0, 0.0,
         0.0, 0.5 * rates.gamma_z_plus, -rates.gamma_x_plus, 0.0,
         0.0, 0.5 * rates.gamma_z_plus, 0.0, -gm;
    m.transition = t;
    return m;
}

CompartmentModel build_3compartment_strong(int n_qubits, double gamma_z_plus, double e_z) {
    if (gamma_z_plus <= 0.0) throw std::invalid_argument("build_3compartment_strong: rate <= 0");
    const double gm = 2.0 * e_z * gamma_z_plus;  // Z and X losses both tuned to E_Z each
    CompartmentModel m;
    m.labels = {"1<=n1<=N-1", "GHZ-", "GHZ"};
    m.n_qubits = n_qubits;
    m.rate_unit = gamma_z_plus;
    m.ghz_index = 2;
    m.ghz_minus_index = 1;
    const double gp = gamma_z_plus;
    Eigen::MatrixXd t(3, 3);
    t << -2.5 * gp, gp, gm,
         1.5 * gp, -gp, 0.0,
         gp, 0.0, -gm;
    m.transition = t;
    return m;
}

Eigen::VectorXd compartment_steady_state(const CompartmentModel& model) {
    const Eigen::Index n = model.transition.rows();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(model.transition);
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1)
        throw std::runtime_error("compartment_steady_state: degenerate null space (dimension " +
                                 std::to_string(kernel.cols()) + ")");
    Eigen::VectorXd p = kernel.col(0);
    if (p.sum() < 0.0) p = -p;
    p /= p.sum();
    for (Eigen::Index i = 0; i < n; ++i)
        if (p(i) < -1e-12) throw std::runtime_error("compartment_steady_state: negative entry");
    return p;
}

StationaryError stationary_error(const CompartmentModel& model) {
    StationaryError e;
    const Eigen::VectorXd p = compartment_steady_state(model);
    e.exact = 1.0 - p(model.ghz_index);
    const double gm = -model.transition(model.ghz_index, model.ghz_index);
    const double ratio = gm / model.rate_unit;
    if (model.labels.size() == 4) {
        const double logn = std::log(static_cast<double>(model.n_qubits));
        e.approx = ratio * (3.0 + 1.0 / logn);
    } else {
        e.approx = 2.5 * ratio;
    }
    return e;
}

Eigen::VectorXd compartment_populations(const CompartmentModel& model, const Eigen::VectorXd& p0,
                                        double t, bool drop_loss) {
    Eigen::MatrixXd tm = model.transition;
    if (drop_loss) tm.col(model.ghz_index).setZero();
    return (tm * t).exp() * p0;
}

double effective_rate(const CompartmentModel& model, bool drop_loss, double t0) {
    if (t0 <= 0.0) t0 = 1.0 / model.rate_unit;
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(model.transition.rows());
    p0(model.ghz_minus_index) = 1.0;
    const Eigen::VectorXd p = compartment_populations(model, p0, t0, drop_loss);
    double pg = p(model.ghz_index);
    if (pg >= 1.0) {
        pg = std::nextafter(1.0, 0.0);  // clamp; the exponential-rate reading breaks down here
    }
    return -std::log(1.0 - pg) / t0;
}

BNKappa bn_kappa(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("bn_kappa: N >= 2 required");
    const double logn = std::log(static_cast<double>(n_qubits));
    RateBundle r = weak_rate_bundle(n_qubits, 1.0, 1.0, 1.0);
    const double unit = r.gamma_z_plus;
    CompartmentModel m = build_4compartment(n_qubits, r);
    const double gamma_plus = effective_rate(m, /*drop_loss=*/true);
    const double ratefrac = gamma_plus / unit;  // -log(1 - P4(t0)) / (Gamma_Z^+ t0)
    BNKappa out;
    out.b = 9.0 * std::sqrt(3.0) / 8.0 / ratefrac *
            std::sqrt((1.0 + 5.0 / (9.0 * logn * logn)) * (1.0 + 1.0 / (3.0 * logn)));
    out.kappa = 3.0 * ratefrac * (1.0 + 1.0 / (3.0 * logn));
    return out;
}

}  // namespace ghzpump
