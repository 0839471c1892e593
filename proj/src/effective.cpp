#include "ghzpump/effective.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

using Triplet = Eigen::Triplet<Complex>;

struct ConfigRates {
    double gamma_total;   // gamma_e or gamma_f
    double gamma_0;       // branching to |0>
    double gamma_1;       // branching to |1>
    double kappa;         // oscillator decay
};

ConfigRates pick(Basis config, const SystemParams& p) {
    if (config == Basis::Z) return {p.gamma_e, p.gamma_0e, p.gamma_1e, p.kappa_b};
    return {p.gamma_f, p.gamma_0f, p.gamma_1f, p.kappa_c};
}

}  // namespace

Complex effective_delta(Basis config, const DriveTone& tone, int sector_n,
                        const SystemParams& params) {
    if (sector_n < 0) throw std::invalid_argument("effective_delta: sector must be >= 0");
    const ConfigRates r = pick(config, params);
    const Complex Delta(tone.detuning, -0.5 * r.gamma_total);
    const Complex delta(tone.detuning, -0.5 * r.kappa);
    return Delta - static_cast<double>(sector_n) * params.g * params.g / delta;
}

EffectiveDetunings effective_detuning(Basis config, const DriveTone& tone, int sector_n,
                                      const SystemParams& params) {
    EffectiveDetunings out;
    out.delta_eff = effective_delta(config, tone, sector_n, params);
    if (sector_n == 0)
        throw std::domain_error("effective_detuning: no oscillator path in empty sector (n = 0)");
    const ConfigRates r = pick(config, params);
    const Complex Delta(tone.detuning, -0.5 * r.gamma_total);
    const Complex delta(tone.detuning, -0.5 * r.kappa);
    out.g_eff = params.g - Delta * delta / (static_cast<double>(sector_n) * params.g);
    return out;
}

double stark_shift(Basis config, const DriveTone& tone, int sector_n, const SystemParams& params) {
    if (sector_n == 0) return 0.0;
    const Complex dn = effective_delta(config, tone, sector_n, params);
    const Complex shift = static_cast<double>(sector_n) * tone.rabi * tone.rabi / (4.0 * dn);
    return -shift.real();
}

EffectiveModel build_effective_model(Basis config, const DriveSchedule& schedule,
                                     const SystemParams& params, bool power_broadening,
                                     double broadening_factor, EffectiveTerms terms) {
    params.validate();
    const int N = params.n_qubits;
    const Eigen::Index dim = Eigen::Index(1) << N;
    const ConfigRates cr = pick(config, params);

    EffectiveModel m;
    m.n_qubits = N;
    m.basis = config;  // operators expressed in the configuration's own basis
    m.stark_diag = Eigen::VectorXd::Zero(dim);
    m.power_broadened = power_broadening;

    for (const DriveTone& tone : schedule.config_tones(config)) {
        if (tone.rabi <= 0.0) continue;
        const double om2 = tone.rabi * tone.rabi;
        for (int n = 0; n <= N; ++n) {
            const SectorProjector sect = sector_projector(N, n, config);
            // AC Stark shift of the sector
            const double s = stark_shift(config, tone, n, params);
            for (Eigen::Index idx : sect.indices) m.stark_diag(idx) += s;

            if (n == 0) continue;  // no excitable atom, no oscillator path
            if (terms == EffectiveTerms::resonant_only && n != tone.index_f) continue;

            const EffectiveDetunings ed = effective_detuning(config, tone, n, params);
            const double broaden = power_broadening ? broadening_factor * n * om2 : 0.0;
            const double den_gamma = 4.0 * std::norm(ed.delta_eff) + broaden;
            const double den_kappa = 4.0 * std::norm(ed.g_eff) + broaden;
            const double r0 = cr.gamma_0 * om2 / den_gamma;
            const double r1 = cr.gamma_1 * om2 / den_gamma;
            const double rk = cr.kappa * om2 / den_kappa;

            if (rk > 0.0) {
                std::vector<Triplet> trips;
                for (Eigen::Index idx : sect.indices)
                    trips.emplace_back(idx, idx, Complex(std::sqrt(rk), 0.0));
                SparseOp op(dim, dim);
                op.setFromTriplets(trips.begin(), trips.end());
                m.jumps.push_back(
                    {std::move(op), config, tone.index_f, tone.sign, n, Channel::kappa, -1, rk});
            }
            for (int a = 0; a < N; ++a) {
                // pattern |0>_a<1| resp. |1>_a<1| on the configuration basis
                // (for X the roles are played by |0/1> expressed over |+/->)
                std::vector<Triplet> t0, t1;
                for (Eigen::Index idx : sect.indices) {
                    if (!((idx >> a) & 1)) continue;
                    const Eigen::Index lowered = idx & ~(Eigen::Index(1) << a);
                    if (config == Basis::Z) {
                        t0.emplace_back(lowered, idx, Complex(std::sqrt(r0), 0.0));
                        t1.emplace_back(idx, idx, Complex(std::sqrt(r1), 0.0));
                    } else {
                        // |0> = (|+> + |->)/sqrt2, |1> = (|+> - |->)/sqrt2
                        const double c0 = std::sqrt(r0 / 2.0);
                        const double c1 = std::sqrt(r1 / 2.0);
                        t0.emplace_back(lowered, idx, Complex(c0, 0.0));
                        t0.emplace_back(idx, idx, Complex(c0, 0.0));
                        t1.emplace_back(lowered, idx, Complex(c1, 0.0));
                        t1.emplace_back(idx, idx, Complex(-c1, 0.0));
                    }
                }
                if (r0 > 0.0) {
                    SparseOp op(dim, dim);
                    op.setFromTriplets(t0.begin(), t0.end());
                    m.jumps.push_back(
                        {std::move(op), config, tone.index_f, tone.sign, n, Channel::gamma0, a, r0});
                }
                if (r1 > 0.0) {
                    SparseOp op(dim, dim);
                    op.setFromTriplets(t1.begin(), t1.end());
                    m.jumps.push_back(
                        {std::move(op), config, tone.index_f, tone.sign, n, Channel::gamma1, a, r1});
                }
            }
        }
    }
    return m;
}

EffectiveModel rotate_effective_model(const EffectiveModel& m, Basis target) {
    if (m.basis == target) return m;
    EffectiveModel out = m;
    out.basis = target;
    const Eigen::Index dim = Eigen::Index(1) << m.n_qubits;
    for (EffectiveJump& j : out.jumps) {
        Matrix dense = Matrix(j.op);
        hadamard_transform(dense);
        j.op = dense.sparseView(1.0, 1e-15);
    }
    // diagonal Stark operator rotates into a dense matrix only through
    // to_lindblad(); keep the diagonal in the original basis alongside.
    if (m.stark_diag.cwiseAbs().maxCoeff() > 0.0) {
        Matrix h = m.stark_diag.cast<Complex>().asDiagonal();
        hadamard_transform(h);
        // store back as diagonal if it stayed diagonal, else reject
        Eigen::VectorXd diag = h.diagonal().real();
        Matrix offdiag = h - Matrix(diag.cast<Complex>().asDiagonal());
        if (offdiag.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, diag.cwiseAbs().maxCoeff()))
            throw std::invalid_argument(
                "rotate_effective_model: non-vanishing Stark Hamiltonian is not diagonal in the "
                "target basis; cancel the shifts (paired +/- tones) before rotating");
        out.stark_diag = diag;
    }
    return out;
}

EffectiveModel combine_effective_models(const EffectiveModel& z, const EffectiveModel& x,
                                        Basis target) {
    if (z.n_qubits != x.n_qubits)
        throw std::invalid_argument("combine_effective_models: qubit count mismatch");
    EffectiveModel a = rotate_effective_model(z, target);
    EffectiveModel b = rotate_effective_model(x, target);
    EffectiveModel out = std::move(a);
    out.jumps.insert(out.jumps.end(), b.jumps.begin(), b.jumps.end());
    out.stark_diag += b.stark_diag;
    out.power_broadened = z.power_broadened || x.power_broadened;
    return out;
}

LindbladModel EffectiveModel::to_lindblad() const {
    LindbladModel m;
    m.basis = basis;
    m.n_qubits = n_qubits;
    m.dim = Eigen::Index(1) << n_qubits;
    m.ground_dim = m.dim;
    std::vector<Triplet> trips;
    for (Eigen::Index i = 0; i < m.dim; ++i) {
        if (stark_diag(i) != 0.0) trips.emplace_back(i, i, Complex(stark_diag(i), 0.0));
    }
    SparseOp h(m.dim, m.dim);
    h.setFromTriplets(trips.begin(), trips.end());
    m.h_static = std::move(h);
    m.jumps.reserve(jumps.size());
    for (const EffectiveJump& j : jumps) m.jumps.push_back(j.op);
    return m;
}

double excited_population(const DriveSchedule& schedule, const SystemParams& params) {
    const int N = params.n_qubits;
    const double g2 = params.g * params.g;
    double total = 0.0;
    for (const DriveTone& t : schedule.config_tones(Basis::Z)) {
        if (t.rabi <= 0.0) continue;
        const double sN = std::sqrt(static_cast<double>(N));
        const double sF = std::sqrt(static_cast<double>(t.index_f));
        total += N * t.rabi / (8.0 * (sN + sF) * (sN + sF) * g2);
        if (sN != sF) total += N * t.rabi / (8.0 * (sN - sF) * (sN - sF) * g2);
    }
    for (const DriveTone& t : schedule.config_tones(Basis::X)) {
        if (t.rabi <= 0.0) continue;
        const double sF = std::sqrt(static_cast<double>(t.index_f));
        for (int nm = 2; nm <= N; nm += 2) {
            const double w = binomial(N, nm);
            const double sn = std::sqrt(static_cast<double>(nm));
            total += w * nm * t.rabi / (4.0 * (sn + sF) * (sn + sF) * g2);
            total += w * nm * t.rabi / (4.0 * (sn - sF) * (sn - sF) * g2);
        }
    }
    return total;
}

}  // namespace ghzpump
