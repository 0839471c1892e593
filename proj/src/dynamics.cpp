#include "ghzpump/dynamics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseOp sparse_kron(const SparseOp& a, const SparseOp& b) {
    SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (SparseOp::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (SparseOp::InnerIterator ib(b, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * b.rows() + ib.row(),
                                       ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
    return out;
}

SparseOp identity(Eigen::Index dim) {
    SparseOp id(dim, dim);
    id.setIdentity();
    return id;
}

/// Commutator superoperator in column-major vec convention:
/// vec(-i (M rho - rho M)) = -i (I (x) M - M^T (x) I) vec(rho).
SparseOp commutator_superop(const SparseOp& m) {
    const Eigen::Index dim = m.rows();
    const SparseOp id = identity(dim);
    SparseOp out = sparse_kron(id, m) - sparse_kron(SparseOp(m.transpose()), id);
    out = out * Complex(0.0, -1.0);
    out.makeCompressed();
    return out;
}

struct CompiledLindblad {
    Eigen::Index dim = 0;
    Eigen::Index vdim = 0;
    SparseOp s_static;
    struct TonePart {
        double freq;
        SparseOp plus;
        SparseOp minus;
    };
    std::vector<TonePart> tone_parts;

    explicit CompiledLindblad(const LindbladModel& model) {
        dim = model.dim;
        vdim = dim * dim;
        const SparseOp id = identity(dim);
        SparseOp s = commutator_superop(model.h_static);
        SparseOp sum_ldl(dim, dim);
        for (const SparseOp& l : model.jumps) {
            if (l.nonZeros() == 0) continue;
            SparseOp lc = l.conjugate();
            s += sparse_kron(lc, l);
            sum_ldl += SparseOp(l.adjoint()) * l;
        }
        sum_ldl.makeCompressed();
        s -= Complex(0.5, 0.0) * (sparse_kron(id, sum_ldl) +
                                  sparse_kron(SparseOp(sum_ldl.transpose()), id));
        s.makeCompressed();
        s_static = std::move(s);
        for (const HamiltonianTone& tone : model.tones) {
            if (tone.op.nonZeros() == 0) continue;
            tone_parts.push_back({tone.freq, commutator_superop(tone.op),
                                  commutator_superop(SparseOp(tone.op.adjoint()))});
        }
    }

    bool time_dependent() const { return !tone_parts.empty(); }

    void apply(double t, const Vector& y, Vector& out) const {
        out.noalias() = s_static * y;
        for (const TonePart& p : tone_parts) {
            const Complex ph = std::polar(1.0, p.freq * t);
            out.noalias() += ph * (p.plus * y);
            out.noalias() += std::conj(ph) * (p.minus * y);
        }
    }
};

void hermitize(Vector& y, Eigen::Index dim) {
    for (Eigen::Index j = 0; j < dim; ++j) {
        y(j + dim * j) = Complex(y(j + dim * j).real(), 0.0);
        for (Eigen::Index i = j + 1; i < dim; ++i) {
            const Complex a = y(i + dim * j);
            const Complex b = y(j + dim * i);
            const Complex m = 0.5 * (a + std::conj(b));
            y(i + dim * j) = m;
            y(j + dim * i) = std::conj(m);
        }
    }
}

// Dormand-Prince 5(4) coefficients
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

struct Stepper {
    const CompiledLindblad& lind;
    const IntegratorConfig& cfg;
    double h = 0.0;
    std::array<Vector, 7> k;
    Vector scratch;

    Stepper(const CompiledLindblad& l, const IntegratorConfig& c) : lind(l), cfg(c) {
        for (auto& v : k) v.resize(l.vdim);
        scratch.resize(l.vdim);
    }

    /// Advances y in place from t0 to t1. Returns false on step underflow.
    bool integrate_to(Vector& y, double t0, double t1, std::string* diag) {
        if (t1 <= t0) return true;
        double t = t0;
        if (h <= 0.0) h = (cfg.initial_step > 0.0) ? cfg.initial_step : (t1 - t0) / 100.0;
        while (t < t1) {
            const double step = std::min(h, t1 - t);
            lind.apply(t, y, k[0]);
            for (int s = 1; s < 7; ++s) {
                scratch = y;
                for (int j = 0; j < s; ++j) {
                    if (kA[s][j] != 0.0) scratch.noalias() += (step * kA[s][j]) * k[j];
                }
                lind.apply(t + kC[s] * step, scratch, k[s]);
            }
            // 5th-order solution is stage 7's argument (FSAL structure)
            Vector ynew = y;
            for (int j = 0; j < 6; ++j)
                if (kA[6][j] != 0.0) ynew.noalias() += (step * kA[6][j]) * k[j];
            double err = 0.0;
            for (Eigen::Index i = 0; i < lind.vdim; ++i) {
                Complex e = 0.0;
                for (int j = 0; j < 7; ++j)
                    if (kE[j] != 0.0) e += kE[j] * k[j](i);
                e *= step;
                const double sc =
                    cfg.atol + cfg.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
                const double r = std::abs(e) / sc;
                err += r * r;
            }
            err = std::sqrt(err / static_cast<double>(lind.vdim));
            if (err <= 1.0) {
                t += step;
                y.swap(ynew);
                hermitize(y, lind.dim);
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
            h = step * fac;
            if (h < 1e-14 * std::max(1.0, std::abs(t1))) {
                if (diag) *diag = "step-size underflow at t = " + std::to_string(t);
                return false;
            }
        }
        return true;
    }
};

struct Observables {
    Vector ghz_plus;
    Vector ghz_minus;
    std::vector<std::vector<Eigen::Index>> sectors;  // per n, ground indices
    Eigen::Index ground_dim;
    Eigen::Index dim;
    int n_qubits;

    Observables(const LindbladModel& model) {
        n_qubits = model.n_qubits;
        dim = model.dim;
        ground_dim = model.ground_dim;
        ghz_plus = basis_change(ghz_state(model.n_qubits, +1), model.basis).amps;
        ghz_minus = basis_change(ghz_state(model.n_qubits, -1), model.basis).amps;
        sectors.resize(model.n_qubits + 1);
        for (Eigen::Index s = 0; s < ground_dim; ++s)
            sectors[popcount(static_cast<std::uint64_t>(s))].push_back(s);
    }

    void record(const Vector& y, double t, const IntegratorConfig& cfg, SimTrace& tr) const {
        Eigen::Map<const Matrix> rho(y.data(), dim, dim);
        Complex trace = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) trace += rho(i, i);
        const double tdev = std::abs(trace - Complex(1.0, 0.0));
        const Matrix rho_g = rho.topLeftCorner(ground_dim, ground_dim);
        const double f_plus = (ghz_plus.adjoint() * rho_g * ghz_plus).value().real();
        const double f_minus = (ghz_minus.adjoint() * rho_g * ghz_minus).value().real();
        Eigen::VectorXd pops(n_qubits + 1);
        for (int n = 0; n <= n_qubits; ++n) {
            double p = 0.0;
            for (Eigen::Index i : sectors[n]) p += rho(i, i).real();
            pops(n) = p;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();

        tr.times.push_back(t);
        tr.ghz_fidelity.push_back(f_plus);
        tr.ghz_minus_pop.push_back(f_minus);
        tr.sector_pops.push_back(std::move(pops));
        tr.trace_dev.push_back(tdev);
        tr.min_eigenvalue.push_back(min_eig);
        if (tdev > cfg.trace_tolerance && !tr.failed) {
            tr.failed = true;
            tr.diagnostic = "trace deviation " + std::to_string(tdev) + " at t = " +
                            std::to_string(t);
        }
        if (min_eig < cfg.positivity_tolerance && !tr.failed) {
            tr.failed = true;
            tr.diagnostic = "positivity violation " + std::to_string(min_eig) + " at t = " +
                            std::to_string(t);
        }
    }
};

Vector initial_vec(const LindbladModel& model, const DensityMatrix& rho0) {
    DensityMatrix r = rho0;
    if (r.mat.rows() == model.dim && model.dim != model.ground_dim) {
        if (r.basis != model.basis)
            throw std::invalid_argument("evolve: cannot change basis of an excitation-bearing state");
    } else if (r.mat.rows() == model.ground_dim) {
        r = basis_change(r, model.basis);
    } else {
        throw std::invalid_argument("evolve: density matrix dimension matches neither the model "
                                    "nor its ground space");
    }
    Vector y = Vector::Zero(model.dim * model.dim);
    Eigen::Map<Matrix> rho(y.data(), model.dim, model.dim);
    rho.topLeftCorner(r.mat.rows(), r.mat.cols()) = r.mat;
    return y;
}

std::vector<double> sample_times(const IntegratorConfig& cfg) {
    const int n = std::max(2, cfg.samples);
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = cfg.max_time * i / (n - 1);
    return ts;
}

double fastest_rate(const LindbladModel& m) {
    Eigen::VectorXd outflow = Eigen::VectorXd::Zero(m.dim);
    for (const SparseOp& l : m.jumps) {
        for (int kcol = 0; kcol < l.outerSize(); ++kcol) {
            for (SparseOp::InnerIterator it(l, kcol); it; ++it)
                outflow(it.col()) += std::norm(it.value());
        }
    }
    return outflow.size() ? outflow.maxCoeff() : 0.0;
}

double ghz_fidelity_of(const Vector& y, const Observables& obs) {
    Eigen::Map<const Matrix> rho(y.data(), obs.dim, obs.dim);
    const Matrix rho_g = rho.topLeftCorner(obs.ground_dim, obs.ground_dim);
    return (obs.ghz_plus.adjoint() * rho_g * obs.ghz_plus).value().real();
}

}  // namespace

SimTrace evolve(const LindbladModel& model, const DensityMatrix& rho0,
                const IntegratorConfig& cfg) {
    const CompiledLindblad lind(model);
    const Observables obs(model);
    Vector y = initial_vec(model, rho0);
    SimTrace tr;
    const std::vector<double> ts = sample_times(cfg);

    if (cfg.use_expm_stepping && !lind.time_dependent() && lind.vdim <= 2048) {
        const double dt = ts[1] - ts[0];
        const Matrix prop = (Matrix(lind.s_static) * dt).exp();
        obs.record(y, ts[0], cfg, tr);
        for (std::size_t i = 1; i < ts.size(); ++i) {
            y = prop * y;
            hermitize(y, lind.dim);
            obs.record(y, ts[i], cfg, tr);
        }
        return tr;
    }

    Stepper stepper(lind, cfg);
    obs.record(y, ts[0], cfg, tr);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        std::string diag;
        if (!stepper.integrate_to(y, ts[i - 1], ts[i], &diag)) {
            tr.failed = true;
            tr.diagnostic = diag;
            break;
        }
        obs.record(y, ts[i], cfg, tr);
    }
    return tr;
}

SimTrace trotter_evolve(const LindbladModel& model_z, const LindbladModel& model_x,
                        const DensityMatrix& rho0, const IntegratorConfig& cfg) {
    if (model_z.dim != model_z.ground_dim || model_x.dim != model_x.ground_dim)
        throw std::invalid_argument("trotter_evolve: both models must act on the ground space");
    if (model_z.dim != model_x.dim)
        throw std::invalid_argument("trotter_evolve: model dimensions differ");

    if (model_z.basis == model_x.basis)
        throw std::invalid_argument("trotter_evolve: the two models must carry different bases");
    const CompiledLindblad lz(model_z), lx(model_x);
    if (lz.time_dependent() || lx.time_dependent())
        throw std::invalid_argument("trotter_evolve: time-dependent models are not supported");
    const Observables obs_z(model_z);
    const Eigen::Index dim = model_z.dim;

    double slice = cfg.trotter_slice;
    if (slice <= 0.0) {
        const double rate = std::max(fastest_rate(model_z), fastest_rate(model_x));
        if (rate <= 0.0) throw std::invalid_argument("trotter_evolve: no decay rate to set a slice");
        slice = 0.1 / rate;
    }

    DensityMatrix r0 = basis_change(rho0, model_z.basis);
    Vector y = Vector::Zero(dim * dim);
    Eigen::Map<Matrix>(y.data(), dim, dim) = r0.mat;

    SimTrace tr;
    const std::vector<double> ts = sample_times(cfg);
    std::size_t next = 0;
    double t = 0.0;
    Stepper sz(lz, cfg), sx(lx, cfg);

    auto record_pending = [&](double tnow) {
        while (next < ts.size() && ts[next] <= tnow + 1e-12 * std::max(1.0, tnow)) {
            obs_z.record(y, ts[next], cfg, tr);
            ++next;
        }
    };
    auto switch_basis = [&]() {
        Eigen::Map<Matrix> rho(y.data(), dim, dim);
        Matrix m = rho;
        hadamard_transform(m);
        rho = m;
    };

    // One Z slice followed by one X slice realizes a single slice of wall
    // time: the split product converges to the simultaneous action of both
    // generators. The state returns to the Z basis at every pair boundary.
    record_pending(0.0);
    while (t < cfg.max_time && !tr.failed) {
        std::string diag;
        if (!sz.integrate_to(y, 0.0, slice, &diag)) {
            tr.failed = true;
            tr.diagnostic = diag;
            break;
        }
        switch_basis();
        if (!sx.integrate_to(y, 0.0, slice, &diag)) {
            tr.failed = true;
            tr.diagnostic = diag;
            break;
        }
        switch_basis();
        t += slice;
        record_pending(t);
    }
    return tr;
}

SteadyStateResult steady_state(const LindbladModel& model) {
    const CompiledLindblad lind(model);
    if (lind.time_dependent())
        throw std::invalid_argument("steady_state: model must be time-independent");
    SteadyStateResult out;
    const Eigen::Index dim = model.dim;

    if (lind.vdim <= 2500) {
        Matrix s = Matrix(lind.s_static);
        Eigen::BDCSVD<Matrix> svd(s, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() ? sv(0) : 0.0;
        const double tol = std::max(1e-12 * smax, 1e-300);
        std::vector<Eigen::Index> null_idx;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= tol) null_idx.push_back(i);
        if (null_idx.empty()) null_idx.push_back(sv.size() - 1);
        out.degenerate = null_idx.size() > 1;
        for (Eigen::Index i : null_idx) {
            Vector v = svd.matrixV().col(i);
            Matrix rho = Eigen::Map<Matrix>(v.data(), dim, dim);
            Matrix h = 0.5 * (rho + rho.adjoint());
            if (h.cwiseAbs().maxCoeff() < 1e-12 * rho.cwiseAbs().maxCoeff())
                h = Complex(0.0, -0.5) * (rho - rho.adjoint());
            const double tr = h.trace().real();
            if (std::abs(tr) > 1e-10)
                h /= tr;
            else
                h /= h.norm();
            out.states.push_back(DensityMatrix{h, model.basis});
            out.residual = std::max(
                out.residual,
                (lind.s_static * Eigen::Map<const Vector>(h.data(), dim * dim)).cwiseAbs().maxCoeff());
        }
        return out;
    }

    // large systems: long-time integration from the maximally mixed state
    IntegratorConfig cfg;
    const double rate = fastest_rate(model);
    if (rate <= 0.0) throw std::invalid_argument("steady_state: no dissipation");
    Vector y = Vector::Zero(lind.vdim);
    Eigen::Map<Matrix>(y.data(), dim, dim) = Matrix::Identity(dim, dim) / double(dim);
    Stepper st(lind, cfg);
    const double tau = 10.0 / rate;
    double t = 0.0;
    for (int it = 0; it < 1000; ++it) {
        Vector prev = y;
        std::string diag;
        if (!st.integrate_to(y, t, t + tau, &diag))
            throw std::runtime_error("steady_state: " + diag);
        t += tau;
        if ((y - prev).cwiseAbs().sum() <= 1e-8) break;
    }
    Matrix rho = Eigen::Map<Matrix>(y.data(), dim, dim);
    rho /= rho.trace().real();
    out.states.push_back(DensityMatrix{rho, model.basis});
    out.residual = (lind.s_static * Eigen::Map<const Vector>(rho.data(), dim * dim))
                       .cwiseAbs()
                       .maxCoeff();
    return out;
}

std::optional<double> time_to_fidelity(const LindbladModel& model, const DensityMatrix& rho0,
                                       double target_f, const IntegratorConfig& cfg) {
    if (!(target_f > 0.0 && target_f < 1.0))
        throw std::invalid_argument("time_to_fidelity: target must be in (0, 1)");
    const CompiledLindblad lind(model);
    const Observables obs(model);
    Vector y = initial_vec(model, rho0);
    if (ghz_fidelity_of(y, obs) >= target_f) return 0.0;

    const std::vector<double> ts = sample_times(cfg);
    Stepper st(lind, cfg);
    Vector y_prev = y;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        std::string diag;
        y_prev = y;
        if (!st.integrate_to(y, ts[i - 1], ts[i], &diag))
            throw std::runtime_error("time_to_fidelity: " + diag);
        if (ghz_fidelity_of(y, obs) >= target_f) {
            double lo = ts[i - 1], hi = ts[i];
            Vector y_lo = y_prev;
            while (hi - lo > 1e-3 * hi) {
                const double mid = 0.5 * (lo + hi);
                Vector ym = y_lo;
                Stepper sm(lind, cfg);
                std::string d2;
                if (!sm.integrate_to(ym, lo, mid, &d2))
                    throw std::runtime_error("time_to_fidelity: " + d2);
                if (ghz_fidelity_of(ym, obs) >= target_f) {
                    hi = mid;
                } else {
                    lo = mid;
                    y_lo.swap(ym);
                }
            }
            return hi;
        }
    }
    return std::nullopt;
}

std::optional<double> time_to_fidelity(const LindbladModel& model_z, const LindbladModel& model_x,
                                       const DensityMatrix& rho0, double target_f,
                                       const IntegratorConfig& cfg) {
    if (!(target_f > 0.0 && target_f < 1.0))
        throw std::invalid_argument("time_to_fidelity: target must be in (0, 1)");
    SimTrace tr = trotter_evolve(model_z, model_x, rho0, cfg);
    if (tr.failed) throw std::runtime_error("time_to_fidelity: " + tr.diagnostic);
    if (tr.ghz_fidelity.empty()) return std::nullopt;
    if (tr.ghz_fidelity.front() >= target_f) return 0.0;
    for (std::size_t i = 1; i < tr.times.size(); ++i) {
        if (tr.ghz_fidelity[i] >= target_f) {
            const double f0 = tr.ghz_fidelity[i - 1], f1 = tr.ghz_fidelity[i];
            const double t0 = tr.times[i - 1], t1 = tr.times[i];
            return t0 + (t1 - t0) * (target_f - f0) / std::max(f1 - f0, 1e-300);
        }
    }
    return std::nullopt;
}

}  // namespace ghzpump
