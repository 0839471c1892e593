#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghzpump/drive.hpp"
#include "ghzpump/dynamics.hpp"
#include "ghzpump/effective.hpp"
#include "ghzpump/lambertw.hpp"
#include "ghzpump/liouvillian.hpp"
#include "ghzpump/optimize.hpp"
#include "ghzpump/params.hpp"
#include "ghzpump/ratemodel.hpp"
#include "ghzpump/states.hpp"
#include "ghzpump/version.hpp"

namespace py = pybind11;
using namespace ghzpump;

namespace {

py::dict trace_to_dict(const SimTrace& tr) {
    py::dict d;
    d["times"] = tr.times;
    d["ghz_fidelity"] = tr.ghz_fidelity;
    d["ghz_minus_pop"] = tr.ghz_minus_pop;
    d["trace_dev"] = tr.trace_dev;
    d["min_eigenvalue"] = tr.min_eigenvalue;
    py::list pops;
    for (const auto& p : tr.sector_pops) pops.append(p);
    d["sector_pops"] = pops;
    d["failed"] = tr.failed;
    d["diagnostic"] = tr.diagnostic;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dissipative GHZ-state preparation: models, dynamics, and parameter optimization";
    m.attr("__version__") = kVersion;

    py::enum_<Basis>(m, "Basis").value("Z", Basis::Z).value("X", Basis::X);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_static("symmetric", &SystemParams::symmetric, py::arg("n_qubits"), py::arg("g"),
                    py::arg("gamma_e"), py::arg("gamma_f"), py::arg("kappa_b") = 0.0,
                    py::arg("kappa_c") = 0.0)
        .def_readwrite("n_qubits", &SystemParams::n_qubits)
        .def_readwrite("g", &SystemParams::g)
        .def_readwrite("gamma_e", &SystemParams::gamma_e)
        .def_readwrite("gamma_f", &SystemParams::gamma_f)
        .def_readwrite("gamma_0e", &SystemParams::gamma_0e)
        .def_readwrite("gamma_1e", &SystemParams::gamma_1e)
        .def_readwrite("gamma_0f", &SystemParams::gamma_0f)
        .def_readwrite("gamma_1f", &SystemParams::gamma_1f)
        .def_readwrite("kappa_b", &SystemParams::kappa_b)
        .def_readwrite("kappa_c", &SystemParams::kappa_c)
        .def("validate", &SystemParams::validate);

    py::class_<GroundState>(m, "GroundState")
        .def_readonly("amps", &GroundState::amps)
        .def_readonly("basis", &GroundState::basis)
        .def("n_qubits", &GroundState::n_qubits);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Matrix& mat, Basis basis) {
                 return DensityMatrix{mat, basis};
             }),
             py::arg("mat"), py::arg("basis") = Basis::Z)
        .def_readonly("mat", &DensityMatrix::mat)
        .def_readonly("basis", &DensityMatrix::basis)
        .def("validate", &DensityMatrix::validate)
        .def("min_eigenvalue", &DensityMatrix::min_eigenvalue)
        .def_static("pure", &DensityMatrix::pure)
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("n_qubits"),
                    py::arg("basis") = Basis::Z);

    py::class_<SectorProjector>(m, "SectorProjector")
        .def_readonly("n_qubits", &SectorProjector::n_qubits)
        .def_readonly("n", &SectorProjector::n)
        .def_readonly("basis", &SectorProjector::basis)
        .def_readonly("indices", &SectorProjector::indices)
        .def("rank", &SectorProjector::rank)
        .def("to_matrix", &SectorProjector::to_matrix);

    m.def("ghz_state", &ghz_state, py::arg("n_qubits"), py::arg("sign") = 1);
    m.def("sector_projector", &sector_projector, py::arg("n_qubits"), py::arg("n"),
          py::arg("basis") = Basis::Z);
    m.def("basis_change",
          py::overload_cast<const GroundState&, Basis>(&basis_change), py::arg("state"),
          py::arg("target"));
    m.def("basis_change",
          py::overload_cast<const DensityMatrix&, Basis>(&basis_change), py::arg("rho"),
          py::arg("target"));
    m.def("fidelity", &fidelity, py::arg("rho"), py::arg("target"));
    m.def("lambert_w", &lambert_w, py::arg("branch"), py::arg("z"));

    py::class_<DriveTone>(m, "DriveTone")
        .def_static("resonant", &DriveTone::resonant, py::arg("config"), py::arg("index_f"),
                    py::arg("sign"), py::arg("rabi"), py::arg("g"))
        .def_readwrite("config", &DriveTone::config)
        .def_readwrite("index_f", &DriveTone::index_f)
        .def_readwrite("sign", &DriveTone::sign)
        .def_readwrite("rabi", &DriveTone::rabi)
        .def_readwrite("detuning", &DriveTone::detuning);

    py::class_<DriveSchedule>(m, "DriveSchedule")
        .def_static("make", &DriveSchedule::make, py::arg("n_qubits"), py::arg("g"),
                    py::arg("z_rabi"), py::arg("x_rabi"))
        .def_readwrite("tones", &DriveSchedule::tones)
        .def("validate", &DriveSchedule::validate);

    py::class_<TruncatedSpace>(m, "TruncatedSpace")
        .def_static("make", &TruncatedSpace::make, py::arg("n_qubits"),
                    py::arg("max_excitations"), py::arg("with_e") = true,
                    py::arg("with_f") = true)
        .def("dim", &TruncatedSpace::dim)
        .def("ground_dim", &TruncatedSpace::ground_dim)
        .def_readonly("n_qubits", &TruncatedSpace::n_qubits)
        .def_readonly("max_excitations", &TruncatedSpace::max_excitations);

    py::class_<LindbladModel>(m, "LindbladModel")
        .def_readonly("basis", &LindbladModel::basis)
        .def_readonly("dim", &LindbladModel::dim)
        .def_readonly("ground_dim", &LindbladModel::ground_dim)
        .def_property_readonly("h_static",
                               [](const LindbladModel& m) { return Matrix(m.h_static); })
        .def_property_readonly("jumps",
                               [](const LindbladModel& m) {
                                   std::vector<Matrix> out;
                                   for (const auto& j : m.jumps) out.emplace_back(j);
                                   return out;
                               })
        .def("time_dependent", &LindbladModel::time_dependent);

    m.def("build_full_model", &build_full_model, py::arg("schedule"), py::arg("params"),
          py::arg("space"));

    py::enum_<EffectiveTerms>(m, "EffectiveTerms")
        .value("all", EffectiveTerms::all)
        .value("resonant_only", EffectiveTerms::resonant_only);

    py::class_<EffectiveModel>(m, "EffectiveModel")
        .def_readonly("n_qubits", &EffectiveModel::n_qubits)
        .def_readonly("basis", &EffectiveModel::basis)
        .def_readonly("stark_diag", &EffectiveModel::stark_diag)
        .def_property_readonly("n_jumps",
                               [](const EffectiveModel& m) { return m.jumps.size(); })
        .def("jump_matrix",
             [](const EffectiveModel& m, std::size_t i) { return Matrix(m.jumps.at(i).op); })
        .def("to_lindblad", &EffectiveModel::to_lindblad);

    m.def("build_effective_model", &build_effective_model, py::arg("config"), py::arg("schedule"),
          py::arg("params"), py::arg("power_broadening") = false,
          py::arg("broadening_factor") = 2.0, py::arg("terms") = EffectiveTerms::all);
    m.def("combine_effective_models", &combine_effective_models, py::arg("z"), py::arg("x"),
          py::arg("target") = Basis::Z);
    m.def("stark_shift", &stark_shift, py::arg("config"), py::arg("tone"), py::arg("sector_n"),
          py::arg("params"));
    m.def("excited_population", &excited_population, py::arg("schedule"), py::arg("params"));

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("initial_step", &IntegratorConfig::initial_step)
        .def_readwrite("rtol", &IntegratorConfig::rtol)
        .def_readwrite("atol", &IntegratorConfig::atol)
        .def_readwrite("max_time", &IntegratorConfig::max_time)
        .def_readwrite("samples", &IntegratorConfig::samples)
        .def_readwrite("trotter_slice", &IntegratorConfig::trotter_slice)
        .def_readwrite("use_expm_stepping", &IntegratorConfig::use_expm_stepping);

    m.def(
        "evolve",
        [](const LindbladModel& model, const DensityMatrix& rho0, const IntegratorConfig& cfg) {
            return trace_to_dict(evolve(model, rho0, cfg));
        },
        py::arg("model"), py::arg("rho0"), py::arg("cfg"));
    m.def(
        "trotter_evolve",
        [](const LindbladModel& mz, const LindbladModel& mx, const DensityMatrix& rho0,
           const IntegratorConfig& cfg) { return trace_to_dict(trotter_evolve(mz, mx, rho0, cfg)); },
        py::arg("model_z"), py::arg("model_x"), py::arg("rho0"), py::arg("cfg"));
    m.def(
        "steady_state",
        [](const LindbladModel& model) {
            SteadyStateResult r = steady_state(model);
            py::list states;
            for (const auto& s : r.states) states.append(s);
            py::dict d;
            d["states"] = states;
            d["degenerate"] = r.degenerate;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("model"));
    m.def(
        "time_to_fidelity",
        [](const LindbladModel& model, const DensityMatrix& rho0, double target_f,
           const IntegratorConfig& cfg) { return time_to_fidelity(model, rho0, target_f, cfg); },
        py::arg("model"), py::arg("rho0"), py::arg("target_f"), py::arg("cfg"));

    py::class_<RateBundle>(m, "RateBundle")
        .def(py::init<>())
        .def_readwrite("gamma_z_plus", &RateBundle::gamma_z_plus)
        .def_readwrite("gamma_x_plus", &RateBundle::gamma_x_plus)
        .def_readwrite("gamma_x_toss", &RateBundle::gamma_x_toss)
        .def_readwrite("gamma_12", &RateBundle::gamma_12)
        .def_readwrite("gamma_z_minus", &RateBundle::gamma_z_minus)
        .def_readwrite("gamma_x_minus", &RateBundle::gamma_x_minus)
        .def("gamma_minus", &RateBundle::gamma_minus);

    py::class_<CompartmentModel>(m, "CompartmentModel")
        .def_readonly("labels", &CompartmentModel::labels)
        .def_readonly("transition", &CompartmentModel::transition)
        .def_readonly("rate_unit", &CompartmentModel::rate_unit);

    m.def("sector_transfer_rate", &sector_transfer_rate, py::arg("n1"), py::arg("schedule"),
          py::arg("params"), py::arg("power_broadening") = false);
    m.def("pumping_time", &pumping_time, py::arg("n_from"), py::arg("n_to"), py::arg("schedule"),
          py::arg("params"), py::arg("power_broadening") = false);
    m.def("ghz_pumping_time", &ghz_pumping_time, py::arg("schedule"), py::arg("params"),
          py::arg("power_broadening") = false);
    m.def(
        "ghz_loss_rates",
        [](const DriveSchedule& s, const SystemParams& p, bool pb) {
            GhzLossRates r = ghz_loss_rates(s, p, pb);
            return py::make_tuple(r.gamma_z_minus, r.gamma_x_minus, r.gamma_x_toss);
        },
        py::arg("schedule"), py::arg("params"), py::arg("power_broadening") = false);
    m.def("weak_rate_bundle", &weak_rate_bundle, py::arg("n_qubits"), py::arg("gamma"),
          py::arg("omega"), py::arg("g") = 1.0);
    m.def("build_4compartment", &build_4compartment, py::arg("n_qubits"), py::arg("rates"));
    m.def("build_3compartment_strong", &build_3compartment_strong, py::arg("n_qubits"),
          py::arg("gamma_z_plus"), py::arg("e_z"));
    m.def("compartment_steady_state", &compartment_steady_state, py::arg("model"));
    m.def(
        "stationary_error",
        [](const CompartmentModel& m2) {
            StationaryError e = stationary_error(m2);
            return py::make_tuple(e.exact, e.approx);
        },
        py::arg("model"));
    m.def("effective_rate", &effective_rate, py::arg("model"), py::arg("drop_loss") = true,
          py::arg("t0") = 0.0);
    m.def(
        "bn_kappa",
        [](int n) {
            BNKappa b = bn_kappa(n);
            return py::make_tuple(b.b, b.kappa);
        },
        py::arg("n_qubits"));

    py::class_<WeakDriveParams>(m, "WeakDriveParams")
        .def_readonly("n_qubits", &WeakDriveParams::n_qubits)
        .def_readonly("a_f", &WeakDriveParams::a_f)
        .def_readonly("a_x", &WeakDriveParams::a_x)
        .def_readonly("gamma", &WeakDriveParams::gamma)
        .def_readonly("alpha", &WeakDriveParams::alpha)
        .def_readonly("target_error", &WeakDriveParams::target_error)
        .def("omega", &WeakDriveParams::omega)
        .def("schedule", &WeakDriveParams::schedule, py::arg("g") = 1.0)
        .def("system", &WeakDriveParams::system, py::arg("g") = 1.0);

    py::class_<StrongDriveParams>(m, "StrongDriveParams")
        .def_readonly("n_qubits", &StrongDriveParams::n_qubits)
        .def_readonly("gamma", &StrongDriveParams::gamma)
        .def_readonly("gamma_f", &StrongDriveParams::gamma_f)
        .def_readonly("omega_x", &StrongDriveParams::omega_x)
        .def_readonly("omega_f", &StrongDriveParams::omega_f)
        .def_readonly("e_z", &StrongDriveParams::e_z)
        .def_readonly("gamma_z_plus", &StrongDriveParams::gamma_z_plus)
        .def_readonly("tau_ghz", &StrongDriveParams::tau_ghz)
        .def("schedule", &StrongDriveParams::schedule, py::arg("g") = 1.0)
        .def("system", &StrongDriveParams::system, py::arg("g") = 1.0);

    py::class_<DynamicalSolution>(m, "DynamicalSolution")
        .def_readonly("c", &DynamicalSolution::c)
        .def_readonly("tau", &DynamicalSolution::tau)
        .def_readonly("gamma", &DynamicalSolution::gamma)
        .def_readonly("t_ghz", &DynamicalSolution::t_ghz)
        .def_readonly("w_m1", &DynamicalSolution::w_m1)
        .def_readonly("stationary_over_dynamical",
                      &DynamicalSolution::stationary_over_dynamical);

    m.def("weak_drive_params", &weak_drive_params, py::arg("n_qubits"), py::arg("target_error"),
          py::arg("alpha") = 1.0, py::arg("g") = 1.0);
    m.def("strong_drive_params", &strong_drive_params, py::arg("n_qubits"),
          py::arg("target_error"), py::arg("g") = 1.0);
    m.def("hg_functions", &hg_functions, py::arg("a_f"));
    m.def("dynamical_optimum",
          py::overload_cast<int, double, double, double>(&dynamical_optimum),
          py::arg("n_qubits"), py::arg("target_error"), py::arg("alpha") = 1.0,
          py::arg("g") = 1.0);
    m.def(
        "fixed_time_optimum",
        [](double t, int n, double g, double alpha, double kappa, double f, double h) {
            FixedTimeSolution s = fixed_time_optimum(t, n, g, alpha, kappa, f, h);
            return py::make_tuple(s.gamma_opt, s.error);
        },
        py::arg("t_max"), py::arg("n_qubits"), py::arg("g"), py::arg("alpha"), py::arg("kappa"),
        py::arg("f_n"), py::arg("h_n"));

    py::enum_<ModelKind>(m, "ModelKind")
        .value("effective", ModelKind::effective)
        .value("full_k1", ModelKind::full_k1)
        .value("full_k2", ModelKind::full_k2)
        .value("compartment", ModelKind::compartment);

    py::class_<MinimizerOptions>(m, "MinimizerOptions")
        .def(py::init<>())
        .def_readwrite("budget", &MinimizerOptions::budget)
        .def_readwrite("restarts", &MinimizerOptions::restarts)
        .def_readwrite("seed", &MinimizerOptions::seed)
        .def_readwrite("jitter", &MinimizerOptions::jitter)
        .def_readwrite("power_broadening", &MinimizerOptions::power_broadening)
        .def_readwrite("horizon_units", &MinimizerOptions::horizon_units)
        .def_readwrite("samples", &MinimizerOptions::samples);

    py::class_<MinimizerResult>(m, "MinimizerResult")
        .def_readonly("params", &MinimizerResult::params)
        .def_readonly("time", &MinimizerResult::time)
        .def_readonly("reached", &MinimizerResult::reached)
        .def_readonly("evaluations", &MinimizerResult::evaluations);

    m.def("numeric_time_minimizer", &numeric_time_minimizer, py::arg("n_qubits"),
          py::arg("target_f"), py::arg("kind"), py::arg("seed"), py::arg("options"));
}
