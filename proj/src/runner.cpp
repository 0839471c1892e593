#include "ghzpump/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "ghzpump/dynamics.hpp"
#include "ghzpump/effective.hpp"
#include "ghzpump/liouvillian.hpp"
#include "ghzpump/optimize.hpp"
#include "ghzpump/ratemodel.hpp"
#include "ghzpump/version.hpp"

namespace ghzpump {

namespace {

using nlohmann::json;

const std::set<std::string>& schema() {
    static const std::set<std::string> keys = {
        "system.n_qubits", "system.g", "system.gamma_e", "system.gamma_f", "system.kappa_b",
        "system.kappa_c", "drive.source", "drive.target_error", "drive.alpha",
        "drive.power_broadening", "drive.broadening_factor", "drive.z_amplitudes",
        "drive.x_amplitude", "model.kind", "model.trotter", "model.effective_terms",
        "sim.target_fidelity", "sim.max_time", "sim.horizon_units", "sim.samples", "sim.rtol",
        "sim.atol", "sim.initial_step", "sim.trotter_slice", "sweep.n_list", "opt.budget",
        "opt.restarts", "opt.jitter", "ratemodel.n_list", "ratemodel.gamma_minus_override",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Model and drive ingredients shared by simulate/sweep/optimize.
struct Setup {
    int n_qubits;
    double g;
    double alpha;
    double target_error;
    bool power_broadening;
    double broadening_factor;
    std::string source;
    std::string kind;
    bool trotter;
    EffectiveTerms terms;
    SystemParams sys;
    DriveSchedule schedule;
    WeakDriveParams weak_seed;  // defined when source uses the weak analytics
};

Setup make_setup(const RunConfig& cfg, int n_override = 0) {
    Setup s;
    s.n_qubits = n_override > 0 ? n_override : cfg.integer("system.n_qubits", 3);
    if (s.n_qubits < 2 || s.n_qubits > 12) throw ConfigError("system.n_qubits must be in [2, 12]");
    s.g = cfg.number("system.g", 1.0);
    s.alpha = cfg.number("drive.alpha", 1.0);
    s.target_error = cfg.number("drive.target_error", 0.1);
    s.power_broadening = cfg.boolean("drive.power_broadening", true);
    s.broadening_factor = cfg.number("drive.broadening_factor", 2.0);
    s.source = cfg.text("drive.source", "analytic-weak");
    s.kind = cfg.text("model.kind", "effective");
    s.trotter = cfg.boolean("model.trotter", false);
    const std::string terms = cfg.text("model.effective_terms", "all");
    if (terms == "all")
        s.terms = EffectiveTerms::all;
    else if (terms == "resonant-only")
        s.terms = EffectiveTerms::resonant_only;
    else
        throw ConfigError("model.effective_terms: unknown value '" + terms + "'");
    if (s.kind != "effective" && s.kind != "full-k1" && s.kind != "full-k2" &&
        s.kind != "compartment")
        throw ConfigError("model.kind: unknown value '" + s.kind + "'");

    if (s.source == "analytic-weak" || s.source == "optimize") {
        s.weak_seed = weak_drive_params(s.n_qubits, s.target_error, s.alpha, s.g);
        s.sys = s.weak_seed.system(s.g);
        s.schedule = s.weak_seed.schedule(s.g);
    } else if (s.source == "analytic-strong") {
        StrongDriveParams p = strong_drive_params(s.n_qubits, s.target_error, s.g);
        s.sys = p.system(s.g);
        s.schedule = p.schedule(s.g);
    } else if (s.source == "explicit") {
        if (!cfg.has("system.gamma_e")) throw ConfigError("explicit drive requires system.gamma_e");
        const double ge = cfg.number("system.gamma_e");
        const double gf = cfg.number("system.gamma_f", ge);
        s.sys = SystemParams::symmetric(s.n_qubits, s.g, ge, gf, cfg.number("system.kappa_b", 0.0),
                                        cfg.number("system.kappa_c", 0.0));
        std::vector<double> z = cfg.number_list("drive.z_amplitudes");
        if (static_cast<int>(z.size()) != s.n_qubits - 1)
            throw ConfigError("drive.z_amplitudes must list N-1 values");
        s.schedule = DriveSchedule::make(s.n_qubits, s.g, z, cfg.number("drive.x_amplitude", 0.0));
    } else {
        throw ConfigError("drive.source: unknown value '" + s.source + "'");
    }
    try {
        s.sys.validate();
        s.schedule.validate(s.n_qubits);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return s;
}

IntegratorConfig make_integrator(const RunConfig& cfg, const Setup& s) {
    IntegratorConfig ic;
    ic.rtol = cfg.number("sim.rtol", 1e-8);
    ic.atol = cfg.number("sim.atol", 1e-10);
    ic.initial_step = cfg.number("sim.initial_step", 0.0);
    ic.samples = cfg.integer("sim.samples", 200);
    ic.trotter_slice = cfg.number("sim.trotter_slice", 0.0);
    ic.max_time = cfg.number("sim.max_time", 0.0);
    if (ic.max_time <= 0.0) {
        const double gz = sector_transfer_rate(1, s.schedule, s.sys, s.power_broadening);
        if (gz <= 0.0) throw ConfigError("cannot derive sim.max_time: zero Z-pumping rate");
        ic.max_time = cfg.number("sim.horizon_units", 400.0) / gz;
    }
    return ic;
}

struct CsvWriter {
    std::ofstream out;
    CsvWriter(const std::filesystem::path& path, const RunConfig& cfg,
              const std::vector<std::string>& columns) {
        out.open(path);
        if (!out) throw NumericalError("cannot open output file " + path.string());
        out << "# config_hash=" << cfg.hash() << "\n";
        out << "# version=" << kVersion << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 < columns.size() ? "," : "");
        out << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << cells[i] << (i + 1 < cells.size() ? "," : "");
        out << "\n";
    }
};

void write_json(const std::filesystem::path& path, json j, const RunConfig& cfg,
                const std::string& command) {
    j["config_hash"] = cfg.hash();
    j["version"] = kVersion;
    j["command"] = command;
    j["run_id"] = command + "-" + cfg.hash().substr(0, 12);
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot open output file " + path.string());
    out << j.dump(2) << "\n";
}

SimTrace simulate_trace(const Setup& s, const IntegratorConfig& ic) {
    const DensityMatrix rho0 = DensityMatrix::maximally_mixed(s.n_qubits);
    if (s.kind == "effective") {
        EffectiveModel mz = build_effective_model(Basis::Z, s.schedule, s.sys, s.power_broadening,
                                                  s.broadening_factor, s.terms);
        EffectiveModel mx = build_effective_model(Basis::X, s.schedule, s.sys, s.power_broadening,
                                                  s.broadening_factor, s.terms);
        if (s.trotter) return trotter_evolve(mz.to_lindblad(), mx.to_lindblad(), rho0, ic);
        return evolve(combine_effective_models(mz, mx, Basis::Z).to_lindblad(), rho0, ic);
    }
    if (s.kind == "full-k1" || s.kind == "full-k2") {
        const int k = s.kind == "full-k1" ? 1 : 2;
        TruncatedSpace space = TruncatedSpace::make(s.n_qubits, k, true, true);
        return evolve(build_full_model(s.schedule, s.sys, space), rho0, ic);
    }
    throw ConfigError("simulate: model.kind '" + s.kind + "' has no time-series model");
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!schema().count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        if (cfg.values_.count(key))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                              "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

double RunConfig::number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("key '" + key + "': not a number: '" + it->second + "'");
    }
}

double RunConfig::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int RunConfig::integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) throw ConfigError("key '" + key + "': expected an integer");
    return i;
}

bool RunConfig::boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::vector<double> RunConfig::number_list(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("key '" + key + "': not a number list");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<int> RunConfig::integer_list(const std::string& key,
                                         const std::vector<int>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<int> out;
    for (double v : number_list(key)) {
        const int i = static_cast<int>(std::llround(v));
        if (std::abs(v - i) > 1e-9) throw ConfigError("key '" + key + "': expected integers");
        out.push_back(i);
    }
    return out;
}

std::string RunConfig::canonical() const {
    std::string s;
    for (const auto& [k, v] : values_) {
        s += k;
        s += " = ";
        s += v;
        s += "\n";
    }
    return s;
}

std::string RunConfig::hash() const {
    const std::string s = canonical();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_params(const RunConfig& cfg, const RunOptions& opts) {
    const Setup s = make_setup(cfg);
    json j;
    j["n_qubits"] = s.n_qubits;
    j["g"] = s.g;
    j["source"] = s.source;
    j["target_error"] = s.target_error;
    if (s.source == "analytic-strong") {
        StrongDriveParams p = strong_drive_params(s.n_qubits, s.target_error, s.g);
        j["gamma"] = p.gamma;
        j["gamma_f"] = p.gamma_f;
        j["omega_x"] = p.omega_x;
        j["omega_f"] = p.omega_f;
        j["e_z"] = p.e_z;
        j["tau_ghz"] = p.tau_ghz;
    } else {
        WeakDriveParams p = weak_drive_params(s.n_qubits, s.target_error, s.alpha, s.g);
        j["gamma"] = p.gamma;
        j["alpha"] = p.alpha;
        j["a_f"] = p.a_f;
        j["a_x"] = p.a_x;
        auto [h, gfun] = hg_functions(p.a_f);
        j["h"] = h;
        j["g_function"] = gfun;
        DynamicalSolution d = dynamical_optimum(s.n_qubits, s.target_error, s.alpha, s.g);
        j["dynamical"] = {{"c", d.c},
                          {"tau", d.tau},
                          {"gamma", d.gamma},
                          {"t_ghz", d.t_ghz},
                          {"w_m1", d.w_m1},
                          {"stationary_over_dynamical", d.stationary_over_dynamical}};
    }
    const auto path = std::filesystem::path(opts.out_dir) / "params.json";
    write_json(path, j, cfg, "params");
    std::printf("%s\n", path.string().c_str());
    return 0;
}

int run_simulate(const RunConfig& cfg, const RunOptions& opts) {
    const Setup s = make_setup(cfg);
    const IntegratorConfig ic = make_integrator(cfg, s);
    const std::filesystem::path dir(opts.out_dir);

    if (s.kind == "compartment") {
        GhzLossRates loss = ghz_loss_rates(s.schedule, s.sys, s.power_broadening);
        RateBundle r;
        r.gamma_z_plus = 1.0 / pumping_time(std::max(1, s.n_qubits - 2), 0, s.schedule, s.sys,
                                            s.power_broadening);
        r.gamma_12 = sector_transfer_rate(s.n_qubits - 1, s.schedule, s.sys, s.power_broadening);
        r.gamma_x_plus = ghz_minus_depump_rate(s.schedule, s.sys, s.power_broadening);
        r.gamma_x_toss = loss.gamma_x_toss;
        r.gamma_z_minus = loss.gamma_z_minus;
        r.gamma_x_minus = loss.gamma_x_minus;
        CompartmentModel m = build_4compartment(s.n_qubits, r);
        Eigen::VectorXd p0(4);
        const double dg = std::pow(2.0, s.n_qubits);
        double pmid = 0.0;
        for (int n = 1; n <= s.n_qubits - 2; ++n) pmid += binomial(s.n_qubits, n) / dg;
        p0 << binomial(s.n_qubits, s.n_qubits - 1) / dg, pmid, 1.0 / dg, 1.0 / dg;
        CsvWriter csv(dir / "timeseries.csv", cfg, {"t", "p_n1max", "p_mid", "p_ghz_minus", "p_ghz"});
        for (int i = 0; i < ic.samples; ++i) {
            const double t = ic.max_time * i / (ic.samples - 1);
            const Eigen::VectorXd p = compartment_populations(m, p0, t);
            csv.row({format_double(t), format_double(p(0)), format_double(p(1)),
                     format_double(p(2)), format_double(p(3))});
        }
        json j;
        j["steady_error_exact"] = stationary_error(m).exact;
        j["steady_error_approx"] = stationary_error(m).approx;
        j["gamma_plus"] = effective_rate(m);
        write_json(dir / "summary.json", j, cfg, "simulate");
        return 0;
    }

    SimTrace tr = simulate_trace(s, ic);
    std::vector<std::string> cols = {"t", "f_ghz", "p_ghz_minus"};
    for (int n = 0; n <= s.n_qubits; ++n) cols.push_back("pop_n" + std::to_string(n));
    cols.push_back("trace_dev");
    cols.push_back("min_eigenvalue");
    CsvWriter csv(dir / "timeseries.csv", cfg, cols);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        std::vector<std::string> row = {format_double(tr.times[i]),
                                        format_double(tr.ghz_fidelity[i]),
                                        format_double(tr.ghz_minus_pop[i])};
        for (int n = 0; n <= s.n_qubits; ++n) row.push_back(format_double(tr.sector_pops[i](n)));
        row.push_back(format_double(tr.trace_dev[i]));
        row.push_back(format_double(tr.min_eigenvalue[i]));
        csv.row(row);
    }
    json j;
    j["failed"] = tr.failed;
    j["diagnostic"] = tr.diagnostic;
    j["final_fidelity"] = tr.ghz_fidelity.empty() ? 0.0 : tr.ghz_fidelity.back();
    j["max_trace_dev"] =
        tr.trace_dev.empty() ? 0.0 : *std::max_element(tr.trace_dev.begin(), tr.trace_dev.end());
    j["min_eigenvalue"] = tr.min_eigenvalue.empty()
                              ? 0.0
                              : *std::min_element(tr.min_eigenvalue.begin(),
                                                  tr.min_eigenvalue.end());
    write_json(dir / "summary.json", j, cfg, "simulate");
    if (tr.failed) throw NumericalError("simulate: " + tr.diagnostic);
    return 0;
}

int run_sweep(const RunConfig& cfg, const RunOptions& opts) {
    const std::vector<int> n_list = cfg.integer_list("sweep.n_list", {2, 3, 4, 5});
    if (n_list.empty()) throw ConfigError("sweep.n_list: empty");
    const double target_f = cfg.number("sim.target_fidelity", 0.9);
    // dynamical error split: bound drawn at the stationary error matching the
    // fidelity target
    struct Row {
        int n;
        std::string status;
        double tau = 0.0, bound = 0.0, ratio = 0.0;
    };
    std::vector<Row> rows(n_list.size());

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= n_list.size()) return;
            Row& row = rows[i];
            row.n = n_list[i];
            try {
                const Setup s = make_setup(cfg, n_list[i]);
                const IntegratorConfig ic = make_integrator(cfg, s);
                std::optional<double> tau;
                if (s.source == "optimize") {
                    MinimizerOptions mo;
                    mo.budget = cfg.integer("opt.budget", 500);
                    mo.restarts = cfg.integer("opt.restarts", 3);
                    mo.jitter = cfg.number("opt.jitter", 0.1);
                    mo.seed = opts.seed;
                    mo.power_broadening = s.power_broadening;
                    mo.broadening_factor = s.broadening_factor;
                    mo.horizon_units = cfg.number("sim.horizon_units", 400.0);
                    mo.samples = cfg.integer("sim.samples", 200);
                    mo.g = s.g;
                    ModelKind mk = s.kind == "full-k1"   ? ModelKind::full_k1
                                   : s.kind == "full-k2" ? ModelKind::full_k2
                                   : s.kind == "compartment" ? ModelKind::compartment
                                                             : ModelKind::effective;
                    MinimizerResult res =
                        numeric_time_minimizer(n_list[i], target_f, mk, s.weak_seed, mo);
                    if (res.reached) tau = res.time;
                } else {
                    const DensityMatrix rho0 = DensityMatrix::maximally_mixed(s.n_qubits);
                    if (s.kind == "effective") {
                        EffectiveModel mz =
                            build_effective_model(Basis::Z, s.schedule, s.sys, s.power_broadening,
                                                  s.broadening_factor, s.terms);
                        EffectiveModel mx =
                            build_effective_model(Basis::X, s.schedule, s.sys, s.power_broadening,
                                                  s.broadening_factor, s.terms);
                        if (s.trotter) {
                            tau = time_to_fidelity(mz.to_lindblad(), mx.to_lindblad(), rho0,
                                                   target_f, ic);
                        } else {
                            tau = time_to_fidelity(
                                combine_effective_models(mz, mx, Basis::Z).to_lindblad(), rho0,
                                target_f, ic);
                        }
                    } else {
                        const int k = s.kind == "full-k2" ? 2 : 1;
                        TruncatedSpace space = TruncatedSpace::make(s.n_qubits, k, true, true);
                        tau = time_to_fidelity(build_full_model(s.schedule, s.sys, space), rho0,
                                               target_f, ic);
                    }
                }
                const double logn = std::log(static_cast<double>(n_list[i]));
                const double alpha = cfg.number("drive.alpha", 1.0);
                const double e_stat = s.target_error;
                row.bound = bn_kappa(n_list[i]).b * std::sqrt(double(n_list[i])) * logn * logn /
                            (alpha * alpha * s.g * std::sqrt(e_stat));
                if (tau) {
                    row.tau = *tau;
                    row.ratio = row.tau / row.bound;
                    row.status = "ok";
                } else {
                    row.status = "not-reached";
                }
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int threads = std::max(1, opts.threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    CsvWriter csv(std::filesystem::path(opts.out_dir) / "sweep.csv", cfg,
                  {"n_qubits", "tau_prep", "bound", "ratio", "status"});
    bool all_ok = true;
    for (const Row& r : rows) {
        csv.row({std::to_string(r.n), format_double(r.tau), format_double(r.bound),
                 format_double(r.ratio), r.status});
        if (r.status != "ok" && r.status != "not-reached") all_ok = false;
    }
    json j;
    j["rows"] = n_list.size();
    write_json(std::filesystem::path(opts.out_dir) / "sweep_summary.json", j, cfg, "sweep");
    if (!all_ok) throw NumericalError("sweep: one or more entries failed");
    return 0;
}

int run_optimize(const RunConfig& cfg, const RunOptions& opts) {
    const Setup s = make_setup(cfg);
    const double target_f = cfg.number("sim.target_fidelity", 0.9);
    if (s.source != "analytic-weak" && s.source != "optimize")
        throw ConfigError("optimize requires an analytic-weak seed (drive.source)");
    MinimizerOptions mo;
    mo.budget = cfg.integer("opt.budget", 500);
    mo.restarts = cfg.integer("opt.restarts", 3);
    mo.jitter = cfg.number("opt.jitter", 0.1);
    mo.seed = opts.seed;
    mo.power_broadening = s.power_broadening;
    mo.broadening_factor = s.broadening_factor;
    mo.horizon_units = cfg.number("sim.horizon_units", 400.0);
    mo.samples = cfg.integer("sim.samples", 200);
    mo.g = s.g;
    ModelKind mk = s.kind == "full-k1"       ? ModelKind::full_k1
                   : s.kind == "full-k2"     ? ModelKind::full_k2
                   : s.kind == "compartment" ? ModelKind::compartment
                                             : ModelKind::effective;
    MinimizerResult res = numeric_time_minimizer(s.n_qubits, target_f, mk, s.weak_seed, mo);
    json j;
    j["reached"] = res.reached;
    j["time"] = res.time;
    j["evaluations"] = res.evaluations;
    j["params"] = res.params;
    j["seed_gamma"] = s.weak_seed.gamma;
    j["alpha"] = s.alpha;
    write_json(std::filesystem::path(opts.out_dir) / "optimize.json", j, cfg, "optimize");
    if (!res.reached) throw NumericalError("optimize: target fidelity not reached");
    return 0;
}

int run_ratemodel(const RunConfig& cfg, const RunOptions& opts) {
    const std::vector<int> n_list =
        cfg.integer_list("ratemodel.n_list", {2, 3, 4, 5, 6, 7, 8, 10, 20, 50, 100});
    const double target_error = cfg.number("drive.target_error", 0.1);
    const double override_gm = cfg.number("ratemodel.gamma_minus_override", -1.0);
    CsvWriter csv(std::filesystem::path(opts.out_dir) / "ratemodel.csv", cfg,
                  {"n_qubits", "b", "kappa", "e_exact", "e_approx", "gamma_plus_over_gamma_z"});
    for (int n : n_list) {
        if (n < 2) throw ConfigError("ratemodel.n_list: N >= 2 required");
        const BNKappa bk = bn_kappa(n);
        WeakDriveParams p = weak_drive_params(n, target_error, 1.0, 1.0);
        RateBundle r = weak_rate_bundle(n, p.gamma, p.omega(), 1.0);
        if (override_gm >= 0.0) {
            r.gamma_z_minus = override_gm;
            r.gamma_x_minus = 0.0;
        }
        CompartmentModel m = build_4compartment(n, r);
        double e_exact = 0.0, e_approx = 0.0;
        if (r.gamma_minus() > 0.0) {
            StationaryError se = stationary_error(m);
            e_exact = se.exact;
            e_approx = se.approx;
        }
        const double gp = effective_rate(m) / m.rate_unit;
        csv.row({std::to_string(n), format_double(bk.b), format_double(bk.kappa),
                 format_double(e_exact), format_double(e_approx), format_double(gp)});
    }
    json j;
    j["rows"] = n_list.size();
    write_json(std::filesystem::path(opts.out_dir) / "ratemodel_summary.json", j, cfg, "ratemodel");
    return 0;
}

int run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opts) {
    try {
        std::filesystem::create_directories(opts.out_dir);
        if (command == "params") return run_params(cfg, opts);
        if (command == "simulate") return run_simulate(cfg, opts);
        if (command == "sweep") return run_sweep(cfg, opts);
        if (command == "optimize") return run_optimize(cfg, opts);
        if (command == "ratemodel") return run_ratemodel(cfg, opts);
        throw ConfigError("unknown command '" + command + "'");
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}

}  // namespace ghzpump
