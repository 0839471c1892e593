#include "ghzpump/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void SystemParams::validate() const {
    if (n_qubits < 2) throw std::invalid_argument("SystemParams: n_qubits must be >= 2");
    if (!(g > 0.0)) throw std::invalid_argument("SystemParams: g must be > 0");
    for (double r : {gamma_e, gamma_f, gamma_0e, gamma_1e, gamma_0f, gamma_1f, kappa_b, kappa_c}) {
        if (!(r >= 0.0)) throw std::invalid_argument("SystemParams: rates must be >= 0");
    }
    if (!close(gamma_0e + gamma_1e, gamma_e))
        throw std::invalid_argument("SystemParams: gamma_0e + gamma_1e != gamma_e");
    if (!close(gamma_0f + gamma_1f, gamma_f))
        throw std::invalid_argument("SystemParams: gamma_0f + gamma_1f != gamma_f");
}

bool SystemParams::symmetric_branching() const {
    return close(gamma_0e, gamma_1e) && close(gamma_0f, gamma_1f);
}

SystemParams SystemParams::symmetric(int n_qubits, double g, double gamma_e,
                                     double gamma_f, double kappa_b, double kappa_c) {
    SystemParams p;
    p.n_qubits = n_qubits;
    p.g = g;
    p.gamma_e = gamma_e;
    p.gamma_f = gamma_f;
    p.gamma_0e = p.gamma_1e = 0.5 * gamma_e;
    p.gamma_0f = p.gamma_1f = 0.5 * gamma_f;
    p.kappa_b = kappa_b;
    p.kappa_c = kappa_c;
    p.validate();
    return p;
}

}  // namespace ghzpump
