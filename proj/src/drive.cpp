#include "ghzpump/drive.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ghzpump {

DriveTone DriveTone::resonant(Basis config, int index_f, int sign, double rabi, double g) {
    DriveTone t;
    t.config = config;
    t.index_f = index_f;
    t.sign = sign;
    t.rabi = rabi;
    t.detuning = sign * std::sqrt(static_cast<double>(index_f)) * g;
    return t;
}

std::vector<DriveTone> DriveSchedule::config_tones(Basis config) const {
    std::vector<DriveTone> out;
    for (const auto& t : tones)
        if (t.config == config) out.push_back(t);
    return out;
}

void DriveSchedule::validate(int n_qubits) const {
    std::map<std::pair<int, int>, std::map<int, double>> amp;  // (config, F) -> sign -> rabi
    for (const auto& t : tones) {
        if (t.rabi < 0.0) throw std::invalid_argument("DriveSchedule: negative Rabi frequency");
        if (t.index_f < 1) throw std::invalid_argument("DriveSchedule: tone index F must be >= 1");
        if (t.config == Basis::X && t.index_f % 2 == 0 && t.rabi != 0.0)
            throw std::invalid_argument("DriveSchedule: even-F X tones must carry zero amplitude");
        if (t.config == Basis::Z && t.index_f > n_qubits - 1 && t.rabi != 0.0)
            throw std::invalid_argument("DriveSchedule: Z tone index F exceeds N-1");
        if (t.config == Basis::X && t.index_f > n_qubits && t.rabi != 0.0)
            throw std::invalid_argument("DriveSchedule: X tone index F exceeds N");
        amp[{t.config == Basis::Z ? 0 : 1, t.index_f}][t.sign] = t.rabi;
    }
    for (const auto& [key, by_sign] : amp) {
        const double plus = by_sign.count(+1) ? by_sign.at(+1) : 0.0;
        const double minus = by_sign.count(-1) ? by_sign.at(-1) : 0.0;
        if (std::abs(plus - minus) > 1e-12 * std::max(1.0, std::max(plus, minus)))
            throw std::invalid_argument("DriveSchedule: paired +/- tones must have equal Rabi");
    }
}

DriveSchedule DriveSchedule::make(int n_qubits, double g, const std::vector<double>& z_rabi,
                                  double x_rabi) {
    if (static_cast<int>(z_rabi.size()) != n_qubits - 1)
        throw std::invalid_argument("DriveSchedule::make: need N-1 Z amplitudes");
    DriveSchedule s;
    for (int f = 1; f <= n_qubits - 1; ++f) {
        for (int sign : {+1, -1})
            s.tones.push_back(DriveTone::resonant(Basis::Z, f, sign, z_rabi[f - 1], g));
    }
    for (int f = 1; f <= n_qubits; f += 2) {
        for (int sign : {+1, -1})
            s.tones.push_back(DriveTone::resonant(Basis::X, f, sign, x_rabi, g));
    }
    s.validate(n_qubits);
    return s;
}

}  // namespace ghzpump
