#include "ghzpump/liouvillian.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzpump {

namespace {

using Triplet = Eigen::Triplet<Complex>;
using State = TruncatedSpace::BasisState;

SparseOp from_triplets(Eigen::Index dim, const std::vector<Triplet>& trips) {
    std::vector<Triplet> nonzero;
    nonzero.reserve(trips.size());
    for (const Triplet& t : trips)
        if (t.value() != Complex(0.0, 0.0)) nonzero.push_back(t);
    SparseOp m(dim, dim);
    m.setFromTriplets(nonzero.begin(), nonzero.end());
    m.makeCompressed();
    return m;
}

int exc_slot(const State& s, int atom) {
    if (s.exc_atom[0] == atom) return 0;
    if (s.exc_atom[1] == atom) return 1;
    return -1;
}

State remove_excited(const State& s, int slot, std::uint32_t new_bits) {
    State t = s;
    t.bits = new_bits;
    if (slot == 0) {
        t.exc_atom[0] = t.exc_atom[1];
        t.exc_level[0] = t.exc_level[1];
    }
    t.exc_atom[1] = -1;
    t.exc_level[1] = -1;
    return t;
}

State add_excited(const State& s, int atom, std::int8_t level, std::uint32_t new_bits) {
    State t = s;
    t.bits = new_bits;
    if (t.exc_atom[0] < 0) {
        t.exc_atom[0] = static_cast<std::int8_t>(atom);
        t.exc_level[0] = level;
    } else if (t.exc_atom[0] < atom) {
        t.exc_atom[1] = static_cast<std::int8_t>(atom);
        t.exc_level[1] = level;
    } else {
        t.exc_atom[1] = t.exc_atom[0];
        t.exc_level[1] = t.exc_level[0];
        t.exc_atom[0] = static_cast<std::int8_t>(atom);
        t.exc_level[0] = level;
    }
    return t;
}

void require_config(Basis config, const TruncatedSpace& space) {
    if (config == Basis::Z && !space.with_e)
        throw std::invalid_argument("space does not enumerate level e / oscillator b");
    if (config == Basis::X && !space.with_f)
        throw std::invalid_argument("space does not enumerate level f / oscillator c");
}

}  // namespace

SparseOp build_interaction(Basis config, const SystemParams& params, const TruncatedSpace& space) {
    require_config(config, space);
    const double g = params.g;
    const std::int8_t level = config == Basis::Z ? 0 : 1;
    std::vector<Triplet> trips;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const State& s = space.states[i];
        for (int slot = 0; slot < 2; ++slot) {
            if (s.exc_atom[slot] < 0 || s.exc_level[slot] != level) continue;
            const int a = s.exc_atom[slot];
            if (config == Basis::Z) {
                // b^dag |1><e|: atom a returns to |1>, one more b quantum
                State t = remove_excited(s, slot, s.bits | (1u << a));
                t.n_b = static_cast<std::uint8_t>(s.n_b + 1);
                const Eigen::Index j = space.index_of(t);
                if (j < 0) continue;
                const Complex amp = g * std::sqrt(static_cast<double>(s.n_b + 1));
                trips.emplace_back(j, i, amp);
                trips.emplace_back(i, j, std::conj(amp));
            } else {
                // c^dag |-><f|: |f> -> (|0> - |1>)/sqrt(2), one more c quantum
                for (int bit : {0, 1}) {
                    State t = remove_excited(s, slot, bit ? (s.bits | (1u << a)) : s.bits);
                    t.n_c = static_cast<std::uint8_t>(s.n_c + 1);
                    const Eigen::Index j = space.index_of(t);
                    if (j < 0) continue;
                    const double sign = bit ? -1.0 : 1.0;
                    const Complex amp = sign * g / std::sqrt(2.0) *
                                        std::sqrt(static_cast<double>(s.n_c + 1));
                    trips.emplace_back(j, i, amp);
                    trips.emplace_back(i, j, std::conj(amp));
                }
            }
        }
    }
    return from_triplets(space.dim(), trips);
}

HamiltonianTone build_drive(const DriveTone& tone, const SystemParams& params,
                            const TruncatedSpace& space) {
    require_config(tone.config, space);
    (void)params;
    const std::int8_t level = tone.config == Basis::Z ? 0 : 1;
    std::vector<Triplet> trips;
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
        const State& s = space.states[i];
        if (s.excitations() >= space.max_excitations) continue;
        for (int a = 0; a < space.n_qubits; ++a) {
            if (exc_slot(s, a) >= 0) continue;
            const bool bit = (s.bits >> a) & 1u;
            if (tone.config == Basis::Z) {
                if (!bit) continue;  // J_e1 raises |1> only
                State t = add_excited(s, a, level, s.bits & ~(1u << a));
                const Eigen::Index j = space.index_of(t);
                if (j < 0) continue;
                trips.emplace_back(j, i, Complex(0.5 * tone.rabi, 0.0));
            } else {
                // J_f-: <-| = (<0| - <1|)/sqrt(2); opposite phase on the two legs
                State t = add_excited(s, a, level, s.bits & ~(1u << a));
                const Eigen::Index j = space.index_of(t);
                if (j < 0) continue;
                const double sign = bit ? -1.0 : 1.0;
                trips.emplace_back(j, i, Complex(sign * 0.5 * tone.rabi / std::sqrt(2.0), 0.0));
            }
        }
    }
    return HamiltonianTone{from_triplets(space.dim(), trips), tone.detuning};
}

std::vector<SparseOp> build_jumps(const SystemParams& params, const TruncatedSpace& space) {
    std::vector<SparseOp> jumps;
    struct Channel {
        std::int8_t level;
        int target_bit;
        double rate;
    };
    std::vector<Channel> channels;
    if (space.with_e) {
        channels.push_back({0, 0, params.gamma_0e});
        channels.push_back({0, 1, params.gamma_1e});
    }
    if (space.with_f) {
        channels.push_back({1, 0, params.gamma_0f});
        channels.push_back({1, 1, params.gamma_1f});
    }
    for (int a = 0; a < space.n_qubits; ++a) {
        for (const Channel& ch : channels) {
            std::vector<Triplet> trips;
            for (Eigen::Index i = 0; i < space.dim(); ++i) {
                const State& s = space.states[i];
                const int slot = exc_slot(s, a);
                if (slot < 0 || s.exc_level[slot] != ch.level) continue;
                State t = remove_excited(s, slot,
                                         ch.target_bit ? (s.bits | (1u << a)) : s.bits);
                const Eigen::Index j = space.index_of(t);
                if (j < 0) continue;
                trips.emplace_back(j, i, Complex(std::sqrt(ch.rate), 0.0));
            }
            jumps.push_back(from_triplets(space.dim(), trips));
        }
    }
    if (space.with_e) {
        std::vector<Triplet> trips;
        for (Eigen::Index i = 0; i < space.dim(); ++i) {
            const State& s = space.states[i];
            if (s.n_b == 0) continue;
            State t = s;
            t.n_b = static_cast<std::uint8_t>(s.n_b - 1);
            const Eigen::Index j = space.index_of(t);
            if (j < 0) continue;
            trips.emplace_back(j, i, Complex(std::sqrt(params.kappa_b * s.n_b), 0.0));
        }
        jumps.push_back(from_triplets(space.dim(), trips));
    }
    if (space.with_f) {
        std::vector<Triplet> trips;
        for (Eigen::Index i = 0; i < space.dim(); ++i) {
            const State& s = space.states[i];
            if (s.n_c == 0) continue;
            State t = s;
            t.n_c = static_cast<std::uint8_t>(s.n_c - 1);
            const Eigen::Index j = space.index_of(t);
            if (j < 0) continue;
            trips.emplace_back(j, i, Complex(std::sqrt(params.kappa_c * s.n_c), 0.0));
        }
        jumps.push_back(from_triplets(space.dim(), trips));
    }
    return jumps;
}

LindbladModel build_full_model(const DriveSchedule& schedule, const SystemParams& params,
                               const TruncatedSpace& space) {
    params.validate();
    schedule.validate(space.n_qubits);
    LindbladModel m;
    m.basis = Basis::Z;
    m.n_qubits = space.n_qubits;
    m.dim = space.dim();
    m.ground_dim = space.ground_dim();
    SparseOp h(space.dim(), space.dim());
    if (space.with_e) h += build_interaction(Basis::Z, params, space);
    if (space.with_f) h += build_interaction(Basis::X, params, space);
    h.makeCompressed();
    m.h_static = std::move(h);
    for (const DriveTone& t : schedule.tones) {
        if (t.rabi == 0.0) continue;
        if (t.config == Basis::Z && !space.with_e) continue;
        if (t.config == Basis::X && !space.with_f) continue;
        m.tones.push_back(build_drive(t, params, space));
    }
    m.jumps = build_jumps(params, space);
    return m;
}

}  // namespace ghzpump
