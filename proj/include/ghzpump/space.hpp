#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace ghzpump {

/// Excitation-truncated basis of the N-atom + oscillator model. A basis
/// state is a ground bit pattern for the unexcited atoms, up to
/// `max_excitations` excited atoms (level e or f, bit slot cleared), and
/// oscillator occupations n_b, n_c. Total excitation = excited atoms +
/// n_b + n_c <= max_excitations. Ground states come first, ordered by bits,
/// so ground bitstring s has index s.
struct TruncatedSpace {
    struct BasisState {
        std::uint32_t bits = 0;
        std::array<std::int8_t, 2> exc_atom{-1, -1};   // ascending, -1 = unused
        std::array<std::int8_t, 2> exc_level{-1, -1};  // 0 = e, 1 = f
        std::uint8_t n_b = 0;
        std::uint8_t n_c = 0;

        int excitations() const {
            return (exc_atom[0] >= 0) + (exc_atom[1] >= 0) + n_b + n_c;
        }
        std::uint64_t key() const;
    };

    int n_qubits = 0;
    int max_excitations = 1;
    bool with_e = false;  // Z configuration content: level |e> and oscillator b
    bool with_f = false;  // X configuration content: level |f> and oscillator c
    std::vector<BasisState> states;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(states.size()); }
    Eigen::Index ground_dim() const { return Eigen::Index(1) << n_qubits; }
    /// -1 when the state is not part of the truncated basis.
    Eigen::Index index_of(const BasisState& s) const;

    static TruncatedSpace make(int n_qubits, int max_excitations, bool with_e, bool with_f);

  private:
    std::unordered_map<std::uint64_t, Eigen::Index> lookup_;
};

}  // namespace ghzpump
