#include "ghzpump/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace ghzpump {

std::uint64_t TruncatedSpace::BasisState::key() const {
    std::uint64_t k = bits;
    k = (k << 5) | static_cast<std::uint8_t>(exc_atom[0] + 1);
    k = (k << 2) | static_cast<std::uint8_t>(exc_level[0] + 1);
    k = (k << 5) | static_cast<std::uint8_t>(exc_atom[1] + 1);
    k = (k << 2) | static_cast<std::uint8_t>(exc_level[1] + 1);
    k = (k << 3) | n_b;
    k = (k << 3) | n_c;
    return k;
}

Eigen::Index TruncatedSpace::index_of(const BasisState& s) const {
    auto it = lookup_.find(s.key());
    return it == lookup_.end() ? Eigen::Index(-1) : it->second;
}

TruncatedSpace TruncatedSpace::make(int n_qubits, int max_excitations, bool with_e, bool with_f) {
    if (n_qubits < 1 || n_qubits > 20)
        throw std::invalid_argument("TruncatedSpace: n_qubits out of range");
    if (max_excitations < 1 || max_excitations > 2)
        throw std::invalid_argument("TruncatedSpace: max_excitations must be 1 or 2");
    if (!with_e && !with_f)
        throw std::invalid_argument("TruncatedSpace: at least one configuration required");

    TruncatedSpace sp;
    sp.n_qubits = n_qubits;
    sp.max_excitations = max_excitations;
    sp.with_e = with_e;
    sp.with_f = with_f;

    const std::uint32_t nbits = std::uint32_t(1) << n_qubits;
    std::vector<std::int8_t> levels;
    if (with_e) levels.push_back(0);
    if (with_f) levels.push_back(1);

    auto add = [&sp](BasisState s) { sp.states.push_back(s); };

    // excitation 0: all ground bitstrings, index == bits
    for (std::uint32_t b = 0; b < nbits; ++b) add(BasisState{b});

    for (int total = 1; total <= max_excitations; ++total) {
        // m excited atoms, the rest of the excitation in the oscillators
        for (int m = 0; m <= std::min(total, 2); ++m) {
            const int osc = total - m;
            std::vector<std::pair<int, int>> osc_split;  // (n_b, n_c)
            for (int nb = 0; nb <= osc; ++nb) {
                const int nc = osc - nb;
                if (nb > 0 && !with_e) continue;
                if (nc > 0 && !with_f) continue;
                osc_split.emplace_back(nb, nc);
            }
            if (m == 0) {
                for (auto [nb, nc] : osc_split) {
                    if (nb == 0 && nc == 0) continue;  // excitation 0 handled above
                    for (std::uint32_t b = 0; b < nbits; ++b) {
                        BasisState s{b};
                        s.n_b = static_cast<std::uint8_t>(nb);
                        s.n_c = static_cast<std::uint8_t>(nc);
                        add(s);
                    }
                }
            } else if (m == 1) {
                for (int a = 0; a < n_qubits; ++a) {
                    for (std::int8_t lvl : levels) {
                        for (auto [nb, nc] : osc_split) {
                            for (std::uint32_t b = 0; b < nbits; ++b) {
                                if ((b >> a) & 1u) continue;
                                BasisState s{b};
                                s.exc_atom[0] = static_cast<std::int8_t>(a);
                                s.exc_level[0] = lvl;
                                s.n_b = static_cast<std::uint8_t>(nb);
                                s.n_c = static_cast<std::uint8_t>(nc);
                                add(s);
                            }
                        }
                    }
                }
            } else {
                for (int a0 = 0; a0 < n_qubits; ++a0) {
                    for (int a1 = a0 + 1; a1 < n_qubits; ++a1) {
                        for (std::int8_t l0 : levels) {
                            for (std::int8_t l1 : levels) {
                                for (auto [nb, nc] : osc_split) {
                                    for (std::uint32_t b = 0; b < nbits; ++b) {
                                        if (((b >> a0) & 1u) || ((b >> a1) & 1u)) continue;
                                        BasisState s{b};
                                        s.exc_atom = {static_cast<std::int8_t>(a0),
                                                      static_cast<std::int8_t>(a1)};
                                        s.exc_level = {l0, l1};
                                        s.n_b = static_cast<std::uint8_t>(nb);
                                        s.n_c = static_cast<std::uint8_t>(nc);
                                        add(s);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    sp.lookup_.reserve(sp.states.size() * 2);
    for (Eigen::Index i = 0; i < sp.dim(); ++i) {
        auto [it, inserted] = sp.lookup_.emplace(sp.states[i].key(), i);
        if (!inserted) throw std::logic_error("TruncatedSpace: duplicate basis state");
    }
    return sp;
}

}  // namespace ghzpump
