// Copyright 2026 The fluxknit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluxknit/gates.hpp"
#include "fluxknit/rng.hpp"
#include "fluxknit/statevec.hpp"

namespace fluxknit {

// Chain of N data qubits interleaved with N-1 switch qubits:
// d1 s1 d2 s2 ... dN. Register position 0 holds d1 (least significant bit).
struct ChainConfig {
    int num_data = 2;
    std::vector<bool> switch_enabled;  // size num_data - 1; true = resonant
    double coupling_g = 1.0;           // metadata only
    double hbar = 1.0;                 // metadata only

    explicit ChainConfig(int n = 2)
        : num_data(n), switch_enabled(n > 0 ? n - 1 : 0, true) {
        if (n < 2) throw std::invalid_argument("chain needs at least 2 data qubits");
    }

    int num_switches() const { return num_data - 1; }
    std::size_t num_register_qubits() const { return 2 * num_data - 1; }
};

// Interaction duration after which data and switch decouple. Metadata for
// run logs; the simulator itself is gate-level.
inline double t_pi(const ChainConfig& config) {
    if (config.coupling_g <= 0.0) {
        throw std::invalid_argument("coupling constant must be positive");
    }
    return config.hbar * std::acos(-1.0) / (config.coupling_g * std::sqrt(2.0));
}

struct QubitId {
    enum class Kind { data, sw };
    Kind kind;
    int index;  // 1-based: d1..dN or s1..s(N-1)

    static QubitId data(int i) { return {Kind::data, i}; }
    static QubitId sw(int i) { return {Kind::sw, i}; }

    bool operator==(const QubitId&) const = default;

    std::string name() const {
        return (kind == Kind::data ? "d" : "s") + std::to_string(index);
    }
};

enum class SweepDirection { ltr, rtl };

enum class SwitchPrep { zero, one, plus };

struct ChainState {
    ChainConfig config;
    StateVector reg;

    explicit ChainState(const ChainConfig& cfg)
        : config(cfg), reg(cfg.num_register_qubits(), 0) {}

    std::size_t position(QubitId q) const {
        if (q.kind == QubitId::Kind::data) {
            if (q.index < 1 || q.index > config.num_data) {
                throw std::out_of_range("data qubit index out of range");
            }
            return static_cast<std::size_t>(2 * (q.index - 1));
        }
        if (q.index < 1 || q.index > config.num_switches()) {
            throw std::out_of_range("switch qubit index out of range");
        }
        return static_cast<std::size_t>(2 * q.index - 1);
    }
};

inline ChainState new_chain(const ChainConfig& config) {
    return ChainState(config);
}

// Product basis state: data_bits[i] seeds d_{i+1}, switch_bits[i] seeds
// s_{i+1}. Empty vectors mean all |0>.
inline ChainState new_chain(const ChainConfig& config, const std::vector<int>& data_bits,
                            const std::vector<int>& switch_bits = {}) {
    if (!data_bits.empty() && data_bits.size() != static_cast<std::size_t>(config.num_data)) {
        throw std::invalid_argument("data bit count does not match chain size");
    }
    if (!switch_bits.empty() &&
        switch_bits.size() != static_cast<std::size_t>(config.num_switches())) {
        throw std::invalid_argument("switch bit count does not match chain size");
    }
    ChainState chain(config);
    std::size_t index = 0;
    for (std::size_t i = 0; i < data_bits.size(); ++i) {
        if (data_bits[i] != 0 && data_bits[i] != 1) {
            throw std::invalid_argument("basis bits must be 0 or 1");
        }
        if (data_bits[i]) index |= std::size_t{1} << (2 * i);
    }
    for (std::size_t i = 0; i < switch_bits.size(); ++i) {
        if (switch_bits[i] != 0 && switch_bits[i] != 1) {
            throw std::invalid_argument("basis bits must be 0 or 1");
        }
        if (switch_bits[i]) index |= std::size_t{1} << (2 * i + 1);
    }
    chain.reg = StateVector(config.num_register_qubits(), index);
    return chain;
}

inline void apply_gate(ChainState& chain, const Gate& g, std::vector<QubitId> targets) {
    std::vector<std::size_t> pos;
    pos.reserve(targets.size());
    for (const auto& q : targets) pos.push_back(chain.position(q));
    chain.reg.apply_gate(g.m, pos);
}

inline void set_switch(ChainState& chain, int i, bool enabled) {
    if (i < 1 || i > chain.config.num_switches()) {
        throw std::out_of_range("switch index out of range");
    }
    chain.config.switch_enabled[i - 1] = enabled;
}

// Sets an unentangled qubit to a0|0> + a1|1>. The qubit must currently be
// in a pure marginal (purity within 1e-10), otherwise this is a protocol
// misuse and an error is raised.
inline void prepare_qubit(ChainState& chain, QubitId q, Complex a0, Complex a1) {
    const double n = std::norm(a0) + std::norm(a1);
    if (std::abs(n - 1.0) > kNormTol) {
        throw std::invalid_argument("preparation amplitudes are not normalized");
    }
    const std::size_t pos = chain.position(q);
    if (std::abs(chain.reg.purity(pos) - 1.0) > kNormTol) {
        throw std::runtime_error("cannot prepare " + q.name() +
                                 ": qubit is entangled with the rest of the chain");
    }
    // Current pure marginal = dominant eigenvector of the reduced density
    // matrix. Project the register on it and re-tensor the requested state.
    const auto rho = chain.reg.reduced_density(pos);
    Complex phi0, phi1;
    if (std::abs(rho[1]) < 1e-14) {
        const bool zero_dominant = rho[0].real() >= rho[3].real();
        phi0 = zero_dominant ? 1.0 : 0.0;
        phi1 = zero_dominant ? 0.0 : 1.0;
    } else {
        // Eigenvector for the eigenvalue ~1 of a rank-1 2x2 Hermitian rho.
        const double tr = rho[0].real() + rho[3].real();
        const double det = (rho[0] * rho[3] - rho[1] * rho[2]).real();
        const double lam = tr / 2.0 + std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        phi0 = rho[1];
        phi1 = lam - rho[0];
        const double nn = std::sqrt(std::norm(phi0) + std::norm(phi1));
        phi0 /= nn;
        phi1 /= nn;
    }
    StateVector& reg = chain.reg;
    const std::size_t mask = std::size_t{1} << pos;
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        if (i & mask) continue;
        const Complex rest = std::conj(phi0) * reg.amp(i) + std::conj(phi1) * reg.amp(i | mask);
        reg.amp(i) = a0 * rest;
        reg.amp(i | mask) = a1 * rest;
    }
}

inline void prepare_switch(ChainState& chain, int i, SwitchPrep state) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (state) {
        case SwitchPrep::zero:
            prepare_qubit(chain, QubitId::sw(i), 1.0, 0.0);
            break;
        case SwitchPrep::one:
            prepare_qubit(chain, QubitId::sw(i), 0.0, 1.0);
            break;
        case SwitchPrep::plus:
            prepare_qubit(chain, QubitId::sw(i), s, s);
            break;
    }
}

// One fluxon pass: the switch-conditioned block unitary is applied to each
// enabled block strictly in spatial order (consecutive blocks share a data
// qubit, so the order is observable). Disabled blocks are skipped entirely.
inline void fluxon_sweep(ChainState& chain, SweepDirection dir) {
    const Gate block = block_unitary();
    const int nb = chain.config.num_switches();
    for (int step = 0; step < nb; ++step) {
        const int i = dir == SweepDirection::ltr ? step + 1 : nb - step;
        if (!chain.config.switch_enabled[i - 1]) continue;
        apply_gate(chain, block, {QubitId::sw(i), QubitId::data(i), QubitId::data(i + 1)});
    }
}

// Applies an optional 1-qubit gate per qubit, as one tensor-product layer.
inline void apply_single_layer(ChainState& chain, const std::vector<std::pair<QubitId, SquareMatrix>>& layer) {
    for (const auto& [q, m] : layer) {
        const std::size_t pos[1] = {chain.position(q)};
        chain.reg.apply_gate(m, pos);
    }
}

inline MeasureResult measure_qubit(ChainState& chain, QubitId q, Basis basis, RngStream& rng) {
    return chain.reg.measure(chain.position(q), basis, rng);
}

inline MeasureResult measure_switch(ChainState& chain, int i, Basis basis, RngStream& rng) {
    return measure_qubit(chain, QubitId::sw(i), basis, rng);
}

}  // namespace fluxknit
