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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluxknit/matrix.hpp"
#include "fluxknit/rng.hpp"

namespace fluxknit {

// Desk-scale register cap.
inline constexpr std::size_t kMaxQubits = 24;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

enum class Basis { z, x };

struct MeasureResult {
    int outcome;  // Z basis: 0/1. X basis: 0 = plus, 1 = minus.
    double prob;  // Born probability of the returned outcome.
};

// Dense amplitude vector over n qubits. Qubit 0 is the least significant
// bit of the basis-state label. Multi-qubit gates declare their own basis
// ordering: the first listed target is the most significant bit of the
// gate's label.
class StateVector {
  public:
    StateVector(std::size_t num_qubits, std::size_t basis_index)
        : n_(num_qubits) {
        if (num_qubits == 0 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("qubit count out of range (1.." +
                                        std::to_string(kMaxQubits) + ")");
        }
        if (basis_index >= (std::size_t{1} << num_qubits)) {
            throw std::out_of_range("basis index out of range");
        }
        a_.assign(std::size_t{1} << num_qubits, Complex{});
        a_[basis_index] = 1.0;
    }

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return a_.size(); }

    const Complex& amp(std::size_t i) const { return a_[i]; }
    Complex& amp(std::size_t i) { return a_[i]; }
    const std::vector<Complex>& amps() const { return a_; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : a_) s += std::norm(c);
        return s;
    }

    // Applies a k-qubit unitary (k <= 3) at the given distinct targets,
    // in place via stride-pair gather/scatter on the target subspace.
    void apply_gate(const SquareMatrix& gate, std::span<const std::size_t> targets) {
        const std::size_t k = targets.size();
        if (k < 1 || k > 3) {
            throw std::invalid_argument("gate arity must be 1, 2 or 3");
        }
        if (gate.dim() != (std::size_t{1} << k)) {
            throw std::invalid_argument("gate dimension does not match target count");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (targets[i] >= n_) throw std::out_of_range("target qubit out of range");
            for (std::size_t j = i + 1; j < k; ++j) {
                if (targets[i] == targets[j]) {
                    throw std::invalid_argument("duplicate target qubits");
                }
            }
        }
        if (!is_unitary(gate, kUnitaryTol)) {
            throw std::invalid_argument("gate is not unitary");
        }

        std::array<std::size_t, 3> sorted{};
        for (std::size_t i = 0; i < k; ++i) sorted[i] = targets[i];
        std::sort(sorted.begin(), sorted.begin() + k);

        const std::size_t gdim = std::size_t{1} << k;
        std::array<Complex, 8> in{};
        std::array<Complex, 8> out{};
        const std::size_t groups = a_.size() >> k;
        for (std::size_t g = 0; g < groups; ++g) {
            // Expand g to a full index with zeros in all target positions.
            std::size_t base = g;
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t p = sorted[i];
                const std::size_t low = base & ((std::size_t{1} << p) - 1);
                base = ((base >> p) << (p + 1)) | low;
            }
            for (std::size_t lab = 0; lab < gdim; ++lab) {
                std::size_t idx = base;
                for (std::size_t j = 0; j < k; ++j) {
                    if ((lab >> (k - 1 - j)) & 1) idx |= std::size_t{1} << targets[j];
                }
                in[lab] = a_[idx];
            }
            for (std::size_t r = 0; r < gdim; ++r) {
                Complex acc{};
                for (std::size_t c = 0; c < gdim; ++c) acc += gate(r, c) * in[c];
                out[r] = acc;
            }
            for (std::size_t lab = 0; lab < gdim; ++lab) {
                std::size_t idx = base;
                for (std::size_t j = 0; j < k; ++j) {
                    if ((lab >> (k - 1 - j)) & 1) idx |= std::size_t{1} << targets[j];
                }
                a_[idx] = out[lab];
            }
        }
    }

    void apply_gate(const SquareMatrix& gate, std::initializer_list<std::size_t> targets) {
        apply_gate(gate, std::span<const std::size_t>(targets.begin(), targets.size()));
    }

    // Probability of reading `bit` on `qubit` in the Z basis.
    double probability(std::size_t qubit, int bit) const {
        if (qubit >= n_) throw std::out_of_range("qubit out of range");
        const std::size_t mask = std::size_t{1} << qubit;
        double p = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (((i & mask) != 0) == (bit != 0)) p += std::norm(a_[i]);
        }
        return p;
    }

    // Single-qubit reduced density matrix {rho00, rho01, rho10, rho11}.
    std::array<Complex, 4> reduced_density(std::size_t qubit) const {
        if (qubit >= n_) throw std::out_of_range("qubit out of range");
        const std::size_t mask = std::size_t{1} << qubit;
        std::array<Complex, 4> rho{};
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i & mask) continue;
            const Complex a0 = a_[i];
            const Complex a1 = a_[i | mask];
            rho[0] += a0 * std::conj(a0);
            rho[1] += a0 * std::conj(a1);
            rho[2] += a1 * std::conj(a0);
            rho[3] += a1 * std::conj(a1);
        }
        return rho;
    }

    // Tr(rho^2) of the single-qubit marginal; 1 iff the qubit is unentangled.
    double purity(std::size_t qubit) const {
        const auto rho = reduced_density(qubit);
        return std::norm(rho[0]) + std::norm(rho[1]) + std::norm(rho[2]) + std::norm(rho[3]);
    }

    MeasureResult measure(std::size_t qubit, Basis basis, RngStream& rng) {
        if (qubit >= n_) throw std::out_of_range("qubit out of range");
        const std::size_t mask = std::size_t{1} << qubit;
        if (basis == Basis::z) {
            const double p1 = probability(qubit, 1);
            const int outcome = rng.uniform() < p1 ? 1 : 0;
            const double p = outcome ? p1 : 1.0 - p1;
            collapse_z(mask, outcome, p);
            return {outcome, p};
        }
        // X basis: pair (i, i|mask) -> plus/minus components.
        double p_plus = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i & mask) continue;
            p_plus += 0.5 * std::norm(a_[i] + a_[i | mask]);
        }
        const int outcome = rng.uniform() < p_plus ? 0 : 1;
        const double p = outcome == 0 ? p_plus : 1.0 - p_plus;
        if (p < 1e-300) {
            throw std::runtime_error("zero-probability measurement branch");
        }
        const double sign = outcome == 0 ? 1.0 : -1.0;
        const double scale = 1.0 / std::sqrt(2.0 * p);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i & mask) continue;
            const Complex c = (a_[i] + sign * a_[i | mask]) * scale;
            a_[i] = c / std::sqrt(2.0);
            a_[i | mask] = sign * c / std::sqrt(2.0);
        }
        return {outcome, p};
    }

  private:
    void collapse_z(std::size_t mask, int outcome, double p) {
        if (p < 1e-300) {
            throw std::runtime_error("zero-probability measurement branch");
        }
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (((i & mask) != 0) == (outcome != 0)) {
                a_[i] *= scale;
            } else {
                a_[i] = Complex{};
            }
        }
    }

    std::size_t n_;
    std::vector<Complex> a_;
};

inline StateVector init_register(std::size_t num_qubits, std::size_t basis_index) {
    return StateVector(num_qubits, basis_index);
}

inline Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("state size mismatch");
    }
    Complex s{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a.amp(i)) * b.amp(i);
    }
    return s;
}

// |<a|b>|^2; 1 iff equal up to global phase.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

}  // namespace fluxknit
