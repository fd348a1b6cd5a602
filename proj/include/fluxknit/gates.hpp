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
#include <stdexcept>
#include <string>

#include "fluxknit/matrix.hpp"

namespace fluxknit {

// Named unitary with its basis-ordering convention: for 2- and 3-qubit
// gates the first listed target qubit is the most significant bit of the
// basis label, i.e. |00>,|01>,|10>,|11> reads |first,second>.
struct Gate {
    SquareMatrix m;
    std::string label;
};

// Explicitly non-unitary 4x4 operator (half-sum / half-difference of the
// two switch-conditioned block actions). Kept as a distinct type so it can
// never be fed to the state-vector gate kernel.
struct ConditionalOperator {
    SquareMatrix m;
    std::string label;
};

enum class Axis { x, y, z };

inline Gate identity(std::size_t dim) {
    return {SquareMatrix::identity(dim), "I"};
}

inline Gate pauli(Axis axis) {
    switch (axis) {
        case Axis::x:
            return {SquareMatrix(2, {0, 1, 1, 0}), "X"};
        case Axis::y:
            return {SquareMatrix(2, {0, Complex(0, -1), Complex(0, 1), 0}), "Y"};
        case Axis::z:
            return {SquareMatrix(2, {1, 0, 0, -1}), "Z"};
    }
    throw std::invalid_argument("bad axis");
}

inline Gate hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {SquareMatrix(2, {s, s, s, -s}), "H"};
}

// R_axis(theta) = I cos(theta/2) - i sigma_axis sin(theta/2).
inline Gate rotation(Axis axis, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("non-finite rotation angle");
    const Complex mi(0, -1);
    const SquareMatrix m = SquareMatrix::identity(2) * std::cos(theta / 2.0) +
                           pauli(axis).m * (mi * std::sin(theta / 2.0));
    const char* name = axis == Axis::x ? "RX" : axis == Axis::y ? "RY" : "RZ";
    return {m, std::string(name) + "(" + std::to_string(theta) + ")"};
}

// diag(1, e^{i delta}).
inline Gate phase_gate(double delta) {
    if (!std::isfinite(delta)) throw std::invalid_argument("non-finite phase angle");
    return {SquareMatrix(2, {1, 0, 0, std::polar(1.0, delta)}),
            "PHASE(" + std::to_string(delta) + ")"};
}

// Joint-phase gate: reverses the sign of |00> only.
inline Gate jp() {
    return {SquareMatrix(4, {-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}), "JP"};
}

inline Gate swap2() {
    return {SquareMatrix(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}), "SWAP"};
}

// Control = first listed qubit.
inline Gate cnot() {
    return {SquareMatrix(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}), "CNOT"};
}

inline Gate cz() {
    return {SquareMatrix(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}), "CZ"};
}

// CNOT then SWAP: |c,t> -> |t^c, c>.
inline Gate cns() {
    return {swap2().m * cnot().m, "CNS"};
}

// Block action with the switch in |0>: equal to -(JP)(SWAP).
inline Gate u0() {
    return {SquareMatrix(4, {1, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, -1}), "U0"};
}

// Block action with the switch in |1>.
inline Gate u1() {
    return {SquareMatrix(4, {-1, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 1}), "U1"};
}

// Switch-conditioned 3-qubit block unitary on ordering (s; d_i, d_{i+1}):
// |0><0|_s (x) U0 + |1><1|_s (x) U1.
inline Gate block_unitary() {
    SquareMatrix m(8);
    const SquareMatrix a = u0().m;
    const SquareMatrix b = u1().m;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = a(i, j);
            m(4 + i, 4 + j) = b(i, j);
        }
    }
    return {m, "BLOCK"};
}

// (U0 + U1)/2 = -|01><10| - |10><01|. Detects unequal neighbors.
inline ConditionalOperator u_plus() {
    return {(u0().m + u1().m) * 0.5, "U+"};
}

// (U0 - U1)/2 = |00><00| - |11><11|. Detects equal neighbors. Note the
// minus sign on |11><11|: it follows from the half-difference of the two
// block actions, although the operator is sometimes quoted with both
// projectors positive. The sign shows up as a relative phase that error
// recovery must repair.
inline ConditionalOperator u_minus() {
    return {(u0().m - u1().m) * 0.5, "U-"};
}

}  // namespace fluxknit
