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
#include <vector>

#include "fluxknit/gates.hpp"
#include "fluxknit/program.hpp"

namespace fluxknit {

// V = e^{i delta} Rz(alpha) Ry(theta) Rz(beta).
struct EulerAngles {
    double delta = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
    double beta = 0.0;
};

inline SquareMatrix angles_to_matrix(const EulerAngles& e) {
    return (rotation(Axis::z, e.alpha).m * rotation(Axis::y, e.theta).m *
            rotation(Axis::z, e.beta).m) *
           std::polar(1.0, e.delta);
}

// Extracts (delta, alpha, theta, beta) from a 2x2 unitary. theta lands in
// [0, pi]; at the degenerate poles theta in {0, pi} the split between alpha
// and beta is arbitrary and beta is canonicalized to 0.
inline EulerAngles zyz_decompose(const SquareMatrix& v) {
    if (v.dim() != 2) throw std::invalid_argument("expected a 2x2 matrix");
    if (!is_unitary(v, kUnitaryTol)) throw std::invalid_argument("matrix is not unitary");

    EulerAngles e;
    const Complex det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    e.delta = 0.5 * std::arg(det);
    const double c = std::abs(v(0, 0));
    const double s = std::abs(v(1, 0));
    e.theta = 2.0 * std::atan2(s, c);
    if (s <= 1e-12) {
        e.beta = 0.0;
        e.alpha = 2.0 * (std::arg(v(1, 1)) - e.delta);
    } else if (c <= 1e-12) {
        e.beta = 0.0;
        e.alpha = 2.0 * (std::arg(v(1, 0)) - e.delta);
    } else {
        const double ang1 = std::arg(v(1, 1));
        const double ang2 = std::arg(v(1, 0));
        e.alpha = ang1 + ang2 - 2.0 * e.delta;
        e.beta = ang1 - ang2;
    }
    return e;
}

struct AbcFactors {
    SquareMatrix a;
    SquareMatrix b;
    SquareMatrix c;
};

// A B C = I and e^{i delta} A X B X C = V, using X Ry(t) X = Ry(-t) and
// X Rz(t) X = Rz(-t).
inline AbcFactors abc_factors(const EulerAngles& e) {
    AbcFactors f;
    f.a = rotation(Axis::z, e.alpha).m * rotation(Axis::y, e.theta / 2.0).m;
    f.b = rotation(Axis::y, -e.theta / 2.0).m *
          rotation(Axis::z, -(e.alpha + e.beta) / 2.0).m;
    f.c = rotation(Axis::z, (e.beta - e.alpha) / 2.0).m;
    return f;
}

// Single-qubit layers around one block gate that turn it into a CNS, i.e.
// (post_first (x) post_second) U0 (pre_first (x) pre_second) = phase * CNS.
// The factors also satisfy pre_first * post_second = phase * I, which is
// what lets consecutive dressed blocks in one sweep telescope into a CNS
// cascade with layers only at the ends of the pass.
struct CnsDressing {
    SquareMatrix pre_first, pre_second;
    SquareMatrix post_first, post_second;
};

namespace detail {

inline std::vector<SquareMatrix> dressing_words() {
    const SquareMatrix singles[4] = {SquareMatrix::identity(2), pauli(Axis::x).m,
                                     pauli(Axis::z).m, hadamard().m};
    std::vector<SquareMatrix> words(singles, singles + 4);
    for (const auto& a : singles) {
        for (const auto& b : singles) {
            words.push_back(a * b);
        }
    }
    return words;
}

}  // namespace detail

// Exhaustive search over single-qubit words of length <= 2 over {I, X, Z, H}
// for a chainable CNS dressing of the block gate. The result is cached; the
// search runs once per process.
inline const CnsDressing& cns_dressing() {
    static const CnsDressing cached = [] {
        const std::vector<SquareMatrix> words = detail::dressing_words();
        const SquareMatrix u = u0().m;
        const SquareMatrix target = cns().m;
        const SquareMatrix eye = SquareMatrix::identity(2);
        for (const auto& p1 : words) {
            for (const auto& p2 : words) {
                for (const auto& q1 : words) {
                    if (!equal_up_to_global_phase(q1 * p2, eye, 1e-12)) continue;
                    const SquareMatrix left = tensor(p1, p2) * u;
                    for (const auto& q2 : words) {
                        if (equal_up_to_global_phase(left * tensor(q1, q2), target, 1e-12)) {
                            return CnsDressing{q1, q2, p1, p2};
                        }
                    }
                }
            }
        }
        throw std::runtime_error(
            "no chainable CNS dressing exists over words of length <= 2 on {I,X,Z,H}; "
            "the block gate algebra is inconsistent with a CNS construction");
    }();
    return cached;
}

namespace detail {

// Forward-pass dressing layers for a CNS cascade on data wires [a, b]:
// pre goes before the LTR sweep, post after it.
inline void cascade_layers(int a, int b, SingleLayer& pre, SingleLayer& post) {
    const CnsDressing& d = cns_dressing();
    pre.gates.emplace_back(QubitId::data(a), d.pre_first);
    for (int j = a + 1; j <= b; ++j) {
        pre.gates.emplace_back(QubitId::data(j), d.pre_second);
    }
    for (int j = a; j <= b - 1; ++j) {
        post.gates.emplace_back(QubitId::data(j), d.post_first);
    }
    post.gates.emplace_back(QubitId::data(b), d.post_second);
}

// Return-pass dressing layers undoing the cascade: an RTL sweep dressed
// with the inverse factors realizes the inverse cascade.
inline void inverse_cascade_layers(int a, int b, SingleLayer& pre, SingleLayer& post) {
    const CnsDressing& d = cns_dressing();
    for (int j = a; j <= b - 1; ++j) {
        pre.gates.emplace_back(QubitId::data(j), dagger(d.post_first));
    }
    pre.gates.emplace_back(QubitId::data(b), dagger(d.post_second));
    post.gates.emplace_back(QubitId::data(a), dagger(d.pre_first));
    for (int j = a + 1; j <= b; ++j) {
        post.gates.emplace_back(QubitId::data(j), dagger(d.pre_second));
    }
}

inline SingleLayer merge_layers(const SingleLayer& first, const SingleLayer& second) {
    // Gate per wire = second * first (first acts first).
    SingleLayer merged = second;
    for (const auto& [q, m] : first.gates) {
        bool found = false;
        for (auto& [mq, mm] : merged.gates) {
            if (mq == q) {
                mm = mm * m;
                found = true;
                break;
            }
        }
        if (!found) merged.gates.emplace_back(q, m);
    }
    return merged;
}

}  // namespace detail

// One-way pass realizing the CNS cascade CNS(a,a+1); ...; CNS(b-1,b) on the
// data wires of [a, b], up to global phase. Emits no switch settings; all
// blocks a..b-1 must be enabled. Logical wire a ends at position b, every
// other segment wire shifts down one.
inline PassProgram fanout_segment(int a, int b, int num_data) {
    if (a < 1 || b > num_data || a >= b) {
        throw std::invalid_argument("invalid fan-out segment");
    }
    PassProgram p;
    p.final_wires = WirePermutation(num_data);
    SingleLayer pre, post;
    detail::cascade_layers(a, b, pre, post);
    p.instructions.push_back(pre);
    p.instructions.push_back(SweepInstr{SweepDirection::ltr});
    p.instructions.push_back(post);
    for (int i = a; i <= b - 1; ++i) {
        p.final_wires.swap_positions(i, i + 1);
    }
    return p;
}

// Full-chain fan-out from d1: one dressed LTR pass equal to the cascade
// CNS(1,2); CNS(2,3); ...; CNS(N-1,N) up to global phase. Requires every
// switch enabled.
inline PassProgram compile_fanout(int num_data) {
    if (num_data < 2) throw std::invalid_argument("fan-out needs at least 2 data qubits");
    return fanout_segment(1, num_data, num_data);
}

namespace detail {

// Round trip for a control LEFT of its target. The dressed LTR pass builds
// a CNS cascade over the covering segment; after it the XOR of control and
// target sits on wire target-1, where the middle layer applies B; the
// dressed RTL pass undoes the cascade, restoring the wire permutation. The
// delta phase rides on the control wire as diag(1, e^{i delta}).
inline PassProgram controlled_from_left(int num_data, int control, int target,
                                        const EulerAngles& angles) {
    const AbcFactors abc = abc_factors(angles);
    const CnsDressing& d = cns_dressing();
    const int a = control;
    const int b = target;
    const int mid_wire = target - 1;

    PassProgram p;
    p.final_wires = WirePermutation(num_data);
    for (int i = 1; i <= num_data - 1; ++i) {
        p.instructions.push_back(SetSwitchInstr{i, i >= a && i <= b - 1});
    }

    SingleLayer user_pre;
    user_pre.gates.emplace_back(QubitId::data(control), phase_gate(angles.delta).m);
    user_pre.gates.emplace_back(QubitId::data(target), abc.c);

    SingleLayer fwd_pre, fwd_post, bwd_pre, bwd_post;
    cascade_layers(a, b, fwd_pre, fwd_post);
    inverse_cascade_layers(a, b, bwd_pre, bwd_post);

    // Middle layer: the inverse-pass dressing cancels the forward-pass
    // dressing wire by wire, leaving only the conditioned rotation.
    SingleLayer mid;
    mid.gates.emplace_back(QubitId::data(mid_wire),
                           dagger(d.post_first) * abc.b * d.post_first);

    SingleLayer user_post;
    user_post.gates.emplace_back(QubitId::data(target), abc.a);

    p.instructions.push_back(merge_layers(user_pre, fwd_pre));
    p.instructions.push_back(SweepInstr{SweepDirection::ltr});
    p.instructions.push_back(mid);
    p.instructions.push_back(SweepInstr{SweepDirection::rtl});
    p.instructions.push_back(merge_layers(bwd_post, user_post));
    return p;
}

struct EigenDecomp2 {
    SquareMatrix w;  // unitary of eigenvectors, columns
    double phi1 = 0.0, phi2 = 0.0;
};

// V = W diag(e^{i phi1}, e^{i phi2}) W^dag for a 2x2 unitary V.
inline EigenDecomp2 eigendecompose_unitary2(const SquareMatrix& v) {
    EigenDecomp2 e;
    if (std::abs(v(0, 1)) < 1e-13 && std::abs(v(1, 0)) < 1e-13) {
        e.w = SquareMatrix::identity(2);
        e.phi1 = std::arg(v(0, 0));
        e.phi2 = std::arg(v(1, 1));
        return e;
    }
    const Complex tr = v(0, 0) + v(1, 1);
    const Complex det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = (tr + disc) / 2.0;
    // For a non-diagonal unitary |v01| = |v10| > 0, so this vector never
    // degenerates.
    Complex x = v(0, 1);
    Complex y = l1 - v(0, 0);
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    x /= n;
    y /= n;
    e.w = SquareMatrix(2, {x, -std::conj(y), y, std::conj(x)});
    e.phi1 = std::arg(l1);
    const Complex l2 = det / l1;
    e.phi2 = std::arg(l2);
    return e;
}

}  // namespace detail

// Compiles an arbitrary controlled-V between two data qubits into one
// round-trip program (LTR pass, middle layer, RTL pass) acting as V on the
// target iff the control reads |1>, identity elsewhere, with all switches
// decoupled back to |0> and the wire permutation restored. A control right
// of the target is reduced to the symmetric controlled-phase: with
// V = W diag(e^{i phi1}, e^{i phi2}) W^dag, the program is the phase gate
// diag(1, e^{i phi1}) on the control plus a controlled-phase of
// phi2 - phi1 between the pair, conjugated by W on the target wire.
inline PassProgram compile_controlled_v(int num_data, int control, int target,
                                        const SquareMatrix& v) {
    if (control < 1 || control > num_data || target < 1 || target > num_data) {
        throw std::invalid_argument("control or target outside the chain");
    }
    if (control == target) throw std::invalid_argument("control equals target");
    if (control < target) {
        return detail::controlled_from_left(num_data, control, target, zyz_decompose(v));
    }

    if (v.dim() != 2) throw std::invalid_argument("expected a 2x2 matrix");
    if (!is_unitary(v, kUnitaryTol)) throw std::invalid_argument("matrix is not unitary");
    const detail::EigenDecomp2 e = detail::eigendecompose_unitary2(v);
    const double psi = e.phi2 - e.phi1;
    // diag(1, e^{i psi}) = e^{i psi/2} Rz(psi).
    const EulerAngles cphase{psi / 2.0, psi, 0.0, 0.0};
    PassProgram p = detail::controlled_from_left(num_data, target, control, cphase);

    SingleLayer extra_pre, extra_post;
    extra_pre.gates.emplace_back(QubitId::data(target), dagger(e.w));
    extra_pre.gates.emplace_back(QubitId::data(control), phase_gate(e.phi1).m);
    extra_post.gates.emplace_back(QubitId::data(target), e.w);
    for (auto& ins : p.instructions) {
        if (auto* layer = std::get_if<SingleLayer>(&ins)) {
            *layer = detail::merge_layers(extra_pre, *layer);
            break;
        }
    }
    for (auto it = p.instructions.rbegin(); it != p.instructions.rend(); ++it) {
        if (auto* layer = std::get_if<SingleLayer>(&*it)) {
            *layer = detail::merge_layers(*layer, extra_post);
            break;
        }
    }
    return p;
}

inline PassProgram compile_controlled_v(int num_data, int control, int target,
                                        const EulerAngles& angles) {
    if (control < target) {
        if (control < 1 || target > num_data) {
            throw std::invalid_argument("control or target outside the chain");
        }
        return detail::controlled_from_left(num_data, control, target, angles);
    }
    return compile_controlled_v(num_data, control, target, angles_to_matrix(angles));
}

// Disables every switch left of d_k, so subsequent sweeps act only on
// d_k..d_N and d_k behaves as the starting qubit.
inline PassProgram assign_control(const PassProgram& program, int start_qubit, int num_data) {
    if (start_qubit < 1 || start_qubit > num_data) {
        throw std::out_of_range("starting qubit outside the chain");
    }
    PassProgram p;
    p.final_wires = program.final_wires;
    for (int i = 1; i < start_qubit; ++i) {
        p.instructions.push_back(SetSwitchInstr{i, false});
    }
    p.instructions.insert(p.instructions.end(), program.instructions.begin(),
                          program.instructions.end());
    return p;
}

// Dense data-qubit semantics of a measurement-free program: runs it on
// every data basis state with all switches in |0>, asserts the switches
// decouple back to |0> on each column, and returns the 2^N x 2^N matrix.
// Data label convention: bit i-1 of the label is d_i (d1 = least
// significant bit).
inline SquareMatrix program_semantics(const PassProgram& program, int num_data) {
    if (program.has_measurement()) {
        throw std::invalid_argument("program with measurements has no unitary semantics");
    }
    const std::size_t dim = std::size_t{1} << num_data;
    SquareMatrix u(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        ChainState chain{ChainConfig(num_data)};
        std::size_t reg_index = 0;
        for (int q = 0; q < num_data; ++q) {
            if ((col >> q) & 1) reg_index |= std::size_t{1} << (2 * q);
        }
        chain.reg = StateVector(chain.config.num_register_qubits(), reg_index);
        execute(chain, program);

        double leak = 0.0;
        for (std::size_t i = 0; i < chain.reg.dim(); ++i) {
            bool switches_zero = true;
            for (int s = 1; s <= chain.config.num_switches(); ++s) {
                if ((i >> (2 * s - 1)) & 1) {
                    switches_zero = false;
                    break;
                }
            }
            if (!switches_zero) leak += std::norm(chain.reg.amp(i));
        }
        if (leak > kNormTol) {
            throw std::runtime_error("switches failed to decouple to |0> (leak " +
                                     std::to_string(leak) + " on column " +
                                     std::to_string(col) + ")");
        }
        for (std::size_t row = 0; row < dim; ++row) {
            std::size_t idx = 0;
            for (int q = 0; q < num_data; ++q) {
                if ((row >> q) & 1) idx |= std::size_t{1} << (2 * q);
            }
            u(row, col) = chain.reg.amp(idx);
        }
    }
    if (!is_unitary(u, kNormTol)) {
        throw std::runtime_error("program semantics is not unitary");
    }
    return u;
}

}  // namespace fluxknit
