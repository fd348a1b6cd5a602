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
#include <stdexcept>
#include <string>
#include <vector>

#include "fluxknit/chain.hpp"
#include "fluxknit/compiler.hpp"
#include "fluxknit/program.hpp"

namespace fluxknit::qec {

// One logical qubit lives on three consecutive data qubits d_i, d_{i+1},
// d_{i+2}, i.e. on two adjacent basic blocks sharing d_{i+1}.
struct LogicalBlock {
    int index = 1;

    QubitId data(int offset) const { return QubitId::data(index + offset); }

    void validate(const ChainConfig& config) const {
        if (index < 1 || index + 2 > config.num_data) {
            throw std::out_of_range("logical block outside chain bounds");
        }
    }
};

enum class SwitchOutcome { plus, minus };

struct Syndrome {
    SwitchOutcome first;   // s_i, read in the X basis
    SwitchOutcome second;  // s_{i+1}

    bool operator==(const Syndrome&) const = default;

    // (+,+)=0, (+,-)=1, (-,+)=2, (-,-)=3.
    int key() const {
        return (first == SwitchOutcome::minus ? 2 : 0) +
               (second == SwitchOutcome::minus ? 1 : 0);
    }

    std::string str() const {
        auto c = [](SwitchOutcome o) { return o == SwitchOutcome::plus ? '+' : '-'; };
        return std::string("(") + c(first) + "," + c(second) + ")";
    }
};

inline Syndrome syndrome_from_key(int key) {
    return {(key & 2) ? SwitchOutcome::minus : SwitchOutcome::plus,
            (key & 1) ? SwitchOutcome::minus : SwitchOutcome::plus};
}

enum class ErrorCase { none, first, second, third };

inline std::string error_case_name(ErrorCase c, const LogicalBlock& block) {
    switch (c) {
        case ErrorCase::none:
            return "none";
        case ErrorCase::first:
            return "d" + std::to_string(block.index);
        case ErrorCase::second:
            return "d" + std::to_string(block.index + 1);
        case ErrorCase::third:
            return "d" + std::to_string(block.index + 2);
    }
    return "?";
}

// Phase flip per data qubit per cycle.
struct ErrorModel {
    double p = 0.0;

    explicit ErrorModel(double prob) : p(prob) {
        if (!(prob >= 0.0 && prob <= 1.0)) {
            throw std::invalid_argument("flip probability must be in [0,1]");
        }
    }
};

struct PauliOp {
    enum class Kind { x, z };
    Kind kind;
    int offset;  // 0..2 within the block

    std::string str(const LogicalBlock& block) const {
        return std::string(kind == Kind::x ? "X" : "Z") + " d" +
               std::to_string(block.index + offset);
    }
};

// --- encoding ---------------------------------------------------------

// Builds a fresh chain carrying amp0|+++> + amp1|---> on the block: the
// data qubit d_i is prepared to amp0|0> + amp1|1>, a dressed one-way pass
// fans it out to amp0|000> + amp1|111>, and a Hadamard layer moves to the
// |+/-> basis. Switches outside the block are disabled for the pass and
// every switch ends in |0>.
inline ChainState encode(const ChainConfig& config, const LogicalBlock& block, Complex amp0,
                         Complex amp1) {
    block.validate(config);
    if (std::abs(std::norm(amp0) + std::norm(amp1) - 1.0) > kNormTol) {
        throw std::invalid_argument("logical amplitudes are not normalized");
    }
    ChainState chain = new_chain(config);
    prepare_qubit(chain, block.data(0), amp0, amp1);

    PassProgram pass = fanout_segment(block.index, block.index + 2, config.num_data);
    for (int s = 1; s <= config.num_switches(); ++s) {
        const bool on = s == block.index || s == block.index + 1;
        pass.instructions.insert(pass.instructions.begin(), SetSwitchInstr{s, on});
    }
    SingleLayer hadamards;
    for (int off = 0; off < 3; ++off) {
        hadamards.gates.emplace_back(block.data(off), hadamard().m);
    }
    pass.instructions.push_back(hadamards);
    execute(chain, pass);
    return chain;
}

// --- error injection --------------------------------------------------

inline void inject(ChainState& chain, const LogicalBlock& block, const std::vector<int>& offsets) {
    block.validate(chain.config);
    const Gate z = pauli(Axis::z);
    for (int off : offsets) {
        if (off < 0 || off > 2) throw std::out_of_range("flip location outside the block");
        apply_gate(chain, z, {block.data(off)});
    }
}

// Independent sigma_z flip on each block qubit with probability p.
// Returns the offsets actually flipped.
inline std::vector<int> inject(ChainState& chain, const LogicalBlock& block,
                               const ErrorModel& model, RngStream& rng) {
    std::vector<int> flipped;
    for (int off = 0; off < 3; ++off) {
        if (rng.bernoulli(model.p)) flipped.push_back(off);
    }
    inject(chain, block, flipped);
    return flipped;
}

// --- syndrome extraction ----------------------------------------------

// Interference-based detection pass: Hadamard the block's data qubits,
// raise both block switches to |+>, run one LTR fluxon pass over the two
// blocks, and read the switches in the X basis. For an encoded state with
// any pattern of phase flips both measurement outcomes are deterministic.
// The switches are re-prepared to |0> before returning, ready for the next
// pass; the data register keeps the (displaced, phase-marked) logical
// information for recovery.
inline Syndrome extract_syndrome(ChainState& chain, const LogicalBlock& block,
                                 SeedSequence& rng) {
    block.validate(chain.config);
    SingleLayer hadamards;
    for (int off = 0; off < 3; ++off) {
        hadamards.gates.emplace_back(block.data(off), hadamard().m);
    }
    apply_single_layer(chain, hadamards.gates);
    prepare_switch(chain, block.index, SwitchPrep::plus);
    prepare_switch(chain, block.index + 1, SwitchPrep::plus);

    const std::vector<bool> saved = chain.config.switch_enabled;
    for (int s = 1; s <= chain.config.num_switches(); ++s) {
        chain.config.switch_enabled[s - 1] = s == block.index || s == block.index + 1;
    }
    fluxon_sweep(chain, SweepDirection::ltr);
    chain.config.switch_enabled = saved;

    RngStream r1 = rng.stream();
    RngStream r2 = rng.stream();
    const MeasureResult m1 = measure_switch(chain, block.index, Basis::x, r1);
    const MeasureResult m2 = measure_switch(chain, block.index + 1, Basis::x, r2);
    prepare_switch(chain, block.index, SwitchPrep::zero);
    prepare_switch(chain, block.index + 1, SwitchPrep::zero);
    return {m1.outcome == 0 ? SwitchOutcome::plus : SwitchOutcome::minus,
            m2.outcome == 0 ? SwitchOutcome::plus : SwitchOutcome::minus};
}

// --- decoding table ----------------------------------------------------

struct DecodingTable {
    std::array<ErrorCase, 4> derived;    // syndrome key -> flip location
    std::array<ErrorCase, 4> reference;  // commonly quoted mapping, for comparison
    std::array<Syndrome, 4> by_case;     // flip location -> syndrome
    std::array<std::vector<PauliOp>, 4> recovery;  // syndrome key -> correction word

    bool row_matches_reference(int key) const { return derived[key] == reference[key]; }
};

namespace detail {

inline void apply_recovery_word(ChainState& chain, const LogicalBlock& block,
                                const std::vector<PauliOp>& word) {
    for (const auto& op : word) {
        apply_gate(chain, op.kind == PauliOp::Kind::x ? pauli(Axis::x) : pauli(Axis::z),
                   {block.data(op.offset)});
    }
    SingleLayer hadamards;
    for (int off = 0; off < 3; ++off) {
        hadamards.gates.emplace_back(block.data(off), hadamard().m);
    }
    apply_single_layer(chain, hadamards.gates);
}

// Solves for the shortest X/Z word on the block qubits that maps the
// post-detection state back onto the encoded input, trying all 64 per-qubit
// combinations in a fixed order and validating on two probe inputs.
inline std::vector<PauliOp> solve_recovery_word(ErrorCase flip_case) {
    const ChainConfig config(3);
    const LogicalBlock block{1};
    const std::array<std::pair<Complex, Complex>, 2> probes = {
        std::pair<Complex, Complex>{0.6, 0.8},
        std::pair<Complex, Complex>{Complex(0.48, 0.36), Complex(0.0, 0.8)},
    };
    for (int combo = 0; combo < 64; ++combo) {
        std::vector<PauliOp> word;
        for (int off = 0; off < 3; ++off) {
            const int w = (combo >> (2 * off)) & 3;  // 0:I 1:X 2:Z 3:XZ
            if (w & 1) word.push_back({PauliOp::Kind::x, off});
            if (w & 2) word.push_back({PauliOp::Kind::z, off});
        }
        bool ok = true;
        for (const auto& [a0, a1] : probes) {
            ChainState chain = encode(config, block, a0, a1);
            const ChainState reference = chain;
            if (flip_case != ErrorCase::none) {
                inject(chain, block, {static_cast<int>(flip_case) - 1});
            }
            SeedSequence rng(0);
            extract_syndrome(chain, block, rng);
            apply_recovery_word(chain, block, word);
            if (fidelity(chain.reg, reference.reg) < 1.0 - 1e-9) {
                ok = false;
                break;
            }
        }
        if (ok) return word;
    }
    throw std::runtime_error(
        "no single-qubit X/Z word restores the encoded state for flip case " +
        std::to_string(static_cast<int>(flip_case)) + "; dumping is advised");
}

}  // namespace detail

// Derived once per process by exhaustively simulating the four flip cases
// on a canonical three-qubit chain with the default LTR detection pass.
// The table depends on the sweep direction, so it is generated, not typed
// in; the commonly quoted reference mapping is stored alongside so runs
// can report where the two disagree.
inline const DecodingTable& decoding_table() {
    static const DecodingTable cached = [] {
        DecodingTable t;
        t.reference = {ErrorCase::third, ErrorCase::second, ErrorCase::first, ErrorCase::none};
        const ChainConfig config(3);
        const LogicalBlock block{1};
        t.derived.fill(ErrorCase::none);
        bool seen[4] = {false, false, false, false};
        for (int c = 0; c < 4; ++c) {
            const ErrorCase flip_case = static_cast<ErrorCase>(c);
            ChainState chain = encode(config, block, 0.6, 0.8);
            if (flip_case != ErrorCase::none) inject(chain, block, {c - 1});
            SeedSequence rng(0);
            const Syndrome s = extract_syndrome(chain, block, rng);
            if (seen[s.key()]) {
                throw std::runtime_error("syndrome map is not injective over the flip cases");
            }
            seen[s.key()] = true;
            t.derived[s.key()] = flip_case;
            t.by_case[c] = s;
        }
        for (int key = 0; key < 4; ++key) {
            t.recovery[key] = detail::solve_recovery_word(t.derived[key]);
        }
        return t;
    }();
    return cached;
}

inline ErrorCase decode(const Syndrome& syndrome) {
    return decoding_table().derived[syndrome.key()];
}

// Applies the syndrome-indexed correction word, then the Hadamard layer
// returning the block to the |+/-> encoded basis. After a single flip the
// logical fidelity to the original encoded state is 1 up to 1e-9.
inline void recover(ChainState& chain, const Syndrome& syndrome, const LogicalBlock& block) {
    block.validate(chain.config);
    detail::apply_recovery_word(chain, block, decoding_table().recovery[syndrome.key()]);
}

// --- full cycles and Monte Carlo ---------------------------------------

struct QecReport {
    std::uint64_t trial_seed = 0;
    Complex amp0, amp1;
    std::vector<int> injected;  // flipped offsets within the block
    Syndrome syndrome{SwitchOutcome::minus, SwitchOutcome::minus};
    ErrorCase decoded = ErrorCase::none;
    std::vector<PauliOp> recovery;
    double fidelity_after = 0.0;
    bool failed = false;
};

inline constexpr double kFailureFidelity = 1.0 - 1e-6;

inline QecReport run_cycle(const ChainConfig& config, const LogicalBlock& block, Complex amp0,
                           Complex amp1, const ErrorModel& model, std::uint64_t trial_seed) {
    QecReport report;
    report.trial_seed = trial_seed;
    report.amp0 = amp0;
    report.amp1 = amp1;

    SeedSequence rng(trial_seed);
    ChainState chain = encode(config, block, amp0, amp1);
    const ChainState reference = chain;
    RngStream inject_stream = rng.stream();
    report.injected = inject(chain, block, model, inject_stream);
    report.syndrome = extract_syndrome(chain, block, rng);
    report.decoded = decode(report.syndrome);
    report.recovery = decoding_table().recovery[report.syndrome.key()];
    recover(chain, report.syndrome, block);
    report.fidelity_after = fidelity(chain.reg, reference.reg);
    report.failed = report.fidelity_after < kFailureFidelity;
    return report;
}

// Probability that two or more of the three qubits flip:
// 3p^2(1-p) + p^3 = 3p^2 - 2p^3. The code corrects any single flip and
// fails on every multi-flip pattern, so the Monte Carlo estimate converges
// to this closed form.
inline double exact_failure_law(double p) {
    return 3.0 * p * p - 2.0 * p * p * p;
}

struct ErrorRateEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;   // Wilson 95% interval
    double ci_high = 0.0;
    long failures = 0;
    long trials = 0;
};

// Logical inputs are fixed at (0.6, 0.8): with unequal nonzero amplitudes
// every residual logical X, Z or XZ shows up as fidelity well below the
// failure threshold, so a trial fails exactly when two or more flips land.
inline ErrorRateEstimate logical_error_rate(double p, long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const ErrorModel model(p);
    const ChainConfig config(3);
    const LogicalBlock block{1};
    ErrorRateEstimate est;
    est.trials = trials;
    for (long t = 0; t < trials; ++t) {
        const QecReport r = run_cycle(config, block, 0.6, 0.8, model, mix64(seed, t));
        if (r.failed) ++est.failures;
    }
    est.estimate = static_cast<double>(est.failures) / static_cast<double>(trials);
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double ph = est.estimate;
    const double denom = 1.0 + z * z / n;
    const double center = (ph + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n)) / denom;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    return est;
}

}  // namespace fluxknit::qec
