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

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluxknit/qec.hpp"
#include "fluxknit/script.hpp"

namespace fluxknit {

struct MeasurementRecord {
    int line = 0;
    std::string qubit;
    Basis basis = Basis::z;
    int outcome = 0;
    double prob = 0.0;

    std::string outcome_str() const {
        if (basis == Basis::z) return outcome ? "1" : "0";
        return outcome ? "-" : "+";
    }
};

struct DumpRecord {
    int line = 0;  // 0 = final dump requested by the caller
    std::vector<Complex> amplitudes;
};

struct RunResult {
    std::uint64_t seed = 0;
    int chain_size = 0;
    double t_pi_value = 0.0;
    std::vector<MeasurementRecord> measurements;
    std::vector<DumpRecord> dumps;
    double wall_ms = 0.0;  // informational; excluded from serialized output
};

namespace detail {

inline SquareMatrix named_gate_matrix(NamedGate g, double angle) {
    switch (g) {
        case NamedGate::x:
            return pauli(Axis::x).m;
        case NamedGate::y:
            return pauli(Axis::y).m;
        case NamedGate::z:
            return pauli(Axis::z).m;
        case NamedGate::h:
            return hadamard().m;
        case NamedGate::rx:
            return rotation(Axis::x, angle).m;
        case NamedGate::ry:
            return rotation(Axis::y, angle).m;
        case NamedGate::rz:
            return rotation(Axis::z, angle).m;
        case NamedGate::phase:
            return phase_gate(angle).m;
    }
    throw std::invalid_argument("bad gate");
}

}  // namespace detail

// Executes a parsed script. Deterministic for a fixed seed: every
// measurement draws from its own (seed, call index) stream. Runtime
// protocol violations are rethrown as diagnostics naming the source line.
inline RunResult run(const Script& script, std::uint64_t seed, bool final_dump = false) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.seed = seed;
    result.chain_size = script.chain_size;

    ChainState chain = new_chain(ChainConfig(script.chain_size));
    result.t_pi_value = t_pi(chain.config);
    SeedSequence rng(seed);

    for (const auto& sl : script.lines) {
        try {
            if (std::holds_alternative<ChainDirective>(sl.directive)) {
                continue;  // chain was constructed up front
            } else if (const auto* p = std::get_if<PrepDirective>(&sl.directive)) {
                prepare_qubit(chain, QubitId::data(p->data_index), p->amp0, p->amp1);
            } else if (const auto* s = std::get_if<SqDirective>(&sl.directive)) {
                const SquareMatrix m = detail::named_gate_matrix(s->gate, s->angle);
                std::vector<QubitId> targets;
                if (s->target == SqDirective::Target::qubit) {
                    targets.push_back(s->qubit);
                } else if (s->target == SqDirective::Target::all_data) {
                    for (int i = 1; i <= chain.config.num_data; ++i) {
                        targets.push_back(QubitId::data(i));
                    }
                } else {
                    for (int i = 1; i <= chain.config.num_switches(); ++i) {
                        targets.push_back(QubitId::sw(i));
                    }
                }
                for (const auto& q : targets) {
                    const std::size_t pos[1] = {chain.position(q)};
                    chain.reg.apply_gate(m, pos);
                }
            } else if (const auto* w = std::get_if<SwitchDirective>(&sl.directive)) {
                switch (w->mode) {
                    case SwitchDirective::Mode::on:
                        set_switch(chain, w->index, true);
                        break;
                    case SwitchDirective::Mode::off:
                        set_switch(chain, w->index, false);
                        break;
                    case SwitchDirective::Mode::zero:
                        prepare_switch(chain, w->index, SwitchPrep::zero);
                        break;
                    case SwitchDirective::Mode::one:
                        prepare_switch(chain, w->index, SwitchPrep::one);
                        break;
                    case SwitchDirective::Mode::plus:
                        prepare_switch(chain, w->index, SwitchPrep::plus);
                        break;
                }
            } else if (const auto* sw = std::get_if<SweepDirective>(&sl.directive)) {
                fluxon_sweep(chain, sw->dir);
            } else if (const auto* cv = std::get_if<CvDirective>(&sl.directive)) {
                // The compiled round trip sets its own switch biases; restore
                // the ambient configuration afterwards so cv acts like a
                // self-contained gate.
                const std::vector<bool> saved = chain.config.switch_enabled;
                const PassProgram prog = compile_controlled_v(
                    chain.config.num_data, cv->control, cv->target, cv->angles);
                execute(chain, prog);
                chain.config.switch_enabled = saved;
            } else if (const auto* m = std::get_if<MeasureDirective>(&sl.directive)) {
                RngStream stream = rng.stream();
                const MeasureResult r = measure_qubit(chain, m->qubit, m->basis, stream);
                result.measurements.push_back({sl.line, m->qubit.name(), m->basis, r.outcome, r.prob});
            } else if (std::holds_alternative<DumpDirective>(sl.directive)) {
                result.dumps.push_back({sl.line, chain.reg.amps()});
            }
        } catch (const ScriptError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ScriptError(sl.line, ex.what());
        }
    }
    if (final_dump) {
        result.dumps.push_back({0, chain.reg.amps()});
    }
    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
}

// Serialization. Wall time is only included on request: the default output
// is byte-identical across runs with the same (script, seed).
inline nlohmann::json to_json(const RunResult& r, bool include_timing = false) {
    nlohmann::json j;
    j["format"] = 1;
    j["seed"] = r.seed;
    j["chain"] = r.chain_size;
    j["t_pi"] = r.t_pi_value;
    j["measurements"] = nlohmann::json::array();
    for (const auto& m : r.measurements) {
        j["measurements"].push_back({{"line", m.line},
                                     {"qubit", m.qubit},
                                     {"basis", m.basis == Basis::z ? "z" : "x"},
                                     {"outcome", m.outcome_str()},
                                     {"prob", m.prob}});
    }
    j["dumps"] = nlohmann::json::array();
    for (const auto& d : r.dumps) {
        nlohmann::json amps = nlohmann::json::array();
        for (const auto& a : d.amplitudes) {
            amps.push_back({a.real(), a.imag()});
        }
        j["dumps"].push_back({{"line", d.line}, {"amplitudes", amps}});
    }
    if (include_timing) j["wall_ms"] = r.wall_ms;
    return j;
}

inline nlohmann::json to_json(const qec::QecReport& r, const qec::LogicalBlock& block) {
    nlohmann::json j;
    j["format"] = 1;
    j["trial_seed"] = r.trial_seed;
    j["amp0"] = {r.amp0.real(), r.amp0.imag()};
    j["amp1"] = {r.amp1.real(), r.amp1.imag()};
    nlohmann::json injected = nlohmann::json::array();
    for (int off : r.injected) injected.push_back("d" + std::to_string(block.index + off));
    j["injected"] = injected;
    j["syndrome"] = r.syndrome.str();
    j["decoded"] = qec::error_case_name(r.decoded, block);
    nlohmann::json rec = nlohmann::json::array();
    for (const auto& op : r.recovery) rec.push_back(op.str(block));
    j["recovery"] = rec;
    j["fidelity"] = r.fidelity_after;
    j["failed"] = r.failed;
    return j;
}

struct SweepRow {
    double p = 0.0;
    qec::ErrorRateEstimate estimate;
    double analytic = 0.0;
};

struct SweepTable {
    std::uint64_t seed = 0;
    long trials = 0;
    std::vector<SweepRow> rows;
};

// Monte Carlo failure-rate table over a list of flip probabilities. Each
// probability gets its own seed lane; trials within it derive their
// streams from (lane seed, trial index).
inline SweepTable qec_sweep(const std::vector<double>& p_values, long trials,
                            std::uint64_t seed) {
    SweepTable table;
    table.seed = seed;
    table.trials = trials;
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        SweepRow row;
        row.p = p_values[i];
        row.estimate = qec::logical_error_rate(p_values[i], trials, mix64(seed, i));
        row.analytic = qec::exact_failure_law(p_values[i]);
        table.rows.push_back(row);
    }
    return table;
}

inline std::string to_csv(const SweepTable& table) {
    std::string out = "p,estimate,ci_low,ci_high,analytic\n";
    for (const auto& row : table.rows) {
        out += detail::format_number(row.p) + "," + detail::format_number(row.estimate.estimate) +
               "," + detail::format_number(row.estimate.ci_low) + "," +
               detail::format_number(row.estimate.ci_high) + "," +
               detail::format_number(row.analytic) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const SweepTable& table) {
    nlohmann::json j;
    j["format"] = 1;
    j["seed"] = table.seed;
    j["trials"] = table.trials;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        j["rows"].push_back({{"p", row.p},
                             {"estimate", row.estimate.estimate},
                             {"ci_low", row.estimate.ci_low},
                             {"ci_high", row.estimate.ci_high},
                             {"failures", row.estimate.failures},
                             {"analytic", row.analytic}});
    }
    return j;
}

}  // namespace fluxknit
