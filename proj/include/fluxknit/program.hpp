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

#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fluxknit/chain.hpp"

namespace fluxknit {

// Where each logical data qubit physically lives. Swap-bearing gates move
// qubit contents along the chain; the compiler keeps the bookkeeping here.
class WirePermutation {
  public:
    explicit WirePermutation(int num_data = 0) : pos_(num_data) {
        std::iota(pos_.begin(), pos_.end(), 1);
    }

    int num_data() const { return static_cast<int>(pos_.size()); }

    // Physical position (1-based) currently holding logical qubit `q`.
    int position_of(int q) const { return pos_.at(q - 1); }

    // Logical qubit currently held at physical position `p`.
    int logical_at(int p) const {
        for (int q = 1; q <= num_data(); ++q) {
            if (pos_[q - 1] == p) return q;
        }
        throw std::out_of_range("position not in permutation");
    }

    void swap_positions(int p1, int p2) {
        const int q1 = logical_at(p1);
        const int q2 = logical_at(p2);
        pos_[q1 - 1] = p2;
        pos_[q2 - 1] = p1;
    }

    bool is_identity() const {
        for (int q = 1; q <= num_data(); ++q) {
            if (pos_[q - 1] != q) return false;
        }
        return true;
    }

  private:
    std::vector<int> pos_;
};

struct SingleLayer {
    std::vector<std::pair<QubitId, SquareMatrix>> gates;
};

struct SweepInstr {
    SweepDirection dir;
};

struct SetSwitchInstr {
    int index;
    bool enabled;
};

struct PrepareSwitchInstr {
    int index;
    SwitchPrep state;
};

struct MeasureSwitchInstr {
    int index;
    Basis basis = Basis::x;
};

using Instruction =
    std::variant<SingleLayer, SweepInstr, SetSwitchInstr, PrepareSwitchInstr, MeasureSwitchInstr>;

struct SwitchMeasurement {
    int index;
    MeasureResult result;
};

// Ordered instruction list for one or more fluxon passes, plus the net wire
// permutation the compiled passes leave behind.
struct PassProgram {
    std::vector<Instruction> instructions;
    WirePermutation final_wires;

    bool has_measurement() const {
        for (const auto& ins : instructions) {
            if (std::holds_alternative<MeasureSwitchInstr>(ins)) return true;
        }
        return false;
    }
};

inline void execute(ChainState& chain, const PassProgram& program, SeedSequence* rng = nullptr,
                    std::vector<SwitchMeasurement>* measurements = nullptr) {
    for (const auto& ins : program.instructions) {
        if (const auto* layer = std::get_if<SingleLayer>(&ins)) {
            apply_single_layer(chain, layer->gates);
        } else if (const auto* sweep = std::get_if<SweepInstr>(&ins)) {
            fluxon_sweep(chain, sweep->dir);
        } else if (const auto* sw = std::get_if<SetSwitchInstr>(&ins)) {
            set_switch(chain, sw->index, sw->enabled);
        } else if (const auto* prep = std::get_if<PrepareSwitchInstr>(&ins)) {
            prepare_switch(chain, prep->index, prep->state);
        } else if (const auto* meas = std::get_if<MeasureSwitchInstr>(&ins)) {
            if (rng == nullptr) {
                throw std::invalid_argument("program contains a measurement but no rng was given");
            }
            RngStream stream = rng->stream();
            const MeasureResult r = measure_switch(chain, meas->index, meas->basis, stream);
            if (measurements != nullptr) measurements->push_back({meas->index, r});
        }
    }
}

}  // namespace fluxknit
