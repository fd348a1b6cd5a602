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

#include "fluxknit/compiler.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace fluxknit;

namespace {

constexpr double kPi = 3.14159265358979323846;

EulerAngles random_angles(RngStream& rng) {
    return {rng.uniform() * 6 - 3, rng.uniform() * 6 - 3, rng.uniform() * 3,
            rng.uniform() * 6 - 3};
}

}  // namespace

TEST(Zyz, Identity) {
    const EulerAngles e = zyz_decompose(SquareMatrix::identity(2));
    EXPECT_DOUBLE_EQ(e.delta, 0.0);
    EXPECT_DOUBLE_EQ(e.alpha, 0.0);
    EXPECT_DOUBLE_EQ(e.theta, 0.0);
    EXPECT_DOUBLE_EQ(e.beta, 0.0);
}

TEST(Zyz, HadamardAngles) {
    const EulerAngles e = zyz_decompose(hadamard().m);
    EXPECT_NEAR(e.delta, kPi / 2, 1e-12);
    EXPECT_NEAR(e.alpha, 0.0, 1e-12);
    EXPECT_NEAR(e.theta, kPi / 2, 1e-12);
    EXPECT_NEAR(e.beta, kPi, 1e-12);
    EXPECT_LT((angles_to_matrix(e) - hadamard().m).frobenius_norm(), 1e-12);
}

TEST(Zyz, PoleCanonicalization) {
    // theta = pi pole: beta collapses to 0 and the reconstruction is exact.
    const EulerAngles ex = zyz_decompose(pauli(Axis::x).m);
    EXPECT_DOUBLE_EQ(ex.beta, 0.0);
    EXPECT_NEAR(ex.theta, kPi, 1e-12);
    EXPECT_LT((angles_to_matrix(ex) - pauli(Axis::x).m).frobenius_norm(), 1e-10);

    // theta = 0 pole.
    const EulerAngles ez = zyz_decompose(rotation(Axis::z, 1.3).m);
    EXPECT_DOUBLE_EQ(ez.beta, 0.0);
    EXPECT_NEAR(ez.theta, 0.0, 1e-12);
    EXPECT_LT((angles_to_matrix(ez) - rotation(Axis::z, 1.3).m).frobenius_norm(), 1e-10);
}

TEST(Zyz, ReconstructionProperty) {
    RngStream rng(61, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SquareMatrix v = testsupport::random_unitary(2, rng);
        const EulerAngles e = zyz_decompose(v);
        EXPECT_GE(e.theta, 0.0);
        EXPECT_LE(e.theta, kPi + 1e-12);
        worst = std::max(worst, (angles_to_matrix(e) - v).frobenius_norm());
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(Zyz, RejectsNonUnitary) {
    EXPECT_THROW(zyz_decompose(SquareMatrix(2, {1, 0, 0, 2})), std::invalid_argument);
    EXPECT_THROW(zyz_decompose(SquareMatrix::identity(4)), std::invalid_argument);
}

TEST(Abc, TelescopesToIdentity) {
    RngStream rng(62, 0);
    for (int i = 0; i < 1000; ++i) {
        const AbcFactors f = abc_factors(random_angles(rng));
        ASSERT_LT((f.a * f.b * f.c - SquareMatrix::identity(2)).frobenius_norm(), 1e-12);
    }
}

TEST(Abc, ConjugationRebuildsV) {
    RngStream rng(63, 0);
    const SquareMatrix x = pauli(Axis::x).m;
    for (int i = 0; i < 1000; ++i) {
        const EulerAngles e = random_angles(rng);
        const AbcFactors f = abc_factors(e);
        const SquareMatrix got = (f.a * x * f.b * x * f.c) * std::polar(1.0, e.delta);
        ASSERT_LT((got - angles_to_matrix(e)).frobenius_norm(), 1e-9);
    }
}

TEST(Abc, ZeroAnglesGiveIdentityFactors) {
    const AbcFactors f = abc_factors(EulerAngles{});
    EXPECT_LT((f.a - SquareMatrix::identity(2)).frobenius_norm(), 1e-15);
    EXPECT_LT((f.b - SquareMatrix::identity(2)).frobenius_norm(), 1e-15);
    EXPECT_LT((f.c - SquareMatrix::identity(2)).frobenius_norm(), 1e-15);
}

TEST(CnsDressing, SatisfiesTheIdentity) {
    const CnsDressing& d = cns_dressing();
    const SquareMatrix got =
        tensor(d.post_first, d.post_second) * u0().m * tensor(d.pre_first, d.pre_second);
    EXPECT_TRUE(equal_up_to_global_phase(got, cns().m, 1e-12));

    // Basis action |c,t> -> |t^c, c> up to phase.
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t t = 0; t < 2; ++t) {
            std::vector<Complex> v(4);
            v[(c << 1) | t] = 1.0;
            const auto out = got.apply(v);
            const std::size_t want = ((t ^ c) << 1) | c;
            EXPECT_NEAR(std::abs(out[want]), 1.0, 1e-12);
        }
    }
}

TEST(Fanout, TwoQubitsIsOneCns) {
    const SquareMatrix sem = program_semantics(compile_fanout(2), 2);
    EXPECT_TRUE(equal_up_to_global_phase(sem, testsupport::dense_cns_cascade(2), 1e-9));
}

TEST(Fanout, GhzFanOut) {
    // alpha|0..0> + beta|1..1> from d1 = alpha|0> + beta|1>.
    const Complex alpha(0.6, 0.0), beta(0.0, 0.8);
    ChainState chain = new_chain(ChainConfig(3));
    prepare_qubit(chain, QubitId::data(1), alpha, beta);
    execute(chain, compile_fanout(3));
    std::vector<Complex> want(128);
    want[0] = alpha;
    want[1 | (1 << 2) | (1 << 4)] = beta;
    EXPECT_GT(testsupport::vec_fidelity(chain.reg.amps(), want), 1.0 - 1e-10);
}

TEST(Fanout, FixesAllZeros) {
    ChainState chain = new_chain(ChainConfig(3));
    execute(chain, compile_fanout(3));
    EXPECT_NEAR(std::abs(chain.reg.amp(0)), 1.0, 1e-10);
}

TEST(Fanout, EqualsCascadeUpToSix) {
    for (int n = 2; n <= 6; ++n) {
        const PassProgram prog = compile_fanout(n);
        const SquareMatrix sem = program_semantics(prog, n);
        ASSERT_TRUE(equal_up_to_global_phase(sem, testsupport::dense_cns_cascade(n), 1e-8))
            << "N=" << n;
        // Logical d1 rides to the end; everyone else shifts down one.
        EXPECT_EQ(prog.final_wires.position_of(1), n);
        for (int q = 2; q <= n; ++q) EXPECT_EQ(prog.final_wires.position_of(q), q - 1);
    }
    EXPECT_THROW(compile_fanout(1), std::invalid_argument);
}

TEST(ControlledV, AdjacentCnot) {
    const PassProgram prog = compile_controlled_v(2, 1, 2, pauli(Axis::x).m);
    const SquareMatrix sem = program_semantics(prog, 2);
    EXPECT_TRUE(
        equal_up_to_global_phase(sem, testsupport::dense_controlled_v(2, 1, 2, pauli(Axis::x).m), 1e-8));
}

TEST(ControlledV, IdentityVCompilesToIdentity) {
    const PassProgram prog = compile_controlled_v(3, 1, 3, SquareMatrix::identity(2));
    EXPECT_TRUE(equal_up_to_global_phase(program_semantics(prog, 3),
                                         SquareMatrix::identity(8), 1e-9));
}

TEST(ControlledV, DistantPairRandomV) {
    RngStream rng(64, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const SquareMatrix v = testsupport::random_unitary(2, rng);
        const PassProgram prog = compile_controlled_v(3, 1, 3, v);
        ASSERT_TRUE(equal_up_to_global_phase(program_semantics(prog, 3),
                                             testsupport::dense_controlled_v(3, 1, 3, v), 1e-8));
    }
}

TEST(ControlledV, AllPairsUpToFour) {
    RngStream rng(65, 0);
    for (int n = 2; n <= 4; ++n) {
        for (int c = 1; c <= n; ++c) {
            for (int t = 1; t <= n; ++t) {
                if (c == t) continue;
                for (int rep = 0; rep < 5; ++rep) {
                    const SquareMatrix v = testsupport::random_unitary(2, rng);
                    const PassProgram prog = compile_controlled_v(n, c, t, v);
                    ASSERT_TRUE(equal_up_to_global_phase(
                        program_semantics(prog, n), testsupport::dense_controlled_v(n, c, t, v),
                        1e-8))
                        << "n=" << n << " c=" << c << " t=" << t;
                    ASSERT_TRUE(prog.final_wires.is_identity());
                }
            }
        }
    }
}

TEST(ControlledV, RejectsBadGeometry) {
    EXPECT_THROW(compile_controlled_v(3, 1, 1, pauli(Axis::x).m), std::invalid_argument);
    EXPECT_THROW(compile_controlled_v(3, 0, 2, pauli(Axis::x).m), std::invalid_argument);
    EXPECT_THROW(compile_controlled_v(3, 1, 4, pauli(Axis::x).m), std::invalid_argument);
    EXPECT_THROW(compile_controlled_v(3, 1, 2, SquareMatrix(2, {1, 0, 0, 2})),
                 std::invalid_argument);
}

TEST(AssignControl, PrependsSwitchDisables) {
    const PassProgram base = fanout_segment(2, 3, 3);
    const PassProgram assigned = assign_control(base, 2, 3);
    ASSERT_TRUE(std::holds_alternative<SetSwitchInstr>(assigned.instructions[0]));
    const auto& sw = std::get<SetSwitchInstr>(assigned.instructions[0]);
    EXPECT_EQ(sw.index, 1);
    EXPECT_FALSE(sw.enabled);

    // k=1: nothing disabled.
    const PassProgram same = assign_control(base, 1, 3);
    EXPECT_EQ(same.instructions.size(), base.instructions.size());

    EXPECT_THROW(assign_control(base, 0, 3), std::out_of_range);
    EXPECT_THROW(assign_control(base, 4, 3), std::out_of_range);
}

TEST(AssignControl, StartingQubitLeavesLeftMarginalAlone) {
    // Sweep-only program, started at d2: d1's marginal never moves.
    PassProgram sweeps;
    sweeps.final_wires = WirePermutation(3);
    sweeps.instructions.push_back(SweepInstr{SweepDirection::ltr});
    sweeps.instructions.push_back(SweepInstr{SweepDirection::rtl});
    const PassProgram assigned = assign_control(sweeps, 2, 3);

    RngStream rng(66, 0);
    ChainState chain = new_chain(ChainConfig(3));
    for (int d = 1; d <= 3; ++d) {
        chain.reg.apply_gate(testsupport::random_unitary(2, rng),
                             {chain.position(QubitId::data(d))});
    }
    const auto before = chain.reg.reduced_density(0);
    execute(chain, assigned);
    const auto after = chain.reg.reduced_density(0);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(after[i] - before[i]), 0.0, 1e-10);
    }
}

TEST(AssignControl, LastQubitDisablesEverything) {
    PassProgram layer_only;
    layer_only.final_wires = WirePermutation(3);
    SingleLayer l;
    l.gates.emplace_back(QubitId::data(3), pauli(Axis::x).m);
    layer_only.instructions.push_back(l);
    layer_only.instructions.push_back(SweepInstr{SweepDirection::ltr});
    const PassProgram assigned = assign_control(layer_only, 3, 3);

    ChainState chain = new_chain(ChainConfig(3));
    execute(chain, assigned);
    // Only the X on d3 acted: register index for d3 = bit 4.
    EXPECT_NEAR(std::abs(chain.reg.amp(std::size_t{1} << 4)), 1.0, 1e-10);
}

TEST(ProgramSemantics, EmptyProgramIsIdentity) {
    PassProgram empty;
    empty.final_wires = WirePermutation(2);
    EXPECT_LT((program_semantics(empty, 2) - SquareMatrix::identity(4)).frobenius_norm(), 1e-12);
}

TEST(ProgramSemantics, BareSweepIsTheBlockGate) {
    PassProgram sweep;
    sweep.final_wires = WirePermutation(2);
    sweep.instructions.push_back(SweepInstr{SweepDirection::ltr});
    const SquareMatrix sem = program_semantics(sweep, 2);
    EXPECT_LT((sem - testsupport::embed_gate(u0().m, {0, 1}, 2)).frobenius_norm(), 1e-10);
}

TEST(ProgramSemantics, RejectsMeasurements) {
    PassProgram prog;
    prog.final_wires = WirePermutation(2);
    prog.instructions.push_back(MeasureSwitchInstr{1});
    EXPECT_THROW(program_semantics(prog, 2), std::invalid_argument);
}

TEST(ProgramSemantics, DetectsSwitchLeak) {
    PassProgram prog;
    prog.final_wires = WirePermutation(2);
    prog.instructions.push_back(PrepareSwitchInstr{1, SwitchPrep::plus});
    prog.instructions.push_back(SweepInstr{SweepDirection::ltr});
    EXPECT_THROW(program_semantics(prog, 2), std::runtime_error);
}
