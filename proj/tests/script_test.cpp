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

#include "fluxknit/script.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fluxknit/runner.hpp"
#include "fluxknit/verify.hpp"
#include "test_support.hpp"

using namespace fluxknit;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FLUXKNIT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
        out.append(buf, got);
    }
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::filesystem::path> sample_files() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(FLUXKNIT_SAMPLES_DIR)) {
        if (e.path().extension() == ".fknit") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

TEST(Parse, TwoDirectiveScript) {
    const Script s = parse_program("chain 2\nsweep ltr");
    EXPECT_EQ(s.chain_size, 2);
    EXPECT_EQ(s.lines.size(), 2u);
    EXPECT_TRUE(std::holds_alternative<SweepDirective>(s.lines[1].directive));
}

TEST(Parse, UndeclaredQubitNamesTheLine) {
    try {
        parse_program("chain 2\nsq d9 H");
        FAIL() << "expected a diagnostic";
    } catch (const ScriptError& ex) {
        EXPECT_EQ(ex.line(), 2);
        EXPECT_NE(ex.message().find("undeclared qubit d9"), std::string::npos);
    }
}

TEST(Parse, Diagnostics) {
    EXPECT_THROW(parse_program("chain 2\nfrobnicate d1"), ScriptError);   // unknown directive
    EXPECT_THROW(parse_program("chain 2\nsweep"), ScriptError);           // arity
    EXPECT_THROW(parse_program("chain 2\nsweep ltr rtl"), ScriptError);   // arity
    EXPECT_THROW(parse_program("sweep ltr"), ScriptError);                // chain first
    EXPECT_THROW(parse_program("chain 2\nchain 3"), ScriptError);         // double chain
    EXPECT_THROW(parse_program("chain 1"), ScriptError);                  // too small
    EXPECT_THROW(parse_program("chain 2\nsq d1 RX"), ScriptError);        // missing angle
    EXPECT_THROW(parse_program("chain 2\nsq d1 RX x"), ScriptError);      // bad angle
    EXPECT_THROW(parse_program("chain 2\nprep d1 (1,0) 0"), ScriptError); // bad complex
    EXPECT_THROW(parse_program("chain 2\nswitch d1 on"), ScriptError);    // wrong kind
    EXPECT_THROW(parse_program("chain 2\nmeasure d1 y"), ScriptError);    // bad basis
    EXPECT_THROW(parse_program(""), ScriptError);                         // no chain
}

TEST(Parse, CommentsAndBlanksVanish) {
    const Script s = parse_program("# hello\n\nchain 2\n  \nsq d1 X # flip\n");
    EXPECT_EQ(s.lines.size(), 2u);
    EXPECT_EQ(s.lines[1].line, 5);
}

TEST(RoundTrip, PrintParseFixpointOverCorpus) {
    const auto files = sample_files();
    ASSERT_GE(files.size(), 20u);
    for (const auto& f : files) {
        const Script once = parse_program(read_file(f));
        const std::string printed = print_program(once);
        const Script twice = parse_program(printed);
        EXPECT_TRUE(once == twice) << f;
        EXPECT_EQ(printed, print_program(twice)) << f;
    }
}

TEST(Run, EmptyChainScriptDumpsNormOne) {
    const Script s = parse_program("chain 2");
    const RunResult r = run(s, 0, /*final_dump=*/true);
    EXPECT_TRUE(r.measurements.empty());
    ASSERT_EQ(r.dumps.size(), 1u);
    double norm = 0.0;
    for (const auto& a : r.dumps[0].amplitudes) norm += std::norm(a);
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_NEAR(r.t_pi_value, 2.2214, 1e-4);
}

TEST(Run, DeterministicBytesForFixedSeed) {
    const Script s = parse_program(read_file(std::filesystem::path(FLUXKNIT_SAMPLES_DIR) /
                                             "12_measure_probs.fknit"));
    const std::string a = to_json(run(s, 1234)).dump(2);
    const std::string b = to_json(run(s, 1234)).dump(2);
    EXPECT_EQ(a, b);
}

TEST(Run, EncodingScriptMatchesTheEncodeOracle) {
    const Script s = parse_program(read_file(std::filesystem::path(FLUXKNIT_SAMPLES_DIR) /
                                             "03_ghz_encode.fknit"));
    const RunResult r = run(s, 0);
    ASSERT_EQ(r.dumps.size(), 1u);
    const ChainState want = qec::encode(ChainConfig(3), qec::LogicalBlock{1}, 0.6, 0.8);
    EXPECT_GT(testsupport::vec_fidelity(r.dumps[0].amplitudes, want.reg.amps()), 1.0 - 1e-10);
}

TEST(Run, SyndromeScriptReproducesTheDerivedSyndrome) {
    const Script s = parse_program(read_file(std::filesystem::path(FLUXKNIT_SAMPLES_DIR) /
                                             "04_syndrome_flip_d1.fknit"));
    const RunResult r = run(s, 5);
    ASSERT_EQ(r.measurements.size(), 2u);
    const auto want = qec::decoding_table().by_case[1];  // flip at the first block qubit
    const auto to_outcome = [](const MeasurementRecord& m) {
        return m.outcome == 0 ? qec::SwitchOutcome::plus : qec::SwitchOutcome::minus;
    };
    EXPECT_EQ(to_outcome(r.measurements[0]), want.first);
    EXPECT_EQ(to_outcome(r.measurements[1]), want.second);
    EXPECT_NEAR(r.measurements[0].prob, 1.0, 1e-10);
    EXPECT_NEAR(r.measurements[1].prob, 1.0, 1e-10);
}

TEST(Run, BellPairOutcomesAgree) {
    const Script s = parse_program(read_file(std::filesystem::path(FLUXKNIT_SAMPLES_DIR) /
                                             "02_bell_pair.fknit"));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RunResult r = run(s, seed);
        ASSERT_EQ(r.measurements.size(), 2u);
        EXPECT_EQ(r.measurements[0].outcome, r.measurements[1].outcome);
        EXPECT_NEAR(r.measurements[0].prob, 0.5, 1e-10);
        EXPECT_NEAR(r.measurements[1].prob, 1.0, 1e-10);
    }
}

TEST(Run, RuntimeViolationNamesTheLine) {
    // prep on an entangled qubit is a protocol misuse.
    const Script s = parse_program(
        "chain 2\nsq d1 H\ncv d1 d2 1.5707963267948966 0 3.141592653589793 "
        "3.141592653589793\nprep d1 (1,0) (0,0)");
    try {
        run(s, 0);
        FAIL() << "expected a diagnostic";
    } catch (const ScriptError& ex) {
        EXPECT_EQ(ex.line(), 4);
    }
}

TEST(ProgramDirectives, CompiledProgramRunsIdentically) {
    // Emit a compiled program as text, re-parse, and compare end states.
    const PassProgram prog = compile_controlled_v(3, 1, 3, pauli(Axis::x).m);
    const std::string text = "chain 3\nsq d1 H\n" + program_to_directives(prog) + "dump\n";
    const Script script = parse_program(text);
    const RunResult r = run(script, 0);
    ASSERT_EQ(r.dumps.size(), 1u);

    ChainState want = new_chain(ChainConfig(3));
    const std::size_t d1[] = {0};
    want.reg.apply_gate(hadamard().m, d1);
    execute(want, prog);
    EXPECT_GT(testsupport::vec_fidelity(r.dumps[0].amplitudes, want.reg.amps()), 1.0 - 1e-9);
}

TEST(Verify, FreshBuildPasses) {
    const VerifyReport report = verify_suite();
    for (const auto& c : report.checks) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
    }
    EXPECT_NE(report.tables.find("derived"), std::string::npos);
}

TEST(Verify, CorruptGateConstantFailsWithName) {
    GateSet corrupted = GateSet::standard();
    corrupted.u0_m(0, 0) = -1.0;
    const VerifyReport report = verify_suite(corrupted);
    EXPECT_FALSE(report.all_pass());
    bool named = false;
    for (const auto& c : report.checks) {
        if (c.name == "jps-factorization") {
            EXPECT_FALSE(c.pass);
            named = true;
        }
    }
    EXPECT_TRUE(named);
}

TEST(Cli, RunProducesDeterministicJson) {
    const std::string file =
        (std::filesystem::path(FLUXKNIT_SAMPLES_DIR) / "02_bell_pair.fknit").string();
    const CliResult a = run_cli("run " + file + " --seed 7");
    const CliResult b = run_cli("run " + file + " --seed 7");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\"format\": 1"), std::string::npos);
}

TEST(Cli, ParseErrorExitsOne) {
    const auto tmp = std::filesystem::temp_directory_path() / "fluxknit_bad.fknit";
    std::ofstream(tmp) << "chain 2\nsq d9 H\n";
    const CliResult r = run_cli("run " + tmp.string());
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.out.find(":2: error: undeclared qubit d9"), std::string::npos);
    std::filesystem::remove(tmp);
}

TEST(Cli, MissingFileExitsOne) {
    const CliResult r = run_cli("run /nonexistent/nope.fknit");
    EXPECT_EQ(r.exit_code, 1);
}

TEST(Cli, VerifyPasses) {
    const CliResult r = run_cli("verify");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("[PASS] jps-factorization"), std::string::npos);
    EXPECT_NE(r.out.find("syndrome"), std::string::npos);
    EXPECT_NE(r.out.find("reference"), std::string::npos);
}

TEST(Cli, QecSweepCsv) {
    const CliResult r =
        run_cli("qec-sweep --p 0,1 --trials 200 --seed 3 --out csv");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("p,estimate,ci_low,ci_high,analytic"), std::string::npos);
    EXPECT_NE(r.out.find("0,0,"), std::string::npos);  // p=0 row: estimate 0
    const CliResult again =
        run_cli("qec-sweep --p 0,1 --trials 200 --seed 3 --out csv");
    EXPECT_EQ(r.out, again.out);
}

TEST(Cli, QecSweepJsonWithReports) {
    const CliResult r =
        run_cli("qec-sweep --p 0.1 --trials 100 --seed 3 --out json --reports 2");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("\"sample_reports\""), std::string::npos);
    EXPECT_NE(r.out.find("\"syndrome\""), std::string::npos);
}

TEST(Cli, CompileEmitsARunnableProgram) {
    const auto tmp = std::filesystem::temp_directory_path() / "fluxknit_chain.fknit";
    std::ofstream(tmp) << "chain 3\n";
    const CliResult r =
        run_cli("compile " + tmp.string() + " --control d1 --target d3 --unitary \"0 0 3.141592653589793 0\"");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NO_THROW(parse_program(r.out));
    EXPECT_NE(r.out.find("sweep ltr"), std::string::npos);
    EXPECT_NE(r.out.find("sweep rtl"), std::string::npos);
    std::filesystem::remove(tmp);
}

TEST(Cli, EnvSeedFallback) {
    const std::string file =
        (std::filesystem::path(FLUXKNIT_SAMPLES_DIR) / "12_measure_probs.fknit").string();
    const CliResult a = run_cli("run " + file + " --seed 11");
    setenv("FLUXKNIT_SEED", "11", 1);
    const CliResult b = run_cli("run " + file);
    unsetenv("FLUXKNIT_SEED");
    EXPECT_EQ(a.out, b.out);
}
