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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxknit/runner.hpp"
#include "fluxknit/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostic = 1;
constexpr int kExitInvariant = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int parse_data_qubit(const std::string& arg) {
    std::string t = arg;
    if (!t.empty() && t[0] == 'd') t = t.substr(1);
    try {
        std::size_t used = 0;
        const int v = std::stoi(t, &used);
        if (used == t.size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("expected a data qubit like d2, got '" + arg + "'");
}

fluxknit::EulerAngles parse_angles(const std::string& arg) {
    std::istringstream in(arg);
    fluxknit::EulerAngles e;
    if (!(in >> e.delta >> e.alpha >> e.theta >> e.beta)) {
        throw std::invalid_argument("expected four angles \"delta alpha theta beta\"");
    }
    std::string rest;
    if (in >> rest) {
        throw std::invalid_argument("expected exactly four angles, got extra '" + rest + "'");
    }
    return e;
}

int cmd_run(const std::string& path, std::uint64_t seed, bool dump, bool timing) {
    const fluxknit::Script script = fluxknit::parse_program(read_file(path));
    const fluxknit::RunResult result = fluxknit::run(script, seed, dump);
    std::cout << fluxknit::to_json(result, timing).dump(2) << "\n";
    if (timing) std::cerr << "wall time: " << result.wall_ms << " ms\n";
    return kExitOk;
}

int cmd_compile(const std::string& path, const std::string& control, const std::string& target,
                const std::string& unitary) {
    const fluxknit::Script script = fluxknit::parse_program(read_file(path));
    const int c = parse_data_qubit(control);
    const int t = parse_data_qubit(target);
    const fluxknit::EulerAngles angles = parse_angles(unitary);
    const fluxknit::PassProgram prog =
        fluxknit::compile_controlled_v(script.chain_size, c, t, angles);
    std::cout << fluxknit::print_program(script);
    std::cout << "# controlled operation: d" << c << " -> d" << t << "\n";
    std::cout << fluxknit::program_to_directives(prog);
    return kExitOk;
}

int cmd_qec_sweep(const std::vector<double>& ps, long trials, std::uint64_t seed,
                  const std::string& format, int reports) {
    for (double p : ps) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("flip probability must be in [0,1]");
        }
    }
    const fluxknit::SweepTable table = fluxknit::qec_sweep(ps, trials, seed);
    if (format == "csv") {
        std::cout << fluxknit::to_csv(table);
        return kExitOk;
    }
    nlohmann::json j = fluxknit::to_json(table);
    if (reports > 0 && !ps.empty()) {
        const fluxknit::qec::LogicalBlock block{1};
        nlohmann::json samples = nlohmann::json::array();
        for (int i = 0; i < reports; ++i) {
            const auto report = fluxknit::qec::run_cycle(
                fluxknit::ChainConfig(3), block, 0.6, 0.8, fluxknit::qec::ErrorModel(ps[0]),
                fluxknit::mix64(seed, 1000 + i));
            samples.push_back(fluxknit::to_json(report, block));
        }
        j["sample_reports"] = samples;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify() {
    const fluxknit::VerifyReport report = fluxknit::verify_suite();
    std::cout << fluxknit::render(report);
    return report.all_pass() ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fluxknit: simulator and compiler for a fluxon-driven qubit chain"};
    app.require_subcommand(1);

    std::string file, control, target, unitary, format = "csv";
    std::uint64_t seed = 0;
    bool dump = false, timing = false;
    std::vector<double> ps;
    long trials = 10000;
    int reports = 0;

    auto* run_cmd = app.add_subcommand("run", "run a .fknit program");
    run_cmd->add_option("file", file, "program file")->required();
    run_cmd->add_option("--seed", seed, "random seed")->envname("FLUXKNIT_SEED");
    run_cmd->add_flag("--dump", dump, "dump final amplitudes");
    run_cmd->add_flag("--timing", timing, "include wall time in the output");

    auto* compile_cmd =
        app.add_subcommand("compile", "compile a controlled unitary onto the declared chain");
    compile_cmd->add_option("file", file, "program file declaring the chain")->required();
    compile_cmd->add_option("--control", control, "control data qubit (dK)")->required();
    compile_cmd->add_option("--target", target, "target data qubit (dK)")->required();
    compile_cmd->add_option("--unitary", unitary, "four angles: \"delta alpha theta beta\"")
        ->required();

    auto* sweep_cmd = app.add_subcommand("qec-sweep", "Monte Carlo logical-error-rate table");
    sweep_cmd->add_option("--p", ps, "flip probabilities")->required()->delimiter(',');
    sweep_cmd->add_option("--trials", trials, "trials per probability")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", seed, "random seed")->envname("FLUXKNIT_SEED");
    sweep_cmd->add_option("--out", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--reports", reports, "sample per-trial reports in JSON output");

    auto* verify_cmd = app.add_subcommand("verify", "run the identity and protocol checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(file, seed, dump, timing);
        if (compile_cmd->parsed()) return cmd_compile(file, control, target, unitary);
        if (sweep_cmd->parsed()) return cmd_qec_sweep(ps, trials, seed, format, reports);
        if (verify_cmd->parsed()) return cmd_verify();
    } catch (const fluxknit::ScriptError& ex) {
        std::cerr << file << ":" << ex.line() << ": error: " << ex.message() << "\n";
        return kExitDiagnostic;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitDiagnostic;
    } catch (const std::out_of_range& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitDiagnostic;
    } catch (const std::exception& ex) {
        std::cerr << "invariant violation: " << ex.what() << "\n";
        return kExitInvariant;
    }
    return kExitDiagnostic;
}
