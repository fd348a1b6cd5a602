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

#include <sstream>
#include <string>
#include <vector>

#include "fluxknit/qec.hpp"

namespace fluxknit {

// The gate constants under test. Checks take this struct instead of
// calling the constructors directly so a corrupted table can be fed in to
// prove the suite actually fails.
struct GateSet {
    SquareMatrix u0_m, u1_m, jp_m, swap_m, cns_m, block_m;

    static GateSet standard() {
        return {u0().m, u1().m, jp().m, swap2().m, cns().m, block_unitary().m};
    }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::string tables;  // rendered syndrome-table comparison

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

namespace detail {

inline std::string fmt_norm(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace detail

// Identity and protocol checks behind the `verify` subcommand. Exercises
// the gate algebra, the compiler constructions and the syndrome protocol;
// any failure names the broken identity.
inline VerifyReport verify_suite(const GateSet& g = GateSet::standard()) {
    VerifyReport report;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        report.checks.push_back({name, pass, detail});
    };

    {
        const double d = (g.u0_m - (g.jp_m * g.swap_m) * Complex(-1.0)).frobenius_norm();
        add("jps-factorization", d == 0.0, "u0 vs -(jp*swap), diff " + detail::fmt_norm(d));
    }
    {
        const SquareMatrix want(4, {0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0});
        const double d = ((g.u0_m + g.u1_m) * 0.5 - want).frobenius_norm();
        add("conditional-sum", d == 0.0,
            "(u0+u1)/2 vs -|01><10|-|10><01|, diff " + detail::fmt_norm(d));
    }
    {
        const SquareMatrix want(4, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1});
        const double d = ((g.u0_m - g.u1_m) * 0.5 - want).frobenius_norm();
        add("conditional-difference", d == 0.0,
            "(u0-u1)/2 vs |00><00|-|11><11|, diff " + detail::fmt_norm(d) +
                "; the |11><11| term carries a minus sign here (a plus sign is "
                "sometimes quoted), repaired during recovery");
    }
    {
        bool pass = false;
        std::string detail_str;
        try {
            const CnsDressing& d = cns_dressing();
            const SquareMatrix got =
                tensor(d.post_first, d.post_second) * g.u0_m * tensor(d.pre_first, d.pre_second);
            pass = equal_up_to_global_phase(got, g.cns_m, 1e-12);
            detail_str = "dressed u0 equals CNS up to phase";
        } catch (const std::exception& ex) {
            detail_str = ex.what();
        }
        add("cns-dressing", pass, detail_str);
    }
    {
        RngStream rng(11, 0);
        double worst_abc = 0.0, worst_v = 0.0;
        for (int i = 0; i < 200; ++i) {
            const EulerAngles e{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3, rng.uniform() * 3,
                                rng.uniform() * 6 - 3};
            const AbcFactors f = abc_factors(e);
            worst_abc = std::max(worst_abc,
                                 (f.a * f.b * f.c - SquareMatrix::identity(2)).frobenius_norm());
            const SquareMatrix x = pauli(Axis::x).m;
            const SquareMatrix got =
                (f.a * x * f.b * x * f.c) * std::polar(1.0, e.delta);
            worst_v = std::max(worst_v, (got - angles_to_matrix(e)).frobenius_norm());
        }
        add("abc-identity", worst_abc < 1e-12 && worst_v < 1e-9,
            "worst |ABC-I| " + detail::fmt_norm(worst_abc) + ", worst |e^{id}AXBXC-V| " +
                detail::fmt_norm(worst_v));
    }
    {
        RngStream rng(12, 0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const EulerAngles e{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3, rng.uniform() * 3,
                                rng.uniform() * 6 - 3};
            const SquareMatrix v = angles_to_matrix(e);
            const EulerAngles back = zyz_decompose(v);
            worst = std::max(worst, (angles_to_matrix(back) - v).frobenius_norm());
        }
        add("zyz-reconstruction", worst < 1e-10, "worst reconstruction " + detail::fmt_norm(worst));
    }
    {
        bool pass = true;
        std::string detail_str = "fan-out equals the CNS cascade, N=2..4";
        try {
            for (int n = 2; n <= 4; ++n) {
                SquareMatrix cascade = SquareMatrix::identity(std::size_t{1} << n);
                for (int i = 1; i <= n - 1; ++i) {
                    SquareMatrix step(std::size_t{1} << n);
                    const std::size_t dim = std::size_t{1} << n;
                    for (std::size_t col = 0; col < dim; ++col) {
                        const int c = (col >> (i - 1)) & 1;
                        const int t = (col >> i) & 1;
                        std::size_t row = col;
                        row &= ~((std::size_t{1} << (i - 1)) | (std::size_t{1} << i));
                        row |= static_cast<std::size_t>(t ^ c) << (i - 1);
                        row |= static_cast<std::size_t>(c) << i;
                        step(row, col) = 1.0;
                    }
                    cascade = step * cascade;
                }
                if (!equal_up_to_global_phase(program_semantics(compile_fanout(n), n), cascade,
                                              1e-9)) {
                    pass = false;
                    detail_str = "cascade mismatch at N=" + std::to_string(n);
                    break;
                }
            }
        } catch (const std::exception& ex) {
            pass = false;
            detail_str = ex.what();
        }
        add("fanout-cascade", pass, detail_str);
    }
    {
        bool pass = true;
        std::string detail_str = "round trips match dense controlled-V, N=3";
        try {
            RngStream rng(13, 0);
            for (int c = 1; c <= 3 && pass; ++c) {
                for (int t = 1; t <= 3 && pass; ++t) {
                    if (c == t) continue;
                    const EulerAngles e{rng.uniform() * 6 - 3, rng.uniform() * 6 - 3,
                                        rng.uniform() * 3, rng.uniform() * 6 - 3};
                    const SquareMatrix v = angles_to_matrix(e);
                    const SquareMatrix got =
                        program_semantics(compile_controlled_v(3, c, t, v), 3);
                    SquareMatrix want(8);
                    for (std::size_t col = 0; col < 8; ++col) {
                        if (!((col >> (c - 1)) & 1)) {
                            want(col, col) = 1.0;
                            continue;
                        }
                        const int tb = (col >> (t - 1)) & 1;
                        for (int tv = 0; tv < 2; ++tv) {
                            const std::size_t row =
                                (col & ~(std::size_t{1} << (t - 1))) |
                                (static_cast<std::size_t>(tv) << (t - 1));
                            want(row, col) += v(tv, tb);
                        }
                    }
                    if (!equal_up_to_global_phase(got, want, 1e-8)) {
                        pass = false;
                        detail_str = "mismatch at control d" + std::to_string(c) + ", target d" +
                                     std::to_string(t);
                    }
                }
            }
        } catch (const std::exception& ex) {
            pass = false;
            detail_str = ex.what();
        }
        add("controlled-v-roundtrip", pass, detail_str);
    }
    {
        bool pass = true;
        std::string detail_str;
        try {
            const auto& t = qec::decoding_table();
            pass = t.derived[3] == qec::ErrorCase::none && t.row_matches_reference(3);
            detail_str = pass ? "table derived; no-error row (-,-) matches the reference"
                              : "no-error row disagrees with the reference table";
        } catch (const std::exception& ex) {
            pass = false;
            detail_str = ex.what();
        }
        add("syndrome-table", pass, detail_str);
    }
    {
        bool pass = true;
        std::string detail_str = "single-flip cycles restore fidelity 1";
        try {
            RngStream rng(14, 0);
            const ChainConfig config(3);
            const qec::LogicalBlock block{1};
            for (int cse = 0; cse < 4 && pass; ++cse) {
                for (int rep = 0; rep < 5 && pass; ++rep) {
                    const double th = rng.uniform() * 3.14159;
                    const double ph = rng.uniform() * 6.28318;
                    const Complex a0 = std::cos(th / 2);
                    const Complex a1 = std::polar(std::sin(th / 2), ph);
                    ChainState chain = qec::encode(config, block, a0, a1);
                    const ChainState ref = chain;
                    if (cse > 0) qec::inject(chain, block, {cse - 1});
                    SeedSequence seq(99);
                    const qec::Syndrome s = qec::extract_syndrome(chain, block, seq);
                    qec::recover(chain, s, block);
                    if (fidelity(chain.reg, ref.reg) < 1.0 - 1e-9) {
                        pass = false;
                        detail_str = "fidelity loss for flip case " + std::to_string(cse);
                    }
                }
            }
        } catch (const std::exception& ex) {
            pass = false;
            detail_str = ex.what();
        }
        add("recovery-fidelity", pass, detail_str);
    }
    {
        const bool pass = is_unitary(g.u0_m, 1e-12) && is_unitary(g.u1_m, 1e-12) &&
                          is_unitary(g.jp_m, 1e-12) && is_unitary(g.swap_m, 1e-12) &&
                          is_unitary(g.cns_m, 1e-12) && is_unitary(g.block_m, 1e-12);
        add("gate-unitarity", pass, "all named gates unitary within 1e-12");
    }

    // Side-by-side decoding tables.
    std::ostringstream tables;
    try {
        const auto& t = qec::decoding_table();
        const qec::LogicalBlock block{1};
        tables << "syndrome  derived   reference\n";
        for (int key = 0; key < 4; ++key) {
            const auto s = qec::syndrome_from_key(key);
            tables << s.str() << "     " << qec::error_case_name(t.derived[key], block)
                   << (t.derived[key] == qec::ErrorCase::none ? "     " : "       ")
                   << qec::error_case_name(t.reference[key], block)
                   << (t.row_matches_reference(key) ? "" : "   <- differs") << "\n";
        }
        tables << "note: derived for the default LTR detection pass; conditional\n"
                  "difference operator carries -|11><11| (see conditional-difference).\n";
    } catch (const std::exception& ex) {
        tables << "table derivation failed: " << ex.what() << "\n";
    }
    report.tables = tables.str();
    return report;
}

inline std::string render(const VerifyReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    out << "\n" << report.tables;
    return out.str();
}

}  // namespace fluxknit
