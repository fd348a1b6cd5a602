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

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fluxknit/chain.hpp"
#include "fluxknit/compiler.hpp"

namespace fluxknit {

// Parse or runtime diagnostic carrying the source line it refers to.
class ScriptError : public std::runtime_error {
  public:
    ScriptError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line),
          message_(message) {}

    int line() const { return line_; }
    const std::string& message() const { return message_; }

  private:
    int line_;
    std::string message_;
};

enum class NamedGate { x, y, z, h, rx, ry, rz, phase };

inline bool gate_takes_angle(NamedGate g) {
    return g == NamedGate::rx || g == NamedGate::ry || g == NamedGate::rz ||
           g == NamedGate::phase;
}

struct ChainDirective {
    int num_data = 0;
    bool operator==(const ChainDirective&) const = default;
};

struct PrepDirective {
    int data_index = 0;
    Complex amp0, amp1;
    bool operator==(const PrepDirective&) const = default;
};

struct SqDirective {
    enum class Target { qubit, all_data, all_switch };
    Target target = Target::qubit;
    QubitId qubit{QubitId::Kind::data, 1};  // valid when target == qubit
    NamedGate gate = NamedGate::x;
    double angle = 0.0;  // valid for RX/RY/RZ/PHASE
    bool operator==(const SqDirective&) const = default;
};

struct SwitchDirective {
    enum class Mode { on, off, zero, one, plus };
    int index = 0;
    Mode mode = Mode::on;
    bool operator==(const SwitchDirective&) const = default;
};

struct SweepDirective {
    SweepDirection dir = SweepDirection::ltr;
    bool operator==(const SweepDirective&) const = default;
};

struct CvDirective {
    int control = 0;
    int target = 0;
    EulerAngles angles;
    bool operator==(const CvDirective& o) const {
        return control == o.control && target == o.target && angles.delta == o.angles.delta &&
               angles.alpha == o.angles.alpha && angles.theta == o.angles.theta &&
               angles.beta == o.angles.beta;
    }
};

struct MeasureDirective {
    QubitId qubit{QubitId::Kind::data, 1};
    Basis basis = Basis::z;
    bool operator==(const MeasureDirective&) const = default;
};

struct DumpDirective {
    bool operator==(const DumpDirective&) const = default;
};

using Directive = std::variant<ChainDirective, PrepDirective, SqDirective, SwitchDirective,
                               SweepDirective, CvDirective, MeasureDirective, DumpDirective>;

struct ScriptLine {
    int line = 0;
    Directive directive;
};

struct Script {
    int chain_size = 0;
    std::vector<ScriptLine> lines;

    bool operator==(const Script& o) const {
        if (chain_size != o.chain_size || lines.size() != o.lines.size()) return false;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (!(lines[i].directive == o.lines[i].directive)) return false;
        }
        return true;
    }
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

inline double parse_number(const std::string& t, int line, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ScriptError(line, "expected " + what + ", got '" + t + "'");
    }
    if (used != t.size()) {
        throw ScriptError(line, "expected " + what + ", got '" + t + "'");
    }
    return v;
}

inline int parse_int(const std::string& t, int line, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception&) {
        throw ScriptError(line, "expected " + what + ", got '" + t + "'");
    }
    if (used != t.size()) {
        throw ScriptError(line, "expected " + what + ", got '" + t + "'");
    }
    return static_cast<int>(v);
}

// "(re,im)" with no interior whitespace.
inline Complex parse_complex(const std::string& t, int line) {
    if (t.size() < 5 || t.front() != '(' || t.back() != ')') {
        throw ScriptError(line, "expected complex pair '(re,im)', got '" + t + "'");
    }
    const std::string inner = t.substr(1, t.size() - 2);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) {
        throw ScriptError(line, "expected complex pair '(re,im)', got '" + t + "'");
    }
    const double re = parse_number(inner.substr(0, comma), line, "a real part");
    const double im = parse_number(inner.substr(comma + 1), line, "an imaginary part");
    return {re, im};
}

inline QubitId parse_qubit(const std::string& t, int line, int chain_size) {
    if (t.size() < 2 || (t[0] != 'd' && t[0] != 's')) {
        throw ScriptError(line, "expected a qubit name like d1 or s1, got '" + t + "'");
    }
    const int index = parse_int(t.substr(1), line, "a qubit index");
    if (t[0] == 'd') {
        if (index < 1 || index > chain_size) {
            throw ScriptError(line, "undeclared qubit " + t);
        }
        return QubitId::data(index);
    }
    if (index < 1 || index > chain_size - 1) {
        throw ScriptError(line, "undeclared qubit " + t);
    }
    return QubitId::sw(index);
}

inline void expect_arity(const std::vector<std::string>& tokens, std::size_t n, int line) {
    if (tokens.size() != n) {
        throw ScriptError(line, "directive '" + tokens[0] + "' expects " +
                                    std::to_string(n - 1) + " argument(s), got " +
                                    std::to_string(tokens.size() - 1));
    }
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// Parses the one-directive-per-line program text. '#' starts a comment.
// The chain declaration must come before any directive that names a qubit;
// all qubit references are validated against it here, with line numbers.
inline Script parse_program(const std::string& text) {
    Script script;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::vector<std::string> tokens = detail::tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& op = tokens[0];

        if (op == "chain") {
            detail::expect_arity(tokens, 2, line_no);
            if (script.chain_size != 0) {
                throw ScriptError(line_no, "chain is already declared");
            }
            const int n = detail::parse_int(tokens[1], line_no, "a chain size");
            if (n < 2) throw ScriptError(line_no, "chain needs at least 2 data qubits");
            if (2 * n - 1 > static_cast<int>(kMaxQubits)) {
                throw ScriptError(line_no, "chain register exceeds the " +
                                               std::to_string(kMaxQubits) + "-qubit cap");
            }
            script.chain_size = n;
            script.lines.push_back({line_no, ChainDirective{n}});
            continue;
        }
        if (script.chain_size == 0) {
            throw ScriptError(line_no, "chain must be declared before '" + op + "'");
        }

        if (op == "prep") {
            detail::expect_arity(tokens, 4, line_no);
            const QubitId q = detail::parse_qubit(tokens[1], line_no, script.chain_size);
            if (q.kind != QubitId::Kind::data) {
                throw ScriptError(line_no, "prep expects a data qubit");
            }
            PrepDirective d;
            d.data_index = q.index;
            d.amp0 = detail::parse_complex(tokens[2], line_no);
            d.amp1 = detail::parse_complex(tokens[3], line_no);
            script.lines.push_back({line_no, d});
        } else if (op == "sq") {
            if (tokens.size() < 3) {
                throw ScriptError(line_no, "sq expects a target and a gate");
            }
            SqDirective d;
            if (tokens[1] == "all-data") {
                d.target = SqDirective::Target::all_data;
            } else if (tokens[1] == "all-switch") {
                d.target = SqDirective::Target::all_switch;
            } else {
                d.target = SqDirective::Target::qubit;
                d.qubit = detail::parse_qubit(tokens[1], line_no, script.chain_size);
            }
            const std::string& g = tokens[2];
            if (g == "X") d.gate = NamedGate::x;
            else if (g == "Y") d.gate = NamedGate::y;
            else if (g == "Z") d.gate = NamedGate::z;
            else if (g == "H") d.gate = NamedGate::h;
            else if (g == "RX") d.gate = NamedGate::rx;
            else if (g == "RY") d.gate = NamedGate::ry;
            else if (g == "RZ") d.gate = NamedGate::rz;
            else if (g == "PHASE") d.gate = NamedGate::phase;
            else throw ScriptError(line_no, "unknown gate '" + g + "'");
            if (gate_takes_angle(d.gate)) {
                detail::expect_arity(tokens, 4, line_no);
                d.angle = detail::parse_number(tokens[3], line_no, "an angle");
            } else {
                detail::expect_arity(tokens, 3, line_no);
            }
            script.lines.push_back({line_no, d});
        } else if (op == "switch") {
            detail::expect_arity(tokens, 3, line_no);
            const QubitId q = detail::parse_qubit(tokens[1], line_no, script.chain_size);
            if (q.kind != QubitId::Kind::sw) {
                throw ScriptError(line_no, "switch expects a switch qubit");
            }
            SwitchDirective d;
            d.index = q.index;
            const std::string& m = tokens[2];
            if (m == "on") d.mode = SwitchDirective::Mode::on;
            else if (m == "off") d.mode = SwitchDirective::Mode::off;
            else if (m == "zero") d.mode = SwitchDirective::Mode::zero;
            else if (m == "one") d.mode = SwitchDirective::Mode::one;
            else if (m == "plus") d.mode = SwitchDirective::Mode::plus;
            else throw ScriptError(line_no, "unknown switch mode '" + m + "'");
            script.lines.push_back({line_no, d});
        } else if (op == "sweep") {
            detail::expect_arity(tokens, 2, line_no);
            SweepDirective d;
            if (tokens[1] == "ltr") d.dir = SweepDirection::ltr;
            else if (tokens[1] == "rtl") d.dir = SweepDirection::rtl;
            else throw ScriptError(line_no, "sweep direction must be ltr or rtl");
            script.lines.push_back({line_no, d});
        } else if (op == "cv") {
            detail::expect_arity(tokens, 7, line_no);
            const QubitId c = detail::parse_qubit(tokens[1], line_no, script.chain_size);
            const QubitId t = detail::parse_qubit(tokens[2], line_no, script.chain_size);
            if (c.kind != QubitId::Kind::data || t.kind != QubitId::Kind::data) {
                throw ScriptError(line_no, "cv expects two data qubits");
            }
            if (c.index == t.index) {
                throw ScriptError(line_no, "cv control equals target");
            }
            CvDirective d;
            d.control = c.index;
            d.target = t.index;
            d.angles.delta = detail::parse_number(tokens[3], line_no, "angle delta");
            d.angles.alpha = detail::parse_number(tokens[4], line_no, "angle alpha");
            d.angles.theta = detail::parse_number(tokens[5], line_no, "angle theta");
            d.angles.beta = detail::parse_number(tokens[6], line_no, "angle beta");
            script.lines.push_back({line_no, d});
        } else if (op == "measure") {
            detail::expect_arity(tokens, 3, line_no);
            MeasureDirective d;
            d.qubit = detail::parse_qubit(tokens[1], line_no, script.chain_size);
            if (tokens[2] == "z") d.basis = Basis::z;
            else if (tokens[2] == "x") d.basis = Basis::x;
            else throw ScriptError(line_no, "measurement basis must be z or x");
            script.lines.push_back({line_no, d});
        } else if (op == "dump") {
            detail::expect_arity(tokens, 1, line_no);
            script.lines.push_back({line_no, DumpDirective{}});
        } else {
            throw ScriptError(line_no, "unknown directive '" + op + "'");
        }
    }
    if (script.chain_size == 0) {
        throw ScriptError(line_no == 0 ? 1 : line_no, "program declares no chain");
    }
    return script;
}

// Canonical text form. parse(print(parse(x))) == parse(x): numbers are
// printed with enough digits to round-trip exactly.
inline std::string print_program(const Script& script) {
    std::ostringstream out;
    for (const auto& sl : script.lines) {
        if (const auto* c = std::get_if<ChainDirective>(&sl.directive)) {
            out << "chain " << c->num_data << "\n";
        } else if (const auto* p = std::get_if<PrepDirective>(&sl.directive)) {
            out << "prep d" << p->data_index << " (" << detail::format_number(p->amp0.real())
                << "," << detail::format_number(p->amp0.imag()) << ") ("
                << detail::format_number(p->amp1.real()) << ","
                << detail::format_number(p->amp1.imag()) << ")\n";
        } else if (const auto* s = std::get_if<SqDirective>(&sl.directive)) {
            out << "sq ";
            switch (s->target) {
                case SqDirective::Target::qubit:
                    out << s->qubit.name();
                    break;
                case SqDirective::Target::all_data:
                    out << "all-data";
                    break;
                case SqDirective::Target::all_switch:
                    out << "all-switch";
                    break;
            }
            static const char* names[] = {"X", "Y", "Z", "H", "RX", "RY", "RZ", "PHASE"};
            out << " " << names[static_cast<int>(s->gate)];
            if (gate_takes_angle(s->gate)) out << " " << detail::format_number(s->angle);
            out << "\n";
        } else if (const auto* w = std::get_if<SwitchDirective>(&sl.directive)) {
            static const char* modes[] = {"on", "off", "zero", "one", "plus"};
            out << "switch s" << w->index << " " << modes[static_cast<int>(w->mode)] << "\n";
        } else if (const auto* sw = std::get_if<SweepDirective>(&sl.directive)) {
            out << "sweep " << (sw->dir == SweepDirection::ltr ? "ltr" : "rtl") << "\n";
        } else if (const auto* cv = std::get_if<CvDirective>(&sl.directive)) {
            out << "cv d" << cv->control << " d" << cv->target << " "
                << detail::format_number(cv->angles.delta) << " "
                << detail::format_number(cv->angles.alpha) << " "
                << detail::format_number(cv->angles.theta) << " "
                << detail::format_number(cv->angles.beta) << "\n";
        } else if (const auto* m = std::get_if<MeasureDirective>(&sl.directive)) {
            out << "measure " << m->qubit.name() << " "
                << (m->basis == Basis::z ? "z" : "x") << "\n";
        } else {
            out << "dump\n";
        }
    }
    return out.str();
}

// Renders a compiled pass program as script directives. Layer gates that
// match a named gate are printed as such; anything else becomes its exact
// RZ/RY/RZ/PHASE word (the scalar phase of the gate is dropped, which only
// shifts the global phase of the run).
inline std::string program_to_directives(const PassProgram& program) {
    std::ostringstream out;
    const SquareMatrix eye = SquareMatrix::identity(2);
    const struct {
        const char* name;
        SquareMatrix m;
    } named[] = {
        {"X", pauli(Axis::x).m},
        {"Y", pauli(Axis::y).m},
        {"Z", pauli(Axis::z).m},
        {"H", hadamard().m},
    };
    for (const auto& ins : program.instructions) {
        if (const auto* layer = std::get_if<SingleLayer>(&ins)) {
            for (const auto& [q, m] : layer->gates) {
                if ((m - eye).frobenius_norm() < 1e-12) continue;
                bool emitted = false;
                for (const auto& n : named) {
                    if ((m - n.m).frobenius_norm() < 1e-12) {
                        out << "sq " << q.name() << " " << n.name << "\n";
                        emitted = true;
                        break;
                    }
                }
                if (emitted) continue;
                const EulerAngles e = zyz_decompose(m);
                if (e.beta != 0.0) {
                    out << "sq " << q.name() << " RZ " << detail::format_number(e.beta) << "\n";
                }
                if (e.theta != 0.0) {
                    out << "sq " << q.name() << " RY " << detail::format_number(e.theta) << "\n";
                }
                if (e.alpha != 0.0) {
                    out << "sq " << q.name() << " RZ " << detail::format_number(e.alpha) << "\n";
                }
            }
        } else if (const auto* sweep = std::get_if<SweepInstr>(&ins)) {
            out << "sweep " << (sweep->dir == SweepDirection::ltr ? "ltr" : "rtl") << "\n";
        } else if (const auto* sw = std::get_if<SetSwitchInstr>(&ins)) {
            out << "switch s" << sw->index << " " << (sw->enabled ? "on" : "off") << "\n";
        } else if (const auto* prep = std::get_if<PrepareSwitchInstr>(&ins)) {
            static const char* preps[] = {"zero", "one", "plus"};
            out << "switch s" << prep->index << " " << preps[static_cast<int>(prep->state)]
                << "\n";
        } else if (const auto* meas = std::get_if<MeasureSwitchInstr>(&ins)) {
            out << "measure s" << meas->index << " "
                << (meas->basis == Basis::z ? "z" : "x") << "\n";
        }
    }
    return out.str();
}

}  // namespace fluxknit
