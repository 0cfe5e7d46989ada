// Copyright 2026 The qbatch Authors
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

#include <cstdio>
#include <sstream>

#include "qbatch/lang/parser.hpp"

namespace qbatch::lang {

namespace {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    // Keep float-ness visible so `let` round-trips with the same kind.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

void print_arg(std::ostream &out, const Arg &arg) {
    std::visit(
        [&](const auto &a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, QubitRef>) {
                out << a.reg << "[" << a.index << "]";
            } else if constexpr (std::is_same_v<T, double>) {
                out << number(a);
            } else {
                out << a.name;
            }
        },
        arg);
}

void print_call(std::ostream &out, const std::string &name, const std::vector<Arg> &args) {
    out << name;
    for (const auto &a : args) {
        out << " ";
        print_arg(out, a);
    }
}

void print_body(std::ostream &out, const std::vector<Statement> &body, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    for (const auto &s : body) {
        std::visit(
            [&](const auto &node) {
                using T = std::decay_t<decltype(node)>;
                out << pad;
                if constexpr (std::is_same_v<T, GateCall> || std::is_same_v<T, MacroCall>) {
                    print_call(out, node.name, node.args);
                    out << "\n";
                } else if constexpr (std::is_same_v<T, ParallelBlock>) {
                    out << "< ";
                    for (std::size_t i = 0; i < node.gates.size(); ++i) {
                        if (i) {
                            out << " | ";
                        }
                        print_call(out, node.gates[i].name, node.gates[i].args);
                    }
                    out << " >\n";
                } else {
                    out << "loop ";
                    if (const auto *n = std::get_if<std::int64_t>(&node.count)) {
                        out << *n;
                    } else {
                        out << std::get<LetRef>(node.count).name;
                    }
                    out << " {\n";
                    print_body(out, node.body, indent + 1);
                    out << pad << "}\n";
                }
            },
            s.node);
    }
}

}  // namespace

std::string to_source(const Program &program) {
    std::ostringstream out;
    for (const auto &r : program.registers) {
        out << "register " << r.name << "[" << r.size << "]\n";
    }
    for (const auto &l : program.lets) {
        out << "let " << l.name << " ";
        if (l.value.is_integer()) {
            out << l.value.as_integer();
        } else {
            out << number(l.value.as_double());
        }
        out << "\n";
    }
    for (const auto &m : program.macros) {
        out << "macro " << m.name;
        for (const auto &p : m.params) {
            out << " " << p;
        }
        out << " {\n";
        print_body(out, m.body, 1);
        out << "}\n";
    }
    print_body(out, program.body, 0);
    return out.str();
}

}  // namespace qbatch::lang
