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

#include "qbatch/lang/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qbatch::lang {

namespace {

using Env = std::map<std::string, Arg, std::less<>>;

class Expander {
   public:
    explicit Expander(const Program &program) : program_(program) {
    }

    std::vector<Statement> run() {
        std::vector<Statement> out;
        expand_body(program_.body, {}, out);
        return out;
    }

   private:
    Arg substitute(const Arg &arg, const Env &env, SourcePos pos) const {
        if (const auto *p = std::get_if<ParamRef>(&arg)) {
            auto it = env.find(p->name);
            if (it == env.end()) {
                throw Error(ErrorKind::UnknownIdentifier, "'" + p->name + "' is not a macro parameter", pos);
            }
            return it->second;
        }
        return arg;
    }

    GateCall substitute(const GateCall &g, const Env &env) const {
        GateCall out{g.name, {}, g.pos};
        out.args.reserve(g.args.size());
        for (const auto &a : g.args) {
            out.args.push_back(substitute(a, env, g.pos));
        }
        return out;
    }

    std::int64_t loop_count(const Loop &loop) const {
        if (const auto *n = std::get_if<std::int64_t>(&loop.count)) {
            return *n;
        }
        const auto &ref = std::get<LetRef>(loop.count);
        const LetDecl *let = program_.find_let(ref.name);
        if (!let) {
            throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + ref.name + "'", loop.pos);
        }
        if (!let->value.is_integer()) {
            throw Error(ErrorKind::TypeMismatch, "loop count '" + ref.name + "' must be an integer let", loop.pos);
        }
        return let->value.as_integer();
    }

    void expand_body(const std::vector<Statement> &body, const Env &env, std::vector<Statement> &out) {
        for (const auto &s : body) {
            std::visit(
                [&](const auto &node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, GateCall>) {
                        out.push_back(Statement{substitute(node, env)});
                    } else if constexpr (std::is_same_v<T, ParallelBlock>) {
                        ParallelBlock block{{}, node.pos};
                        for (const auto &g : node.gates) {
                            block.gates.push_back(substitute(g, env));
                        }
                        out.push_back(Statement{std::move(block)});
                    } else if constexpr (std::is_same_v<T, Loop>) {
                        std::int64_t n = loop_count(node);
                        for (std::int64_t i = 0; i < n; ++i) {
                            expand_body(node.body, env, out);
                        }
                    } else {
                        expand_call(node, env, out);
                    }
                },
                s.node);
        }
    }

    void expand_call(const MacroCall &call, const Env &env, std::vector<Statement> &out) {
        const Macro *m = program_.find_macro(call.name);
        if (!m) {
            throw Error(ErrorKind::UnknownMacro, "unknown macro '" + call.name + "'", call.pos);
        }
        if (m->params.size() != call.args.size()) {
            throw Error(ErrorKind::ArityMismatch,
                        "macro '" + call.name + "' takes " + std::to_string(m->params.size()) + " arguments, got " +
                            std::to_string(call.args.size()),
                        call.pos);
        }
        if (active_.count(m->name)) {
            throw Error(ErrorKind::RecursiveMacro, "macro '" + m->name + "' expands recursively", call.pos);
        }
        Env inner;
        for (std::size_t i = 0; i < m->params.size(); ++i) {
            inner.emplace(m->params[i], substitute(call.args[i], env, call.pos));
        }
        active_.insert(m->name);
        expand_body(m->body, inner, out);
        active_.erase(m->name);
    }

    const Program &program_;
    std::set<std::string, std::less<>> active_;
};

bool is_expanded(const Program &program) {
    for (const auto &s : program.body) {
        if (std::holds_alternative<Loop>(s.node) || std::holds_alternative<MacroCall>(s.node)) {
            return false;
        }
    }
    return true;
}

ResolvedGate resolve_gate(const Program &program, const GateCall &g) {
    ResolvedGate out;
    out.name = g.name;
    out.pos = g.pos;
    for (const auto &a : g.args) {
        if (const auto *q = std::get_if<QubitRef>(&a)) {
            auto idx = program.flat_index(*q);
            if (!idx) {
                throw Error(ErrorKind::QubitOutOfRange, q->reg + "[" + std::to_string(q->index) + "] is not declared",
                            g.pos);
            }
            out.qubits.push_back(*idx);
        } else if (const auto *d = std::get_if<double>(&a)) {
            out.params.emplace_back(*d);
        } else if (const auto *l = std::get_if<LetRef>(&a)) {
            out.params.emplace_back(*l);
        } else {
            throw Error(ErrorKind::UnknownIdentifier, "unbound macro parameter '" + std::get<ParamRef>(a).name + "'",
                        g.pos);
        }
    }
    return out;
}

}  // namespace

Program expand(const Program &program) {
    Program out;
    out.registers = program.registers;
    out.lets = program.lets;
    out.body = Expander(program).run();
    return out;
}

Program bind(const Program &program, const ValueMap &values) {
    Program out = program;
    for (const auto &[name, value] : values) {
        auto it = std::find_if(out.lets.begin(), out.lets.end(), [&](const LetDecl &l) { return l.name == name; });
        if (it == out.lets.end()) {
            throw Error(ErrorKind::UnknownLetName, "no let named '" + name + "'");
        }
        if (!value.is_integer() && !std::isfinite(value.as_double())) {
            throw Error(ErrorKind::TypeMismatch, "value for '" + name + "' is not finite");
        }
        if (it->value.is_integer()) {
            if (value.is_integer()) {
                it->value = value;
            } else {
                double d = value.as_double();
                if (d != std::floor(d) || std::fabs(d) > 9.0e18) {
                    throw Error(ErrorKind::TypeMismatch, "integer let '" + name + "' given non-integral value");
                }
                it->value = LetValue::integer(static_cast<std::int64_t>(d));
            }
        } else {
            it->value = LetValue::floating(value.as_double());
        }
    }
    return out;
}

std::vector<Subcircuit> segment(const Program &input) {
    if (!is_expanded(input)) {
        return segment(expand(input));
    }
    const Program &program = input;
    std::vector<Subcircuit> out;
    std::optional<Subcircuit> open;
    int n = program.num_qubits();
    for (const auto &s : program.body) {
        if (const auto *g = std::get_if<GateCall>(&s.node)) {
            if (g->name == kPrepareAll) {
                if (open) {
                    throw Error(ErrorKind::UnbalancedBoundaries, "prepare_all inside an open subcircuit", g->pos);
                }
                open = Subcircuit{static_cast<int>(out.size()), n, {}};
            } else if (g->name == kMeasureAll) {
                if (!open) {
                    throw Error(ErrorKind::UnbalancedBoundaries, "measure_all without prepare_all", g->pos);
                }
                out.push_back(std::move(*open));
                open.reset();
            } else {
                if (!open) {
                    throw Error(ErrorKind::UnbalancedBoundaries, "gate '" + g->name + "' outside a subcircuit",
                                g->pos);
                }
                open->moments.push_back(Moment{{resolve_gate(program, *g)}});
            }
        } else {
            const auto &block = std::get<ParallelBlock>(s.node);
            if (!open) {
                throw Error(ErrorKind::UnbalancedBoundaries, "parallel block outside a subcircuit", block.pos);
            }
            Moment m;
            for (const auto &g : block.gates) {
                m.gates.push_back(resolve_gate(program, g));
            }
            open->moments.push_back(std::move(m));
        }
    }
    if (open) {
        throw Error(ErrorKind::UnbalancedBoundaries, "prepare_all without a matching measure_all");
    }
    return out;
}

std::vector<Subcircuit> compile_subcircuits(const Program &program) {
    return segment(expand(program));
}

ValueMap let_defaults(const Program &program) {
    ValueMap out;
    for (const auto &l : program.lets) {
        out.emplace(l.name, l.value);
    }
    return out;
}

Subcircuit substitute(const Subcircuit &sc, const ValueMap &values) {
    Subcircuit out = sc;
    for (auto &m : out.moments) {
        for (auto &g : m.gates) {
            for (auto &p : g.params) {
                if (const auto *ref = std::get_if<LetRef>(&p)) {
                    auto it = values.find(ref->name);
                    if (it == values.end()) {
                        throw Error(ErrorKind::MissingSlotValue, "no value for let '" + ref->name + "'", g.pos);
                    }
                    p = it->second.as_double();
                }
            }
        }
    }
    return out;
}

}  // namespace qbatch::lang
