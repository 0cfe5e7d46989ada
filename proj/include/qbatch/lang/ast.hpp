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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbatch/error.hpp"

namespace qbatch::lang {

/// Integer or floating point let value. Always finite.
class LetValue {
   public:
    LetValue() = default;
    static LetValue integer(std::int64_t v) {
        LetValue out;
        out.value_ = v;
        return out;
    }
    static LetValue floating(double v);

    bool is_integer() const {
        return std::holds_alternative<std::int64_t>(value_);
    }
    std::int64_t as_integer() const {
        return std::get<std::int64_t>(value_);
    }
    double as_double() const;

    friend bool operator==(const LetValue &, const LetValue &) = default;

   private:
    std::variant<std::int64_t, double> value_ = 0.0;
};

struct QubitRef {
    std::string reg;
    std::int64_t index = 0;
    friend bool operator==(const QubitRef &, const QubitRef &) = default;
};

struct LetRef {
    std::string name;
    friend bool operator==(const LetRef &, const LetRef &) = default;
};

/// Reference to a macro parameter; only valid inside a macro body.
struct ParamRef {
    std::string name;
    friend bool operator==(const ParamRef &, const ParamRef &) = default;
};

using Arg = std::variant<QubitRef, double, LetRef, ParamRef>;

/// Native gate call (or, before expansion, a macro call; see MacroCall).
struct GateCall {
    std::string name;
    std::vector<Arg> args;
    SourcePos pos;
    friend bool operator==(const GateCall &, const GateCall &) = default;
};

struct MacroCall {
    std::string name;
    std::vector<Arg> args;
    SourcePos pos;
    friend bool operator==(const MacroCall &, const MacroCall &) = default;
};

/// Gates executed simultaneously on pairwise disjoint qubits.
struct ParallelBlock {
    std::vector<GateCall> gates;
    SourcePos pos;
    friend bool operator==(const ParallelBlock &, const ParallelBlock &) = default;
};

using LoopCount = std::variant<std::int64_t, LetRef>;

struct Statement;

struct Loop {
    LoopCount count;
    std::vector<Statement> body;
    SourcePos pos;
    friend bool operator==(const Loop &, const Loop &) = default;
};

struct Statement {
    std::variant<GateCall, ParallelBlock, Loop, MacroCall> node;
    friend bool operator==(const Statement &, const Statement &) = default;
};

struct Register {
    std::string name;
    std::int64_t size = 0;
    SourcePos pos;
    friend bool operator==(const Register &, const Register &) = default;
};

struct LetDecl {
    std::string name;
    LetValue value;
    SourcePos pos;
    friend bool operator==(const LetDecl &, const LetDecl &) = default;
};

struct Macro {
    std::string name;
    std::vector<std::string> params;
    std::vector<Statement> body;
    SourcePos pos;
    friend bool operator==(const Macro &, const Macro &) = default;
};

struct Program {
    std::vector<Register> registers;
    std::vector<LetDecl> lets;  // declaration order
    std::vector<Macro> macros;
    std::vector<Statement> body;

    const LetDecl *find_let(std::string_view name) const;
    const Macro *find_macro(std::string_view name) const;
    const Register *find_register(std::string_view name) const;

    int num_qubits() const;
    /// Flat qubit index: registers are laid out in declaration order.
    std::optional<int> flat_index(const QubitRef &ref) const;

    /// Lets whose value decides program structure (loop counts).
    std::vector<std::string> structural_lets() const;

    friend bool operator==(const Program &, const Program &) = default;
};

inline constexpr std::string_view kPrepareAll = "prepare_all";
inline constexpr std::string_view kMeasureAll = "measure_all";

enum class ArgKind { Qubit, Angle };

struct GateSignature {
    std::vector<ArgKind> args;
};

/// Native gate arity table; supplied by the gate library at validation time.
using SignatureTable = std::map<std::string, GateSignature, std::less<>>;

/// A gate parameter after qubit resolution: a literal or a symbolic let.
using Param = std::variant<double, LetRef>;

struct ResolvedGate {
    std::string name;
    std::vector<int> qubits;  // flat indices
    std::vector<Param> params;
    SourcePos pos;
    friend bool operator==(const ResolvedGate &, const ResolvedGate &) = default;
};

/// One time step: a single gate, or a parallel block's gates.
struct Moment {
    std::vector<ResolvedGate> gates;
    friend bool operator==(const Moment &, const Moment &) = default;
};

struct Subcircuit {
    int index = 0;
    int num_qubits = 0;
    std::vector<Moment> moments;

    std::size_t gate_count() const;
    friend bool operator==(const Subcircuit &, const Subcircuit &) = default;
};

using ValueMap = std::map<std::string, LetValue, std::less<>>;

}  // namespace qbatch::lang
