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

#include "qbatch/lang/ast.hpp"

#include <cmath>
#include <algorithm>
#include <functional>

namespace qbatch::lang {

LetValue LetValue::floating(double v) {
    LetValue out;
    out.value_ = v;
    return out;
}

double LetValue::as_double() const {
    if (const auto *i = std::get_if<std::int64_t>(&value_)) {
        return static_cast<double>(*i);
    }
    return std::get<double>(value_);
}

const LetDecl *Program::find_let(std::string_view name) const {
    for (const auto &l : lets) {
        if (l.name == name) {
            return &l;
        }
    }
    return nullptr;
}

const Macro *Program::find_macro(std::string_view name) const {
    for (const auto &m : macros) {
        if (m.name == name) {
            return &m;
        }
    }
    return nullptr;
}

const Register *Program::find_register(std::string_view name) const {
    for (const auto &r : registers) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

int Program::num_qubits() const {
    std::int64_t n = 0;
    for (const auto &r : registers) {
        n += r.size;
    }
    return static_cast<int>(n);
}

std::optional<int> Program::flat_index(const QubitRef &ref) const {
    std::int64_t offset = 0;
    for (const auto &r : registers) {
        if (r.name == ref.reg) {
            if (ref.index < 0 || ref.index >= r.size) {
                return std::nullopt;
            }
            return static_cast<int>(offset + ref.index);
        }
        offset += r.size;
    }
    return std::nullopt;
}

std::vector<std::string> Program::structural_lets() const {
    std::vector<std::string> out;
    std::function<void(const std::vector<Statement> &)> walk = [&](const std::vector<Statement> &body) {
        for (const auto &s : body) {
            if (const auto *l = std::get_if<Loop>(&s.node)) {
                if (const auto *ref = std::get_if<LetRef>(&l->count)) {
                    if (std::find(out.begin(), out.end(), ref->name) == out.end()) {
                        out.push_back(ref->name);
                    }
                }
                walk(l->body);
            }
        }
    };
    walk(body);
    for (const auto &m : macros) {
        walk(m.body);
    }
    return out;
}

std::size_t Subcircuit::gate_count() const {
    std::size_t n = 0;
    for (const auto &m : moments) {
        n += m.gates.size();
    }
    return n;
}

}  // namespace qbatch::lang
