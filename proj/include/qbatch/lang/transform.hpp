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

#include <vector>

#include "qbatch/lang/ast.hpp"

namespace qbatch::lang {

/// Inlines macros and unrolls loops. The result contains only GateCall and
/// ParallelBlock statements; let references stay symbolic.
Program expand(const Program &program);

/// Replaces let defaults. Integer lets keep their kind.
Program bind(const Program &program, const ValueMap &values);

/// Splits an expanded program into prepare/measure bounded subcircuits.
std::vector<Subcircuit> segment(const Program &program);

/// Convenience: segment(expand(program)).
std::vector<Subcircuit> compile_subcircuits(const Program &program);

/// Default let values of a program.
ValueMap let_defaults(const Program &program);

/// Replaces every let reference in `sc` with its value from `values`.
/// Throws MissingSlotValue when a referenced let is absent.
Subcircuit substitute(const Subcircuit &sc, const ValueMap &values);

}  // namespace qbatch::lang
