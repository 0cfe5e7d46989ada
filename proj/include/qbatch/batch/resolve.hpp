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

#include <memory>
#include <vector>

#include "qbatch/bytecode/table.hpp"
#include "qbatch/lang/ast.hpp"

namespace qbatch::batch {

/// A unit with every slot replaced by a run value. Moments follow the
/// sequence's parallel grouping; pulses resolving to identities are dropped.
struct ResolvedUnit {
    int subcircuit_index = 0;
    std::vector<std::vector<pulse::PulseProgram>> moments;
    std::size_t elided = 0;
};

using EntryList = std::vector<std::shared_ptr<const bytecode::TableEntry>>;

/// Throws MissingSlotValue. Never touches the table or any compiler.
ResolvedUnit resolve(const bytecode::BytecodeUnit &unit, const EntryList &entries, const lang::ValueMap &values);
ResolvedUnit resolve(const bytecode::BytecodeUnit &unit, const bytecode::GateDataTable &table,
                     const lang::ValueMap &values);

/// Words needed to upload the values of one run: one per distinct let.
std::size_t slot_value_words(const bytecode::BytecodeUnit &unit);

}  // namespace qbatch::batch
