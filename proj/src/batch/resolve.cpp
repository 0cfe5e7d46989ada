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

#include "qbatch/batch/resolve.hpp"

#include "qbatch/error.hpp"
#include "qbatch/pulse/lowering.hpp"

namespace qbatch::batch {

ResolvedUnit resolve(const bytecode::BytecodeUnit &unit, const EntryList &entries, const lang::ValueMap &values) {
    for (const auto &s : unit.slots) {
        if (values.find(s.let) == values.end()) {
            throw Error(ErrorKind::MissingSlotValue, "no value for slot let '" + s.let + "'");
        }
    }
    ResolvedUnit out;
    out.subcircuit_index = unit.subcircuit_index;
    bool open = false;
    for (std::uint64_t word : unit.sequence) {
        const auto &entry = entries.at(bytecode::entry_of(word));
        if (!bytecode::joins_previous(word)) {
            open = false;
        }
        std::optional<pulse::PulseProgram> p;
        if (entry->pulse.symbolic()) {
            p = pulse::resolve_pulse(entry->pulse, values);
        } else {
            p = entry->pulse;
        }
        if (!p) {
            ++out.elided;
            continue;
        }
        if (!open) {
            out.moments.emplace_back();
            open = true;
        }
        out.moments.back().push_back(std::move(*p));
    }
    return out;
}

ResolvedUnit resolve(const bytecode::BytecodeUnit &unit, const bytecode::GateDataTable &table,
                     const lang::ValueMap &values) {
    EntryList entries;
    entries.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        entries.push_back(table.share(i));
    }
    return resolve(unit, entries, values);
}

std::size_t slot_value_words(const bytecode::BytecodeUnit &unit) {
    return unit.lets().size();
}

}  // namespace qbatch::batch
