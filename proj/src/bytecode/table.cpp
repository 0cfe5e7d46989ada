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

#include "qbatch/bytecode/table.hpp"

#include <algorithm>
#include <set>

namespace qbatch::bytecode {

std::size_t entry_words(const pulse::PulseProgram &p) {
    return 1 + kToneWords * p.tones.size() + kSlotWords * p.slots.size();
}

GateDataTable::Interned GateDataTable::intern(pulse::PulseProgram p) {
    auto canonical = pulse::canonical_form(p);
    auto key = pulse::content_key(p);
    auto &bucket = by_hash_[key.hash];
    for (std::uint32_t i : bucket) {
        if (entries_[i]->canonical == canonical) {
            return {i, false};
        }
    }
    auto entry = std::make_shared<TableEntry>();
    entry->key = key;
    entry->size_words = entry_words(p);
    entry->pulse = std::move(p);
    entry->canonical = std::move(canonical);
    auto index = static_cast<std::uint32_t>(entries_.size());
    words_ += entry->size_words;
    entries_.push_back(std::move(entry));
    bucket.push_back(index);
    return {index, true};
}

std::vector<std::string> BytecodeUnit::lets() const {
    std::set<std::string> names;
    for (const auto &s : slots) {
        names.insert(s.let);
    }
    return {names.begin(), names.end()};
}

std::vector<UnresolvedSlot> derive_slots(const std::vector<std::uint64_t> &sequence,
                                         const std::vector<std::shared_ptr<const TableEntry>> &entries) {
    std::vector<UnresolvedSlot> out;
    for (std::uint32_t pos = 0; pos < sequence.size(); ++pos) {
        std::uint32_t e = entry_of(sequence[pos]);
        for (const auto &s : entries.at(e)->pulse.slots) {
            out.push_back(UnresolvedSlot{s.let, pos, e, s.tone, s.field});
        }
    }
    return out;
}

BytecodeUnit Compiler::compile(const lang::Subcircuit &sc, GateDataTable &table) {
    ++compilations_;
    BytecodeUnit unit;
    unit.subcircuit_index = sc.index;
    pulse::PhaseFrame frame(sc.num_qubits);
    for (const auto &moment : sc.moments) {
        bool first = true;
        for (const auto &gate : moment.gates) {
            pulse::Lowered lowered = pulse::lower(gate, std::move(frame), library_);
            frame = std::move(lowered.frame);
            if (!lowered.pulse) {
                continue;
            }
            auto interned = table.intern(std::move(*lowered.pulse));
            std::uint64_t word = interned.index;
            if (!first) {
                word |= kJoinsPrevious;
            }
            first = false;
            auto pos = static_cast<std::uint32_t>(unit.sequence.size());
            unit.sequence.push_back(word);
            for (const auto &s : table[interned.index].pulse.slots) {
                unit.slots.push_back(UnresolvedSlot{s.let, pos, interned.index, s.tone, s.field});
            }
        }
    }
    return unit;
}

BytecodeUnit compile_subcircuit(const lang::Subcircuit &sc, GateDataTable &table, const pulse::GateLibrary &library) {
    Compiler compiler(library);
    return compiler.compile(sc, table);
}

std::vector<std::vector<pulse::PulseProgram>> decode(const BytecodeUnit &unit, const GateDataTable &table) {
    std::vector<std::vector<pulse::PulseProgram>> out;
    for (std::uint64_t word : unit.sequence) {
        if (!joins_previous(word) || out.empty()) {
            out.emplace_back();
        }
        out.back().push_back(table[entry_of(word)].pulse);
    }
    return out;
}

std::vector<std::vector<pulse::PulseProgram>> lower_subcircuit(const lang::Subcircuit &sc,
                                                               const pulse::GateLibrary &library) {
    std::vector<std::vector<pulse::PulseProgram>> out;
    pulse::PhaseFrame frame(sc.num_qubits);
    for (const auto &moment : sc.moments) {
        std::vector<pulse::PulseProgram> pulses;
        for (const auto &gate : moment.gates) {
            pulse::Lowered lowered = pulse::lower(gate, std::move(frame), library);
            frame = std::move(lowered.frame);
            if (lowered.pulse) {
                pulses.push_back(std::move(*lowered.pulse));
            }
        }
        if (!pulses.empty()) {
            out.push_back(std::move(pulses));
        }
    }
    return out;
}

}  // namespace qbatch::bytecode
