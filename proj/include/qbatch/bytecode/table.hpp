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
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qbatch/lang/ast.hpp"
#include "qbatch/pulse/gate_library.hpp"
#include "qbatch/pulse/lowering.hpp"

namespace qbatch::bytecode {

/// One word is 8 bytes; a tone serializes to 5 words, a parameter slot to 3,
/// and every entry carries a 1-word header.
inline constexpr std::size_t kWordBytes = 8;
inline constexpr std::size_t kToneWords = 5;
inline constexpr std::size_t kSlotWords = 3;

std::size_t entry_words(const pulse::PulseProgram &p);

struct TableEntry {
    pulse::ContentKey key;
    pulse::PulseProgram pulse;
    std::vector<std::uint64_t> canonical;
    std::size_t size_words = 0;
};

/// Deduplicated gate data shared by every unit of one batch. Entries keep
/// first-insertion order.
class GateDataTable {
   public:
    struct Interned {
        std::uint32_t index;
        bool inserted;
    };

    Interned intern(pulse::PulseProgram p);

    std::size_t size() const {
        return entries_.size();
    }
    std::size_t size_words() const {
        return words_;
    }
    const TableEntry &operator[](std::size_t i) const {
        return *entries_.at(i);
    }
    /// Shared handle to an immutable entry; stays valid while the table grows.
    std::shared_ptr<const TableEntry> share(std::size_t i) const {
        return entries_.at(i);
    }

   private:
    std::vector<std::shared_ptr<const TableEntry>> entries_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash_;
    std::size_t words_ = 0;
};

/// Sequence word: low 32 bits are the table index; bit 63 marks a pulse that
/// starts together with the previous one (same parallel block).
inline constexpr std::uint64_t kJoinsPrevious = 1ULL << 63;

inline std::uint32_t entry_of(std::uint64_t word) {
    return static_cast<std::uint32_t>(word & 0xffffffffULL);
}
inline bool joins_previous(std::uint64_t word) {
    return (word & kJoinsPrevious) != 0;
}

/// A let-dependent field inside a referenced table entry.
struct UnresolvedSlot {
    std::string let;
    std::uint32_t position = 0;  // index into BytecodeUnit::sequence
    std::uint32_t entry = 0;
    std::uint32_t tone = 0;
    pulse::SlotField field = pulse::SlotField::Phase;
    friend bool operator==(const UnresolvedSlot &, const UnresolvedSlot &) = default;
};

struct BytecodeUnit {
    int subcircuit_index = 0;
    std::vector<std::uint64_t> sequence;
    std::vector<UnresolvedSlot> slots;

    std::size_t total_words() const {
        return 1 + sequence.size();
    }
    /// Distinct let names referenced by slots, sorted.
    std::vector<std::string> lets() const;
    friend bool operator==(const BytecodeUnit &, const BytecodeUnit &) = default;
};

/// Rebuilds the slot list of `unit` from the entries it references.
std::vector<UnresolvedSlot> derive_slots(const std::vector<std::uint64_t> &sequence,
                                         const std::vector<std::shared_ptr<const TableEntry>> &entries);

/// Lowers subcircuits against a gate library and counts every compilation.
class Compiler {
   public:
    explicit Compiler(pulse::GateLibrary library) : library_(std::move(library)) {
    }

    /// Compiles one subcircuit, appending unseen pulse programs to `table`.
    BytecodeUnit compile(const lang::Subcircuit &sc, GateDataTable &table);

    std::size_t compilations() const {
        return compilations_;
    }
    const pulse::GateLibrary &library() const {
        return library_;
    }

   private:
    pulse::GateLibrary library_;
    std::size_t compilations_ = 0;
};

BytecodeUnit compile_subcircuit(const lang::Subcircuit &sc, GateDataTable &table, const pulse::GateLibrary &library);

/// Pulse programs of a unit grouped into moments (parallel blocks).
std::vector<std::vector<pulse::PulseProgram>> decode(const BytecodeUnit &unit, const GateDataTable &table);

/// Reference lowering without a table, for round-trip checks.
std::vector<std::vector<pulse::PulseProgram>> lower_subcircuit(const lang::Subcircuit &sc,
                                                               const pulse::GateLibrary &library);

}  // namespace qbatch::bytecode
