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
#include <string>
#include <string_view>
#include <vector>

#include "qbatch/bytecode/table.hpp"

namespace qbatch::bytecode {

/// Binary layout (all words little-endian, 8 bytes):
///
///     magic "QBATCHBC"  version  n_symbols  n_entries  n_units
///     symbols:  byte-length, then bytes zero-padded to whole words
///     entries:  header, 5 words per tone, 3 words per slot
///     units:    header (index:32 | length:32), then sequence words
///
/// Entry header: kind:8 | tones:8 | slots:16 | gate-name symbol:32 (high).
/// Tone: channel (all ones = global, else qubit), frequency symbol, phase,
/// amplitude, duration (IEEE-754 bits). Slot: let symbol, tone:32 |
/// field:8 << 32, coefficient bits.
inline constexpr std::uint64_t kMagic = 0x4342484354414251ULL;  // "QBATCHBC"
inline constexpr std::uint64_t kFormatVersion = 1;
inline constexpr std::uint64_t kGlobalChannel = ~0ULL;

/// Interned strings referenced by entries (gate names, frequency labels,
/// let names), in first-use order.
class SymbolTable {
   public:
    std::uint32_t intern(std::string_view name);
    const std::string &at(std::uint64_t index) const;
    const std::vector<std::string> &names() const {
        return names_;
    }

   private:
    std::vector<std::string> names_;
};

std::vector<std::uint64_t> encode_entry(const pulse::PulseProgram &p, SymbolTable &symbols);
std::uint64_t unit_header(const BytecodeUnit &unit);
std::vector<std::uint64_t> encode_unit(const BytecodeUnit &unit);

/// Table section only: symbols followed by entries.
std::vector<std::uint8_t> serialize_table(const GateDataTable &table);
std::vector<std::uint8_t> serialize_batch(const GateDataTable &table, const std::vector<BytecodeUnit> &units);

struct DecodedBatch {
    std::vector<pulse::PulseProgram> entries;
    std::vector<BytecodeUnit> units;
};

/// Inverse of serialize_batch. Throws ValidationError on malformed input.
DecodedBatch deserialize_batch(const std::vector<std::uint8_t> &bytes);

/// Classic 16-bytes-per-line hexdump with offsets and an ASCII column.
std::string hexdump(const std::vector<std::uint8_t> &bytes);

}  // namespace qbatch::bytecode
