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

#include "qbatch/bytecode/serialize.hpp"

#include <bit>
#include <cstdio>

#include "qbatch/error.hpp"

namespace qbatch::bytecode {
namespace {

void put_word(std::vector<std::uint8_t> &out, std::uint64_t w) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
    }
}

void put_words(std::vector<std::uint8_t> &out, const std::vector<std::uint64_t> &ws) {
    for (auto w : ws) {
        put_word(out, w);
    }
}

void put_symbols(std::vector<std::uint8_t> &out, const SymbolTable &symbols) {
    for (const auto &s : symbols.names()) {
        put_word(out, s.size());
        std::size_t padded = (s.size() + kWordBytes - 1) / kWordBytes * kWordBytes;
        for (std::size_t i = 0; i < padded; ++i) {
            out.push_back(i < s.size() ? static_cast<std::uint8_t>(s[i]) : 0);
        }
    }
}

std::uint64_t bits(double d) {
    return std::bit_cast<std::uint64_t>(d);
}

double real(std::uint64_t w) {
    return std::bit_cast<double>(w);
}

class Reader {
   public:
    explicit Reader(const std::vector<std::uint8_t> &bytes) : bytes_(bytes) {
    }

    std::uint64_t word() {
        need(8);
        std::uint64_t w = 0;
        for (int i = 0; i < 8; ++i) {
            w |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        }
        pos_ += 8;
        return w;
    }

    std::string text(std::uint64_t n) {
        std::uint64_t padded = (n + kWordBytes - 1) / kWordBytes * kWordBytes;
        need(padded);
        std::string s(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                      bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += padded;
        return s;
    }

    bool done() const {
        return pos_ == bytes_.size();
    }

   private:
    void need(std::uint64_t n) const {
        if (n > bytes_.size() - pos_) {
            throw Error(ErrorKind::ValidationError, "truncated bytecode");
        }
    }

    const std::vector<std::uint8_t> &bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t SymbolTable::intern(std::string_view name) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return static_cast<std::uint32_t>(i);
        }
    }
    names_.emplace_back(name);
    return static_cast<std::uint32_t>(names_.size() - 1);
}

const std::string &SymbolTable::at(std::uint64_t index) const {
    if (index >= names_.size()) {
        throw Error(ErrorKind::ValidationError, "symbol index out of range");
    }
    return names_[index];
}

std::vector<std::uint64_t> encode_entry(const pulse::PulseProgram &p, SymbolTable &symbols) {
    std::vector<std::uint64_t> out;
    out.reserve(entry_words(p));
    out.push_back(static_cast<std::uint64_t>(p.kind) | (static_cast<std::uint64_t>(p.tones.size()) << 8) |
                  (static_cast<std::uint64_t>(p.slots.size()) << 16) |
                  (static_cast<std::uint64_t>(symbols.intern(p.gate)) << 32));
    for (const auto &t : p.tones) {
        out.push_back(t.channel.global ? kGlobalChannel : static_cast<std::uint64_t>(t.channel.qubit));
        out.push_back(symbols.intern(t.frequency));
        out.push_back(bits(t.phase));
        out.push_back(bits(t.amplitude));
        out.push_back(bits(t.duration_us));
    }
    for (const auto &s : p.slots) {
        out.push_back(symbols.intern(s.let));
        out.push_back(s.tone | (static_cast<std::uint64_t>(s.field) << 32));
        out.push_back(bits(s.coefficient));
    }
    return out;
}

std::uint64_t unit_header(const BytecodeUnit &unit) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(unit.subcircuit_index)) << 32) |
           static_cast<std::uint32_t>(unit.sequence.size());
}

std::vector<std::uint64_t> encode_unit(const BytecodeUnit &unit) {
    std::vector<std::uint64_t> out;
    out.reserve(unit.total_words());
    out.push_back(unit_header(unit));
    out.insert(out.end(), unit.sequence.begin(), unit.sequence.end());
    return out;
}

namespace {

std::vector<std::uint64_t> encode_entries(const GateDataTable &table, SymbolTable &symbols) {
    std::vector<std::uint64_t> words;
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto e = encode_entry(table[i].pulse, symbols);
        words.insert(words.end(), e.begin(), e.end());
    }
    return words;
}

}  // namespace

std::vector<std::uint8_t> serialize_table(const GateDataTable &table) {
    SymbolTable symbols;
    auto words = encode_entries(table, symbols);
    std::vector<std::uint8_t> out;
    put_symbols(out, symbols);
    put_words(out, words);
    return out;
}

std::vector<std::uint8_t> serialize_batch(const GateDataTable &table, const std::vector<BytecodeUnit> &units) {
    SymbolTable symbols;
    auto words = encode_entries(table, symbols);
    std::vector<std::uint8_t> out;
    put_word(out, kMagic);
    put_word(out, kFormatVersion);
    put_word(out, symbols.names().size());
    put_word(out, table.size());
    put_word(out, units.size());
    put_symbols(out, symbols);
    put_words(out, words);
    for (const auto &u : units) {
        put_words(out, encode_unit(u));
    }
    return out;
}

DecodedBatch deserialize_batch(const std::vector<std::uint8_t> &bytes) {
    Reader r(bytes);
    if (r.word() != kMagic) {
        throw Error(ErrorKind::ValidationError, "bad bytecode magic");
    }
    if (r.word() != kFormatVersion) {
        throw Error(ErrorKind::ValidationError, "unsupported bytecode version");
    }
    std::uint64_t n_symbols = r.word();
    std::uint64_t n_entries = r.word();
    std::uint64_t n_units = r.word();
    SymbolTable symbols;
    for (std::uint64_t i = 0; i < n_symbols; ++i) {
        symbols.intern(r.text(r.word()));
    }
    if (symbols.names().size() != n_symbols) {
        throw Error(ErrorKind::ValidationError, "duplicate symbol");
    }

    DecodedBatch out;
    std::vector<std::shared_ptr<const TableEntry>> entries;
    for (std::uint64_t i = 0; i < n_entries; ++i) {
        std::uint64_t h = r.word();
        pulse::PulseProgram p;
        auto kind = static_cast<std::uint8_t>(h & 0xff);
        if (kind < 1 || kind > 3) {
            throw Error(ErrorKind::ValidationError, "bad gate kind in entry header");
        }
        p.kind = static_cast<pulse::GateKind>(kind);
        std::uint64_t n_tones = (h >> 8) & 0xff;
        std::uint64_t n_slots = (h >> 16) & 0xffff;
        p.gate = symbols.at(h >> 32);
        for (std::uint64_t t = 0; t < n_tones; ++t) {
            pulse::Tone tone;
            std::uint64_t ch = r.word();
            tone.channel = ch == kGlobalChannel ? pulse::Channel::global_beam()
                                                : pulse::Channel::individual(static_cast<int>(ch));
            tone.frequency = symbols.at(r.word());
            tone.phase = real(r.word());
            tone.amplitude = real(r.word());
            tone.duration_us = real(r.word());
            p.tones.push_back(std::move(tone));
        }
        for (std::uint64_t s = 0; s < n_slots; ++s) {
            pulse::ParameterSlot slot;
            slot.let = symbols.at(r.word());
            std::uint64_t w = r.word();
            slot.tone = static_cast<std::uint32_t>(w & 0xffffffffULL);
            auto field = static_cast<std::uint8_t>(w >> 32);
            if (field < 1 || field > 5 || slot.tone >= n_tones) {
                throw Error(ErrorKind::ValidationError, "bad parameter slot");
            }
            slot.field = static_cast<pulse::SlotField>(field);
            slot.coefficient = real(r.word());
            p.slots.push_back(std::move(slot));
        }
        auto e = std::make_shared<TableEntry>();
        e->pulse = p;
        entries.push_back(std::move(e));
        out.entries.push_back(std::move(p));
    }
    for (std::uint64_t i = 0; i < n_units; ++i) {
        std::uint64_t h = r.word();
        BytecodeUnit u;
        u.subcircuit_index = static_cast<int>(static_cast<std::uint32_t>(h >> 32));
        std::uint64_t len = h & 0xffffffffULL;
        for (std::uint64_t k = 0; k < len; ++k) {
            std::uint64_t w = r.word();
            if (entry_of(w) >= n_entries) {
                throw Error(ErrorKind::ValidationError, "sequence word references missing entry");
            }
            u.sequence.push_back(w);
        }
        u.slots = derive_slots(u.sequence, entries);
        out.units.push_back(std::move(u));
    }
    if (!r.done()) {
        throw Error(ErrorKind::ValidationError, "trailing bytes after bytecode");
    }
    return out;
}

std::string hexdump(const std::vector<std::uint8_t> &bytes) {
    std::string out;
    char buf[16];
    for (std::size_t off = 0; off < bytes.size(); off += 16) {
        std::snprintf(buf, sizeof buf, "%08zx ", off);
        out += buf;
        for (std::size_t i = 0; i < 16; ++i) {
            if (off + i < bytes.size()) {
                std::snprintf(buf, sizeof buf, " %02x", bytes[off + i]);
                out += buf;
            } else {
                out += "   ";
            }
        }
        out += "  |";
        for (std::size_t i = 0; i < 16 && off + i < bytes.size(); ++i) {
            auto c = bytes[off + i];
            out += (c >= 0x20 && c < 0x7f) ? static_cast<char>(c) : '.';
        }
        out += "|\n";
    }
    return out;
}

}  // namespace qbatch::bytecode
