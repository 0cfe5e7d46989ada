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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "qbatch/bytecode/table.hpp"

namespace qbatch::bytecode {

/// A compiled unit plus the table entries its compilation appended. Entries
/// are contiguous starting at `first_new_entry`.
struct StreamItem {
    BytecodeUnit unit;
    std::uint32_t first_new_entry = 0;
    std::vector<std::shared_ptr<const TableEntry>> new_entries;

    std::size_t new_entry_words() const;
};

/// Shared: one table for the whole stream. PerUnit: every unit compiles
/// against a fresh table, so each item carries all the entries it uses.
enum class TableScope { Shared, PerUnit };

/// Pull-based source of subcircuits; returns nullopt when exhausted.
using SubcircuitSource = std::function<std::optional<lang::Subcircuit>()>;

/// Background compiler with bounded lookahead. The producer never compiles
/// more than `capacity` units ahead of the consumer, and a compile error is
/// raised by the next() call that would have returned the failing unit.
class CompilationStream {
   public:
    CompilationStream(SubcircuitSource source, pulse::GateLibrary library, std::size_t capacity,
                      TableScope scope = TableScope::Shared);
    CompilationStream(std::vector<lang::Subcircuit> subcircuits, pulse::GateLibrary library, std::size_t capacity,
                      TableScope scope = TableScope::Shared);
    ~CompilationStream();

    CompilationStream(const CompilationStream &) = delete;
    CompilationStream &operator=(const CompilationStream &) = delete;

    /// Blocks until the next unit is ready; nullopt at end of stream.
    std::optional<StreamItem> next();

    /// Compiles every remaining subcircuit now, ignoring the lookahead bound.
    void drain();

    std::size_t compiled() const;
    /// Compilations performed by the producer so far.
    std::size_t compilations() const {
        return compiled();
    }
    std::size_t consumed() const;
    std::size_t capacity() const {
        return capacity_;
    }
    /// Largest number of compiled units waiting at once.
    std::size_t max_buffered() const;

    /// Waits for the producer to finish and returns the complete table (the
    /// last unit's table under PerUnit scope).
    const GateDataTable &table();

   private:
    struct Slot {
        std::optional<StreamItem> item;
        std::exception_ptr error;
    };
    void produce();
    void join();

    SubcircuitSource source_;
    Compiler compiler_;
    GateDataTable table_;
    std::size_t capacity_;
    TableScope scope_;

    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<Slot> queue_;
    std::size_t compiled_ = 0;
    std::size_t consumed_ = 0;
    std::size_t max_buffered_ = 0;
    bool draining_ = false;
    bool stop_ = false;
    bool finished_ = false;
    std::thread worker_;
};

}  // namespace qbatch::bytecode
