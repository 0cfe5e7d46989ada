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

#include "qbatch/bytecode/stream.hpp"

#include <algorithm>

#include "qbatch/error.hpp"

namespace qbatch::bytecode {

std::size_t StreamItem::new_entry_words() const {
    std::size_t n = 0;
    for (const auto &e : new_entries) {
        n += e->size_words;
    }
    return n;
}

CompilationStream::CompilationStream(SubcircuitSource source, pulse::GateLibrary library, std::size_t capacity,
                                     TableScope scope)
    : source_(std::move(source)), compiler_(std::move(library)), capacity_(capacity), scope_(scope) {
    if (capacity_ == 0) {
        throw Error(ErrorKind::ValidationError, "stream capacity must be positive");
    }
    worker_ = std::thread([this] { produce(); });
}

CompilationStream::CompilationStream(std::vector<lang::Subcircuit> subcircuits, pulse::GateLibrary library,
                                     std::size_t capacity, TableScope scope)
    : CompilationStream(
          [items = std::move(subcircuits), i = std::size_t{0}]() mutable -> std::optional<lang::Subcircuit> {
              if (i >= items.size()) {
                  return std::nullopt;
              }
              return std::move(items[i++]);
          },
          std::move(library), capacity, scope) {
}

CompilationStream::~CompilationStream() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    cv_.notify_all();
    join();
}

void CompilationStream::join() {
    if (worker_.joinable()) {
        worker_.join();
    }
}

void CompilationStream::produce() {
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            cv_.wait(lock, [this] { return stop_ || draining_ || queue_.size() < capacity_; });
            if (stop_) {
                break;
            }
        }
        Slot slot;
        bool last = false;
        try {
            std::optional<lang::Subcircuit> sc = source_();
            if (!sc) {
                break;
            }
            if (scope_ == TableScope::PerUnit) {
                table_ = GateDataTable{};
            }
            auto before = static_cast<std::uint32_t>(table_.size());
            StreamItem item;
            item.unit = compiler_.compile(*sc, table_);
            item.first_new_entry = before;
            for (std::size_t i = before; i < table_.size(); ++i) {
                item.new_entries.push_back(table_.share(i));
            }
            slot.item = std::move(item);
        } catch (...) {
            slot.error = std::current_exception();
            last = true;
        }
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(slot));
            ++compiled_;
            max_buffered_ = std::max(max_buffered_, queue_.size());
        }
        cv_.notify_all();
        if (last) {
            break;
        }
    }
    {
        std::lock_guard lock(mutex_);
        finished_ = true;
    }
    cv_.notify_all();
}

std::optional<StreamItem> CompilationStream::next() {
    Slot slot;
    {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return !queue_.empty() || finished_; });
        if (queue_.empty()) {
            return std::nullopt;
        }
        slot = std::move(queue_.front());
        queue_.pop_front();
        ++consumed_;
    }
    cv_.notify_all();
    if (slot.error) {
        std::rethrow_exception(slot.error);
    }
    return std::move(slot.item);
}

void CompilationStream::drain() {
    std::unique_lock lock(mutex_);
    draining_ = true;
    cv_.notify_all();
    cv_.wait(lock, [this] { return finished_; });
}

std::size_t CompilationStream::compiled() const {
    std::lock_guard lock(mutex_);
    return compiled_;
}

std::size_t CompilationStream::consumed() const {
    std::lock_guard lock(mutex_);
    return consumed_;
}

std::size_t CompilationStream::max_buffered() const {
    std::lock_guard lock(mutex_);
    return max_buffered_;
}

const GateDataTable &CompilationStream::table() {
    drain();
    join();
    return table_;
}

}  // namespace qbatch::bytecode
