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
#include <string_view>
#include <vector>

#include "qbatch/batch/overrides.hpp"
#include "qbatch/lang/ast.hpp"
#include "qbatch/pulse/gate_library.hpp"

namespace qbatch::batch {

enum class Mode : std::uint8_t { Unbatched, IndexBatched, OverrideBatched, Combined };

std::string_view to_string(Mode mode);
/// Accepts unbatched, index, override, combined, and "batched" for combined.
Mode parse_mode(std::string_view text);

struct StepCount {
    std::int64_t communication_steps = 0;
    std::int64_t compilations = 0;
    std::int64_t upload_words = 0;

    StepCount &operator+=(const StepCount &o) {
        communication_steps += o.communication_steps;
        compilations += o.compilations;
        upload_words += o.upload_words;
        return *this;
    }
    friend bool operator==(const StepCount &, const StepCount &) = default;
};

/// One subcircuit executed for `shots` repetitions with one value map.
struct Run {
    std::size_t subcircuit = 0;  // position in BatchPlan::subcircuits
    std::size_t row = 0;         // override row
    lang::ValueMap values;       // let defaults with the row applied
    std::uint64_t seed = 0;
    friend bool operator==(const Run &, const Run &) = default;
};

struct PlanOptions {
    int shots = 1000;
    std::uint64_t seed = 0;
};

/// Immutable execution recipe: which runs happen, grouped into
/// communication steps, plus the predicted cost accounting.
struct BatchPlan {
    Mode mode = Mode::Combined;
    std::vector<lang::Subcircuit> subcircuits;
    pulse::GateLibrary library;
    std::size_t rows = 1;
    std::vector<Run> runs;
    std::vector<std::vector<std::size_t>> steps;  // run indices per step
    StepCount accounting;
    int shots = 1000;
    std::uint64_t seed = 0;

    /// True when each table is shared by all subcircuits of the batch.
    bool shared_table() const {
        return mode == Mode::IndexBatched || mode == Mode::Combined;
    }
};

/// Seed of the run at (subcircuit, row) for a job seed; independent of mode.
std::uint64_t run_seed(std::uint64_t seed, std::size_t subcircuit, std::size_t row);

/// Builds the plan and its accounting by dry-compiling the program.
/// Throws everything validate() does, plus ModeUnsupported.
BatchPlan plan(const lang::Program &program, const OverrideSet &ov, Mode mode, const pulse::GateLibrary &library,
               PlanOptions options = {});

/// Same for an already segmented workload; `program` supplies lets.
BatchPlan plan(const lang::Program &program, std::vector<lang::Subcircuit> subcircuits, const OverrideSet &ov,
               Mode mode, const pulse::GateLibrary &library, PlanOptions options = {});

}  // namespace qbatch::batch
