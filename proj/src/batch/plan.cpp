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

#include "qbatch/batch/plan.hpp"

#include "qbatch/batch/resolve.hpp"
#include "qbatch/bytecode/table.hpp"
#include "qbatch/error.hpp"
#include "qbatch/hash.hpp"
#include "qbatch/lang/transform.hpp"

namespace qbatch::batch {

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Unbatched:
            return "unbatched";
        case Mode::IndexBatched:
            return "index";
        case Mode::OverrideBatched:
            return "override";
        case Mode::Combined:
            return "combined";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "unbatched") {
        return Mode::Unbatched;
    }
    if (text == "index") {
        return Mode::IndexBatched;
    }
    if (text == "override") {
        return Mode::OverrideBatched;
    }
    if (text == "combined" || text == "batched") {
        return Mode::Combined;
    }
    throw Error(ErrorKind::ValidationError, "unknown batching mode '" + std::string(text) + "'");
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t subcircuit, std::size_t row) {
    return mix_seed(mix_seed(mix_seed(seed) ^ subcircuit) ^ row);
}

BatchPlan plan(const lang::Program &program, const OverrideSet &ov, Mode mode, const pulse::GateLibrary &library,
               PlanOptions options) {
    return plan(program, lang::compile_subcircuits(program), ov, mode, library, options);
}

BatchPlan plan(const lang::Program &program, std::vector<lang::Subcircuit> subcircuits, const OverrideSet &ov,
               Mode mode, const pulse::GateLibrary &library, PlanOptions options) {
    const std::size_t rows = validate(ov, program);
    const std::size_t S = subcircuits.size();
    if (S == 0) {
        throw Error(ErrorKind::ValidationError, "program has no subcircuits to run");
    }
    if (options.shots < 0) {
        throw Error(ErrorKind::ValidationError, "shots must be non-negative");
    }
    if (mode == Mode::OverrideBatched && program.lets.empty()) {
        throw Error(ErrorKind::ModeUnsupported, "override batching needs at least one let");
    }
    const bool coupled = mode == Mode::IndexBatched && rows > 1;
    if (coupled && rows != S) {
        throw Error(ErrorKind::ModeUnsupported, "index batching needs one override row per subcircuit (" +
                                                    std::to_string(S) + " subcircuits, " + std::to_string(rows) +
                                                    " rows)");
    }

    BatchPlan out;
    out.mode = mode;
    out.library = library;
    out.rows = rows;
    out.shots = options.shots;
    out.seed = options.seed;

    const lang::ValueMap defaults = lang::let_defaults(program);
    auto make_run = [&](std::size_t sc, std::size_t row) {
        Run r;
        r.subcircuit = sc;
        r.row = row;
        r.values = defaults;
        for (auto &[name, v] : ov.row(row)) {
            r.values[name] = v;
        }
        r.seed = run_seed(options.seed, sc, row);
        out.runs.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < S; ++i) {
        if (mode == Mode::IndexBatched) {
            make_run(i, coupled ? i : 0);
        } else {
            for (std::size_t row = 0; row < rows; ++row) {
                make_run(i, row);
            }
        }
    }

    // Dry compile: standalone tables for per-subcircuit accounting, one
    // shared table for the index-batched modes.
    std::vector<std::size_t> unit_words(S), standalone_words(S), slot_words(S);
    bytecode::GateDataTable shared;
    for (std::size_t i = 0; i < S; ++i) {
        bytecode::GateDataTable alone;
        auto unit = bytecode::compile_subcircuit(subcircuits[i], alone, library);
        unit_words[i] = unit.total_words();
        standalone_words[i] = alone.size_words();
        slot_words[i] = slot_value_words(unit);
        if (out.shared_table()) {
            bytecode::compile_subcircuit(subcircuits[i], shared, library);
        }
    }

    StepCount &acc = out.accounting;
    if (mode == Mode::Unbatched) {
        for (std::size_t r = 0; r < out.runs.size(); ++r) {
            out.steps.push_back({r});
            std::size_t i = out.runs[r].subcircuit;
            acc.upload_words += static_cast<std::int64_t>(standalone_words[i] + unit_words[i] + slot_words[i]);
        }
        acc.communication_steps = static_cast<std::int64_t>(out.runs.size());
        acc.compilations = static_cast<std::int64_t>(out.runs.size());
    } else {
        std::vector<std::size_t> all(out.runs.size());
        for (std::size_t r = 0; r < all.size(); ++r) {
            all[r] = r;
            acc.upload_words += static_cast<std::int64_t>(slot_words[out.runs[r].subcircuit]);
        }
        out.steps.push_back(std::move(all));
        acc.communication_steps = 1;
        acc.compilations = static_cast<std::int64_t>(S);
        for (std::size_t i = 0; i < S; ++i) {
            acc.upload_words += static_cast<std::int64_t>(unit_words[i]);
            if (!out.shared_table()) {
                acc.upload_words += static_cast<std::int64_t>(standalone_words[i]);
            }
        }
        if (out.shared_table()) {
            acc.upload_words += static_cast<std::int64_t>(shared.size_words());
        }
    }
    out.subcircuits = std::move(subcircuits);
    return out;
}

}  // namespace qbatch::batch
