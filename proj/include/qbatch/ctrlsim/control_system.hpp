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
#include <optional>
#include <utility>
#include <vector>

#include "qbatch/batch/plan.hpp"
#include "qbatch/ctrlsim/drift.hpp"

namespace qbatch::ctrlsim {

enum class ClockMode { Simulated, Wall };

struct HardwareConfig {
    std::size_t buffer_capacity_words = 4096;
    double comm_latency_s = 2.0;
    double compile_time_s = 0.05;        // per compiled unit
    double upload_rate_words_per_s = 1e6;  // infinity makes uploads free
    bool include_pulse_time = true;      // charge pulse durations x shots
    std::size_t stream_capacity = 4;
    ClockMode clock = ClockMode::Simulated;

    /// Throws ValidationError on non-positive sizes or negative costs.
    void validate() const;
};

/// Simulated seconds by cause; total() is the elapsed time of an execution.
struct CostBreakdown {
    double communication_s = 0.0;
    double compilation_s = 0.0;
    double upload_s = 0.0;
    double execution_s = 0.0;
    double recalibration_s = 0.0;

    double total() const {
        return communication_s + compilation_s + upload_s + execution_s + recalibration_s;
    }
};

struct RunOutcome {
    std::size_t subcircuit = 0;
    int subcircuit_index = 0;
    std::size_t row = 0;
    std::uint64_t seed = 0;
    int num_qubits = 0;
    std::vector<double> frequencies;    // sums to 1
    std::vector<std::uint64_t> counts;  // empty in exact mode
    double start_s = 0.0;
    double detuning_hz = 0.0;
    double ms_error = 0.0;  // epsilon applied to every MS gate of the run
    std::size_t ms_gates = 0;
    std::size_t elided = 0;
};

struct ExecutionReport {
    batch::Mode mode = batch::Mode::Combined;
    int shots = 0;
    std::uint64_t seed = 0;
    std::vector<RunOutcome> runs;  // plan order
    batch::StepCount steps;
    CostBreakdown cost;
    double start_s = 0.0;
    double elapsed_s = 0.0;
    std::vector<std::pair<double, double>> drift_trace;  // (t, detuning)
    std::size_t buffer_high_water_words = 0;
    std::size_t stream_high_water_units = 0;

    /// Mean epsilon over all MS gate applications, and the largest epsilon.
    double mean_ms_error() const;
    double max_ms_error() const;
};

/// One simulated trap with a persistent clock and drift state.
class ControlSystem {
   public:
    explicit ControlSystem(HardwareConfig config = {}, std::optional<DriftModel> drift = std::nullopt,
                           std::uint64_t seed = 0);

    /// Streams, uploads and runs every step of `plan`. Throws BufferOverflow,
    /// BackendError, and compile errors from the stream.
    ExecutionReport execute(const batch::BatchPlan &plan);

    /// Resets the detuning to zero, costing the drift model's
    /// recalibration time.
    void recalibrate();

    double clock_s() const {
        return clock_;
    }
    /// Detuning at the current clock (zero without drift).
    double detuning_hz();
    const HardwareConfig &config() const {
        return config_;
    }
    const std::optional<DriftModel> &drift() const {
        return drift_model_;
    }
    /// Everything charged since construction; total() equals clock_s().
    const CostBreakdown &lifetime_cost() const {
        return lifetime_;
    }

   private:
    void advance(double seconds, double CostBreakdown::*term, CostBreakdown &cost);

    HardwareConfig config_;
    std::optional<DriftModel> drift_model_;
    std::optional<DriftState> drift_;
    double clock_ = 0.0;
    CostBreakdown lifetime_;
};

/// One-shot convenience on a fresh ControlSystem.
ExecutionReport execute(const batch::BatchPlan &plan, const HardwareConfig &config,
                        const std::optional<DriftModel> &drift = std::nullopt, std::uint64_t seed = 0);

}  // namespace qbatch::ctrlsim
