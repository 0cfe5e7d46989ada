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
#include <vector>

#include "qbatch/batch/plan.hpp"
#include "qbatch/ctrlsim/control_system.hpp"
#include "qbatch/vqe/ansatz.hpp"
#include "qbatch/vqe/hamiltonian.hpp"
#include "qbatch/vqe/optimizer.hpp"

namespace qbatch::vqe {

struct VqeConfig {
    batch::Mode mode = batch::Mode::OverrideBatched;
    int shots = 1000;  // 0 selects exact mode
    std::uint64_t seed = 0;
    OptimizerSettings optimizer;
    ctrlsim::HardwareConfig hardware;
    std::optional<ctrlsim::DriftModel> drift;
    pulse::GateLibrary library = pulse::GateLibrary::standard();
};

struct Estimate {
    double energy = 0.0;
    double stderr_ = 0.0;
    std::vector<double> expectations;  // per projection
    batch::StepCount steps;
    double mean_ms_error = 0.0;
    double max_ms_error = 0.0;
    std::size_t ms_gates = 0;
};

/// Energy of the ansatz state, measured through the projection circuits on
/// a persistent simulated control system.
class EnergyEstimator {
   public:
    EnergyEstimator(const PauliHamiltonian &h, VqeConfig config);

    /// One batch (or nine submissions when unbatched) per call.
    Estimate energy(double theta);

    ctrlsim::ControlSystem &hardware() {
        return hw_;
    }
    const ProjectionSet &projection_set() const {
        return projections_;
    }
    const lang::Program &program() const {
        return program_;
    }
    /// Plan used for the next energy() call.
    batch::BatchPlan plan_for(double theta) const;

   private:
    ProjectionSet projections_;
    VqeConfig config_;
    lang::Program program_;
    std::vector<lang::Subcircuit> subcircuits_;
    ctrlsim::ControlSystem hw_;
    std::uint64_t calls_ = 0;
};

struct IterationRecord {
    int iteration = 0;
    double theta = 0.0;
    double energy = 0.0;
    double stderr_ = 0.0;
    double best_energy = 0.0;
    batch::StepCount steps;  // cumulative
    double clock_s = 0.0;
    double mean_ms_error = 0.0;
    double max_ms_error = 0.0;
};

struct VqeResult {
    std::vector<IterationRecord> history;
    OptimizerStatus status = OptimizerStatus::Running;
    Evaluation best;
    batch::StepCount steps;
    ctrlsim::CostBreakdown cost;
    double elapsed_s = 0.0;
    double mean_ms_error = 0.0;   // over every MS gate of the whole run
    double final_ms_error = 0.0;  // epsilon at the end of the run
    double max_ms_error = 0.0;
};

VqeResult optimize(const PauliHamiltonian &h, const VqeConfig &config);

}  // namespace qbatch::vqe
