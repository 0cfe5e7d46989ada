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
#include <random>

namespace qbatch::ctrlsim {

/// Sideband detuning drift and its effect on MS fidelity.
struct DriftModel {
    enum class Kind { Linear, RandomWalk };

    Kind kind = Kind::Linear;
    double rate_hz_per_s = 15000.0 / 900.0;
    // Random walk only: Gaussian kick of sigma * sqrt(step) every step.
    double walk_sigma_hz = 200.0;
    double walk_step_s = 1.0;
    // epsilon = k * delta^2, with k fixed by epsilon(3 kHz) = 0.02.
    double k_per_hz2 = 0.02 / (3000.0 * 3000.0);
    double recalibration_cost_s = 0.0;

    /// MS error probability at detuning `delta_hz`, clipped to [0, 1].
    double epsilon(double delta_hz) const;
    /// Check that all parameters are finite and non-negative.
    void validate() const;
};

/// Time evolution of the detuning. Queries must be monotone in time.
class DriftState {
   public:
    DriftState(DriftModel model, std::uint64_t seed);

    /// Detuning at simulated time t (seconds since the last recalibration
    /// reference).
    double detuning_at(double t);
    void recalibrate(double t);
    const DriftModel &model() const {
        return model_;
    }

   private:
    DriftModel model_;
    std::mt19937_64 rng_;
    double t_ref_ = 0.0;
    double t_last_ = 0.0;
    double walk_ = 0.0;  // accumulated random offset
};

}  // namespace qbatch::ctrlsim
