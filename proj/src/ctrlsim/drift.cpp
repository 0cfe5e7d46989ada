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

#include "qbatch/ctrlsim/drift.hpp"

#include <algorithm>
#include <cmath>

#include "qbatch/error.hpp"

namespace qbatch::ctrlsim {

double DriftModel::epsilon(double delta_hz) const {
    return std::clamp(k_per_hz2 * delta_hz * delta_hz, 0.0, 1.0);
}

void DriftModel::validate() const {
    for (double v : {rate_hz_per_s, walk_sigma_hz, k_per_hz2, recalibration_cost_s}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorKind::ValidationError, "drift parameters must be finite and non-negative");
        }
    }
    if (!(walk_step_s > 0.0) || !std::isfinite(walk_step_s)) {
        throw Error(ErrorKind::ValidationError, "drift walk step must be positive");
    }
}

DriftState::DriftState(DriftModel model, std::uint64_t seed) : model_(model), rng_(seed) {
    model_.validate();
}

double DriftState::detuning_at(double t) {
    if (t < t_last_) {
        t = t_last_;
    }
    if (model_.kind == DriftModel::Kind::RandomWalk) {
        std::normal_distribution<double> kick(0.0, model_.walk_sigma_hz * std::sqrt(model_.walk_step_s));
        auto steps_before = static_cast<long long>(std::floor((t_last_ - t_ref_) / model_.walk_step_s));
        auto steps_after = static_cast<long long>(std::floor((t - t_ref_) / model_.walk_step_s));
        for (long long i = steps_before; i < steps_after; ++i) {
            walk_ += kick(rng_);
        }
    }
    t_last_ = t;
    return model_.rate_hz_per_s * (t - t_ref_) + walk_;
}

void DriftState::recalibrate(double t) {
    t_ref_ = std::max(t, t_last_);
    t_last_ = t_ref_;
    walk_ = 0.0;
}

}  // namespace qbatch::ctrlsim
