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

#include "qbatch/vqe/optimizer.hpp"

#include <cmath>

#include "qbatch/error.hpp"

namespace qbatch::vqe {

std::string_view to_string(OptimizerStatus status) {
    switch (status) {
        case OptimizerStatus::Running:
            return "running";
        case OptimizerStatus::Converged:
            return "converged";
        case OptimizerStatus::BudgetExhausted:
            return "budget_exhausted";
        case OptimizerStatus::Stalled:
            return "stalled";
    }
    return "?";
}

LinearTrustRegion::LinearTrustRegion(OptimizerSettings settings) : settings_(settings), radius_(settings.radius0) {
    if (settings_.budget < 1) {
        throw Error(ErrorKind::ValidationError, "optimizer budget must be at least 1");
    }
    if (!(settings_.radius0 > 0.0) || !(settings_.shrink > 0.0 && settings_.shrink < 1.0) ||
        !(settings_.tolerance > 0.0) || !std::isfinite(settings_.theta0)) {
        throw Error(ErrorKind::ValidationError, "invalid optimizer settings");
    }
}

std::optional<double> LinearTrustRegion::ask() {
    if (status_ != OptimizerStatus::Running) {
        return std::nullopt;
    }
    if (!pending_) {
        if (history_.empty()) {
            pending_ = settings_.theta0;
        } else if (history_.size() == 1) {
            pending_ = settings_.theta0 + radius_;
        } else {
            double away = history_[best_].theta - history_[other_].theta;
            pending_ = history_[best_].theta + (away >= 0.0 ? radius_ : -radius_);
        }
    }
    return pending_;
}

void LinearTrustRegion::tell(const Evaluation &e) {
    if (status_ != OptimizerStatus::Running || !pending_) {
        throw Error(ErrorKind::ValidationError, "tell() without a pending ask()");
    }
    if (!std::isfinite(e.energy)) {
        throw Error(ErrorKind::BackendError, "non-finite energy");
    }
    pending_.reset();
    history_.push_back(e);
    std::size_t idx = history_.size() - 1;
    if (idx > 0) {
        if (e.energy < history_[best_].energy) {
            other_ = best_;
            best_ = idx;
            improved_ = true;
        } else {
            other_ = idx;
            if (idx > 1) {
                radius_ *= settings_.shrink;
            }
        }
    }
    if (radius_ < settings_.tolerance) {
        status_ = improved_ ? OptimizerStatus::Converged : OptimizerStatus::Stalled;
    } else if (static_cast<int>(history_.size()) >= settings_.budget) {
        status_ = OptimizerStatus::BudgetExhausted;
    }
}

const Evaluation &LinearTrustRegion::best() const {
    if (history_.empty()) {
        throw Error(ErrorKind::ValidationError, "no evaluations yet");
    }
    return history_[best_];
}

}  // namespace qbatch::vqe
