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

#include <optional>
#include <string_view>
#include <vector>

namespace qbatch::vqe {

enum class OptimizerStatus { Running, Converged, BudgetExhausted, Stalled };

std::string_view to_string(OptimizerStatus status);

struct OptimizerSettings {
    double theta0 = 0.5;
    double radius0 = 0.4;
    double shrink = 0.5;
    double tolerance = 1e-4;
    int budget = 18;  // energy evaluations, one batch each
};

struct Evaluation {
    double theta = 0.0;
    double energy = 0.0;
    double stderr_ = 0.0;
};

/// Ask/tell interface for derivative-free minimizers of one parameter.
class Optimizer {
   public:
    virtual ~Optimizer() = default;
    /// Next point to evaluate, or nullopt once finished.
    virtual std::optional<double> ask() = 0;
    virtual void tell(const Evaluation &e) = 0;
    virtual OptimizerStatus status() const = 0;
    virtual const std::vector<Evaluation> &history() const = 0;
    /// Lowest-energy evaluation so far. Requires a non-empty history.
    virtual const Evaluation &best() const = 0;
};

/// Linear-approximation trust region in one dimension: evaluates theta0 and
/// theta0 + radius, then steps by the radius from the best point away from
/// the most recent other point. A step that fails to improve shrinks the
/// radius. Finishes when the radius drops below tolerance (Converged, or
/// Stalled when the starting point was never improved on) or the budget is
/// spent.
class LinearTrustRegion final : public Optimizer {
   public:
    explicit LinearTrustRegion(OptimizerSettings settings = {});

    std::optional<double> ask() override;
    void tell(const Evaluation &e) override;
    OptimizerStatus status() const override {
        return status_;
    }
    const std::vector<Evaluation> &history() const override {
        return history_;
    }
    const Evaluation &best() const override;
    double radius() const {
        return radius_;
    }

   private:
    OptimizerSettings settings_;
    std::vector<Evaluation> history_;
    std::size_t best_ = 0;
    std::size_t other_ = 0;
    double radius_;
    std::optional<double> pending_;
    bool improved_ = false;
    OptimizerStatus status_ = OptimizerStatus::Running;
};

}  // namespace qbatch::vqe
