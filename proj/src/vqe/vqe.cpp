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

#include "qbatch/vqe/vqe.hpp"

#include <cmath>

#include "qbatch/emulator/run.hpp"
#include "qbatch/hash.hpp"
#include "qbatch/lang/transform.hpp"

namespace qbatch::vqe {

EnergyEstimator::EnergyEstimator(const PauliHamiltonian &h, VqeConfig config)
    : projections_(projections(h)),
      config_(std::move(config)),
      program_(ansatz_program(config_.library)),
      subcircuits_(lang::compile_subcircuits(program_)),
      hw_(config_.hardware, config_.drift, mix_seed(config_.seed ^ 0x6472696674ULL)) {
}

batch::BatchPlan EnergyEstimator::plan_for(double theta) const {
    batch::PlanOptions options{config_.shots, mix_seed(config_.seed + calls_)};
    return batch::plan(program_, subcircuits_, projections_.overrides(theta), config_.mode, config_.library,
                       options);
}

Estimate EnergyEstimator::energy(double theta) {
    Estimate out;
    out.energy = projections_.identity;
    if (projections_.items.empty()) {
        ++calls_;
        return out;
    }
    batch::BatchPlan plan = plan_for(theta);
    ++calls_;
    ctrlsim::ExecutionReport report = hw_.execute(plan);
    double variance = 0.0;
    for (std::size_t k = 0; k < projections_.items.size(); ++k) {
        const Projection &p = projections_.items[k];
        double e = expectation(p, report.runs.at(k).frequencies);
        out.expectations.push_back(e);
        out.energy += p.coeff * e;
        if (config_.shots != emulator::kExactShots) {
            variance += p.coeff * p.coeff * std::max(0.0, 1.0 - e * e) / config_.shots;
        }
    }
    out.stderr_ = std::sqrt(variance);
    out.steps = report.steps;
    out.mean_ms_error = report.mean_ms_error();
    out.max_ms_error = report.max_ms_error();
    for (const auto &r : report.runs) {
        out.ms_gates += r.ms_gates;
    }
    return out;
}

VqeResult optimize(const PauliHamiltonian &h, const VqeConfig &config) {
    EnergyEstimator estimator(h, config);
    LinearTrustRegion opt(config.optimizer);
    VqeResult result;
    double ms_sum = 0.0;
    double ms_count = 0.0;
    while (auto theta = opt.ask()) {
        Estimate est = estimator.energy(*theta);
        opt.tell(Evaluation{*theta, est.energy, est.stderr_});
        result.steps += est.steps;
        IterationRecord rec;
        rec.iteration = static_cast<int>(opt.history().size());
        rec.theta = *theta;
        rec.energy = est.energy;
        rec.stderr_ = est.stderr_;
        rec.best_energy = opt.best().energy;
        rec.steps = result.steps;
        rec.clock_s = estimator.hardware().clock_s();
        rec.mean_ms_error = est.mean_ms_error;
        rec.max_ms_error = est.max_ms_error;
        result.max_ms_error = std::max(result.max_ms_error, est.max_ms_error);
        ms_sum += est.mean_ms_error * static_cast<double>(est.ms_gates);
        ms_count += static_cast<double>(est.ms_gates);
        result.history.push_back(rec);
    }
    result.status = opt.status();
    result.best = opt.best();
    result.cost = estimator.hardware().lifetime_cost();
    result.elapsed_s = estimator.hardware().clock_s();
    result.mean_ms_error = ms_count > 0.0 ? ms_sum / ms_count : 0.0;
    if (config.drift) {
        result.final_ms_error = config.drift->epsilon(estimator.hardware().detuning_hz());
    }
    return result;
}

}  // namespace qbatch::vqe
