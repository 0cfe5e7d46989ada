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

#include "qbatch/ctrlsim/control_system.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <string>
#include <thread>

#include "qbatch/batch/resolve.hpp"
#include "qbatch/bytecode/stream.hpp"
#include "qbatch/ctrlsim/interpreter.hpp"
#include "qbatch/emulator/run.hpp"
#include "qbatch/error.hpp"

namespace qbatch::ctrlsim {
namespace {

constexpr char kPauli[4] = {'I', 'X', 'Y', 'Z'};

struct Group {
    std::size_t subcircuit;
    std::vector<std::size_t> runs;
};

struct Pending {
    bytecode::StreamItem item;
    std::size_t group = 0;
    std::size_t footprint = 0;
};

std::vector<Group> group_runs(const batch::BatchPlan &plan, const std::vector<std::size_t> &step) {
    std::vector<Group> out;
    for (std::size_t r : step) {
        std::size_t sc = plan.runs.at(r).subcircuit;
        if (out.empty() || out.back().subcircuit != sc) {
            out.push_back(Group{sc, {}});
        }
        out.back().runs.push_back(r);
    }
    return out;
}

void apply_layers(emulator::StateVector &psi, const std::vector<Layer> &layers, double eps, std::mt19937_64 *rng) {
    for (const auto &layer : layers) {
        for (const auto &op : layer.ops) {
            psi.apply(op.unitary);
            if (rng && op.entangling && emulator::uniform01(*rng) < eps) {
                auto k = static_cast<int>(1 + (*rng)() % 15);
                char pa = kPauli[k % 4];
                char pb = kPauli[k / 4];
                if (pa != 'I') {
                    psi.apply(emulator::pauli(op.unitary.qubits[0], pa));
                }
                if (pb != 'I') {
                    psi.apply(emulator::pauli(op.unitary.qubits[1], pb));
                }
            }
        }
    }
}

}  // namespace

void HardwareConfig::validate() const {
    if (buffer_capacity_words == 0 || stream_capacity == 0) {
        throw Error(ErrorKind::ValidationError, "buffer and stream capacities must be positive");
    }
    if (!(comm_latency_s >= 0.0) || !(compile_time_s >= 0.0) || !(upload_rate_words_per_s > 0.0) ||
        !std::isfinite(comm_latency_s) || !std::isfinite(compile_time_s)) {
        throw Error(ErrorKind::ValidationError, "hardware costs must be finite and non-negative");
    }
}

double ExecutionReport::mean_ms_error() const {
    double sum = 0.0;
    double n = 0.0;
    for (const auto &r : runs) {
        sum += r.ms_error * static_cast<double>(r.ms_gates);
        n += static_cast<double>(r.ms_gates);
    }
    return n > 0.0 ? sum / n : 0.0;
}

double ExecutionReport::max_ms_error() const {
    double m = 0.0;
    for (const auto &r : runs) {
        if (r.ms_gates > 0) {
            m = std::max(m, r.ms_error);
        }
    }
    return m;
}

ControlSystem::ControlSystem(HardwareConfig config, std::optional<DriftModel> drift, std::uint64_t seed)
    : config_(config), drift_model_(drift) {
    config_.validate();
    if (drift_model_) {
        drift_.emplace(*drift_model_, seed);
    }
}

void ControlSystem::advance(double seconds, double CostBreakdown::*term, CostBreakdown &cost) {
    if (seconds <= 0.0) {
        return;
    }
    clock_ += seconds;
    cost.*term += seconds;
    lifetime_.*term += seconds;
    if (config_.clock == ClockMode::Wall) {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    }
}

double ControlSystem::detuning_hz() {
    return drift_ ? drift_->detuning_at(clock_) : 0.0;
}

void ControlSystem::recalibrate() {
    CostBreakdown ignored;
    if (drift_model_) {
        advance(drift_model_->recalibration_cost_s, &CostBreakdown::recalibration_s, ignored);
        drift_->recalibrate(clock_);
    }
}

ExecutionReport ControlSystem::execute(const batch::BatchPlan &plan) {
    if (drift_ && plan.shots == emulator::kExactShots) {
        throw Error(ErrorKind::ValidationError, "drift noise needs a finite shot count");
    }
    ExecutionReport report;
    report.mode = plan.mode;
    report.shots = plan.shots;
    report.seed = plan.seed;
    report.start_s = clock_;
    report.runs.resize(plan.runs.size());
    CostBreakdown &cost = report.cost;
    const auto scope = plan.shared_table() ? bytecode::TableScope::Shared : bytecode::TableScope::PerUnit;
    const double upload_rate = config_.upload_rate_words_per_s;
    const std::size_t capacity = config_.buffer_capacity_words;

    for (const auto &step : plan.steps) {
        advance(config_.comm_latency_s, &CostBreakdown::communication_s, cost);
        ++report.steps.communication_steps;

        std::vector<Group> groups = group_runs(plan, step);
        std::vector<lang::Subcircuit> sources;
        sources.reserve(groups.size());
        for (const auto &g : groups) {
            sources.push_back(plan.subcircuits.at(g.subcircuit));
        }
        bytecode::CompilationStream stream(std::move(sources), plan.library, config_.stream_capacity, scope);

        batch::EntryList mirror;
        std::deque<Pending> buffer;
        std::optional<Pending> held;
        std::size_t resident = 0;
        std::size_t next_group = 0;

        auto fetch = [&]() {
            auto item = stream.next();
            if (!item) {
                throw Error(ErrorKind::BackendError, "compilation stream ended early");
            }
            advance(config_.compile_time_s, &CostBreakdown::compilation_s, cost);
            Pending p;
            p.group = next_group++;
            p.footprint = item->unit.total_words() + item->new_entry_words();
            p.footprint += groups[p.group].runs.size() * batch::slot_value_words(item->unit);
            if (p.footprint > capacity) {
                throw Error(ErrorKind::BufferOverflow, "unit for subcircuit " +
                                                           std::to_string(item->unit.subcircuit_index) + " needs " +
                                                           std::to_string(p.footprint) + " words, buffer holds " +
                                                           std::to_string(capacity));
            }
            p.item = std::move(*item);
            held = std::move(p);
        };

        while (next_group < groups.size() || held || !buffer.empty()) {
            // Prefetch: upload while the next unit fits.
            for (;;) {
                if (!held && next_group < groups.size()) {
                    fetch();
                }
                if (!held || resident + held->footprint > capacity) {
                    break;
                }
                advance(static_cast<double>(held->footprint) / upload_rate, &CostBreakdown::upload_s, cost);
                report.steps.upload_words += static_cast<std::int64_t>(held->footprint);
                resident += held->footprint;
                report.buffer_high_water_words = std::max(report.buffer_high_water_words, resident);
                if (scope == bytecode::TableScope::Shared) {
                    for (const auto &e : held->item.new_entries) {
                        mirror.push_back(e);
                    }
                }
                buffer.push_back(std::move(*held));
                held.reset();
            }

            Pending front = std::move(buffer.front());
            buffer.pop_front();
            const batch::EntryList &entries =
                scope == bytecode::TableScope::Shared ? mirror : front.item.new_entries;
            for (std::size_t r : groups[front.group].runs) {
                const batch::Run &run = plan.runs[r];
                RunOutcome &out = report.runs[r];
                const lang::Subcircuit &sc = plan.subcircuits[run.subcircuit];
                out.subcircuit = run.subcircuit;
                out.subcircuit_index = sc.index;
                out.row = run.row;
                out.seed = run.seed;
                out.num_qubits = sc.num_qubits;
                out.start_s = clock_;
                try {
                    batch::ResolvedUnit resolved = batch::resolve(front.item.unit, entries, run.values);
                    std::vector<Layer> layers = interpret(resolved, plan.library);
                    out.elided = resolved.elided;
                    double duration_us = 0.0;
                    for (const auto &l : layers) {
                        duration_us += l.duration_us;
                        for (const auto &op : l.ops) {
                            out.ms_gates += op.entangling ? 1 : 0;
                        }
                    }
                    if (drift_) {
                        out.detuning_hz = drift_->detuning_at(clock_);
                        out.ms_error = drift_->model().epsilon(out.detuning_hz);
                        report.drift_trace.emplace_back(clock_, out.detuning_hz);
                    }
                    emulator::StateVector psi(sc.num_qubits);
                    if (out.ms_error > 0.0 && out.ms_gates > 0) {
                        std::mt19937_64 rng(run.seed);
                        out.counts.assign(std::size_t{1} << sc.num_qubits, 0);
                        for (int s = 0; s < plan.shots; ++s) {
                            psi.reset();
                            apply_layers(psi, layers, out.ms_error, &rng);
                            ++out.counts[emulator::draw(psi.probabilities(), rng)];
                        }
                    } else {
                        apply_layers(psi, layers, 0.0, nullptr);
                        auto probs = psi.probabilities();
                        if (plan.shots != emulator::kExactShots) {
                            out.counts = emulator::sample(probs, plan.shots, run.seed);
                        } else {
                            out.frequencies = std::move(probs);
                        }
                    }
                    if (!out.counts.empty()) {
                        out.frequencies.resize(out.counts.size());
                        for (std::size_t i = 0; i < out.counts.size(); ++i) {
                            out.frequencies[i] = static_cast<double>(out.counts[i]) / plan.shots;
                        }
                    }
                    if (config_.include_pulse_time) {
                        int reps = plan.shots == emulator::kExactShots ? 1 : plan.shots;
                        advance(duration_us * 1e-6 * reps, &CostBreakdown::execution_s, cost);
                    }
                } catch (const Error &e) {
                    throw Error(e.kind(), "run " + std::to_string(r) + ": " + e.detail(), e.pos());
                }
            }
            resident -= front.footprint;
        }
        report.steps.compilations += static_cast<std::int64_t>(stream.compilations());
        report.stream_high_water_units = std::max(report.stream_high_water_units, stream.max_buffered());
    }
    report.elapsed_s = cost.total();
    return report;
}

ExecutionReport execute(const batch::BatchPlan &plan, const HardwareConfig &config,
                        const std::optional<DriftModel> &drift, std::uint64_t seed) {
    ControlSystem hw(config, drift, seed);
    return hw.execute(plan);
}

}  // namespace qbatch::ctrlsim
