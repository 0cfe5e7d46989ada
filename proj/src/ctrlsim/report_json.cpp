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

#include "qbatch/ctrlsim/report_json.hpp"

#include <cmath>

#include "qbatch/error.hpp"

namespace qbatch::ctrlsim {

std::string bitstring(std::size_t index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
        if (index & (std::size_t{1} << q)) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

nlohmann::ordered_json to_json(const batch::StepCount &steps) {
    nlohmann::ordered_json j;
    j["communication_steps"] = steps.communication_steps;
    j["compilations"] = steps.compilations;
    j["upload_words"] = steps.upload_words;
    return j;
}

nlohmann::ordered_json to_json(const CostBreakdown &cost) {
    nlohmann::ordered_json j;
    j["communication_s"] = cost.communication_s;
    j["compilation_s"] = cost.compilation_s;
    j["upload_s"] = cost.upload_s;
    j["execution_s"] = cost.execution_s;
    j["recalibration_s"] = cost.recalibration_s;
    j["total_s"] = cost.total();
    return j;
}

nlohmann::ordered_json to_json(const RunOutcome &run) {
    nlohmann::ordered_json j;
    j["subcircuit"] = run.subcircuit_index;
    j["row"] = run.row;
    j["seed"] = run.seed;
    nlohmann::ordered_json freq = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < run.frequencies.size(); ++i) {
        freq[bitstring(i, run.num_qubits)] = run.frequencies[i];
    }
    j["frequencies"] = std::move(freq);
    if (!run.counts.empty()) {
        nlohmann::ordered_json counts = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < run.counts.size(); ++i) {
            counts[bitstring(i, run.num_qubits)] = run.counts[i];
        }
        j["counts"] = std::move(counts);
    }
    j["start_s"] = run.start_s;
    j["detuning_hz"] = run.detuning_hz;
    j["ms_error"] = run.ms_error;
    j["ms_gates"] = run.ms_gates;
    return j;
}

nlohmann::ordered_json to_json(const ExecutionReport &report) {
    nlohmann::ordered_json j;
    j["mode"] = std::string(batch::to_string(report.mode));
    j["shots"] = report.shots;
    j["seed"] = report.seed;
    j["steps"] = to_json(report.steps);
    j["cost"] = to_json(report.cost);
    j["start_s"] = report.start_s;
    j["elapsed_s"] = report.elapsed_s;
    j["buffer_high_water_words"] = report.buffer_high_water_words;
    j["stream_high_water_units"] = report.stream_high_water_units;
    j["mean_ms_error"] = report.mean_ms_error();
    j["max_ms_error"] = report.max_ms_error();
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto &[t, d] : report.drift_trace) {
        trace.push_back({t, d});
    }
    j["drift_trace"] = std::move(trace);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto &r : report.runs) {
        runs.push_back(to_json(r));
    }
    j["runs"] = std::move(runs);
    return j;
}

nlohmann::ordered_json to_json(const HardwareConfig &config) {
    nlohmann::ordered_json j;
    j["buffer_capacity_words"] = config.buffer_capacity_words;
    j["comm_latency_s"] = config.comm_latency_s;
    j["compile_time_s"] = config.compile_time_s;
    if (std::isfinite(config.upload_rate_words_per_s)) {
        j["upload_rate_words_per_s"] = config.upload_rate_words_per_s;
    } else {
        j["upload_rate_words_per_s"] = "inf";
    }
    j["include_pulse_time"] = config.include_pulse_time;
    j["stream_capacity"] = config.stream_capacity;
    j["clock"] = config.clock == ClockMode::Wall ? "wall" : "simulated";
    return j;
}

nlohmann::ordered_json to_json(const DriftModel &drift) {
    nlohmann::ordered_json j;
    j["kind"] = drift.kind == DriftModel::Kind::RandomWalk ? "random_walk" : "linear";
    j["rate_hz_per_s"] = drift.rate_hz_per_s;
    j["walk_sigma_hz"] = drift.walk_sigma_hz;
    j["walk_step_s"] = drift.walk_step_s;
    j["k_per_hz2"] = drift.k_per_hz2;
    j["recalibration_cost_s"] = drift.recalibration_cost_s;
    return j;
}

DriftModel drift_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ValidationError, "drift must be a JSON object");
    }
    DriftModel d;
    try {
        if (j.contains("kind")) {
            auto kind = j.at("kind").get<std::string>();
            if (kind == "linear") {
                d.kind = DriftModel::Kind::Linear;
            } else if (kind == "random_walk") {
                d.kind = DriftModel::Kind::RandomWalk;
            } else {
                throw Error(ErrorKind::ValidationError, "unknown drift kind '" + kind + "'");
            }
        }
        d.rate_hz_per_s = j.value("rate_hz_per_s", d.rate_hz_per_s);
        d.walk_sigma_hz = j.value("walk_sigma_hz", d.walk_sigma_hz);
        d.walk_step_s = j.value("walk_step_s", d.walk_step_s);
        d.k_per_hz2 = j.value("k_per_hz2", d.k_per_hz2);
        d.recalibration_cost_s = j.value("recalibration_cost_s", d.recalibration_cost_s);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ValidationError, std::string("bad drift object: ") + e.what());
    }
    d.validate();
    return d;
}

}  // namespace qbatch::ctrlsim
