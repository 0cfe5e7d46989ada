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

#include <string>

#include <json.hpp>

#include "qbatch/ctrlsim/control_system.hpp"

namespace qbatch::ctrlsim {

/// Basis label with character i giving the value of qubit i.
std::string bitstring(std::size_t index, int num_qubits);

nlohmann::ordered_json to_json(const batch::StepCount &steps);
nlohmann::ordered_json to_json(const CostBreakdown &cost);
nlohmann::ordered_json to_json(const RunOutcome &run);
nlohmann::ordered_json to_json(const ExecutionReport &report);
nlohmann::ordered_json to_json(const HardwareConfig &config);
nlohmann::ordered_json to_json(const DriftModel &drift);

/// Parses a drift object; missing fields keep their defaults.
DriftModel drift_from_json(const nlohmann::json &j);

}  // namespace qbatch::ctrlsim
