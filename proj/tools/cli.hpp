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

#include <ostream>
#include <string>
#include <vector>

#include "qbatch/vqe/vqe.hpp"

namespace qbatch::cli {

/// Runs the qbatch command line. Returns 0 on success, 1 on a validation
/// error and 2 on an execution error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Energy-per-iteration chart of a VQE run.
std::string energy_plot_svg(const vqe::VqeResult &result, double reference_energy);

}  // namespace qbatch::cli
