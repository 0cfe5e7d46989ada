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

#include <vector>

#include "qbatch/batch/resolve.hpp"
#include "qbatch/emulator/gates.hpp"
#include "qbatch/pulse/gate_library.hpp"
#include "qbatch/pulse/lowering.hpp"

namespace qbatch::ctrlsim {

/// A pulse program turned back into the unitary it drives.
struct Operation {
    emulator::GateUnitary unitary;
    bool entangling = false;
    double duration_us = 0.0;
};

struct Layer {
    std::vector<Operation> ops;
    double duration_us = 0.0;  // longest pulse in the layer
};

/// Decodes one resolved pulse using the templates of `library`. Throws
/// BackendError when the pulse does not match its gate definition.
Operation interpret(const pulse::PulseProgram &p, const pulse::GateLibrary &library);

std::vector<Layer> interpret(const batch::ResolvedUnit &unit, const pulse::GateLibrary &library);

}  // namespace qbatch::ctrlsim
