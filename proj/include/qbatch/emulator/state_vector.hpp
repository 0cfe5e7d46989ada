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
#include <vector>

#include "qbatch/emulator/gates.hpp"

namespace qbatch::emulator {

inline constexpr int kMaxQubits = 12;

/// Dense state; qubit 0 is the least-significant bit of the basis index.
class StateVector {
   public:
    explicit StateVector(int num_qubits);

    int num_qubits() const {
        return n_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }
    std::vector<Complex> &amplitudes() {
        return amps_;
    }

    void reset();
    void apply(const GateUnitary &u);
    double norm() const;
    std::vector<double> probabilities() const;

   private:
    int n_;
    std::vector<Complex> amps_;
};

/// Inner-product fidelity |<a|b>|, which ignores global phase.
double overlap(const StateVector &a, const StateVector &b);

}  // namespace qbatch::emulator
