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

#include "qbatch/emulator/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbatch/error.hpp"

namespace qbatch::emulator {

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw Error(ErrorKind::ValidationError,
                    "state vector supports 0.." + std::to_string(kMaxQubits) + " qubits, got " +
                        std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << n_, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::apply(const GateUnitary &u) {
    const std::size_t k = u.qubits.size();
    const std::size_t d = u.dim();
    std::size_t mask = 0;
    std::vector<std::size_t> offsets(d, 0);
    for (std::size_t j = 0; j < k; ++j) {
        if (u.qubits[j] < 0 || u.qubits[j] >= n_) {
            throw Error(ErrorKind::QubitOutOfRange, "gate acts on qubit " + std::to_string(u.qubits[j]) +
                                                        " of a " + std::to_string(n_) + "-qubit state");
        }
        std::size_t bit = std::size_t{1} << u.qubits[j];
        if (mask & bit) {
            throw Error(ErrorKind::ValidationError, "gate lists a qubit twice");
        }
        mask |= bit;
    }
    for (std::size_t local = 0; local < d; ++local) {
        for (std::size_t j = 0; j < k; ++j) {
            if (local & (std::size_t{1} << j)) {
                offsets[local] |= std::size_t{1} << u.qubits[j];
            }
        }
    }
    std::vector<Complex> in(d);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (base & mask) {
            continue;
        }
        for (std::size_t c = 0; c < d; ++c) {
            in[c] = amps_[base | offsets[c]];
        }
        for (std::size_t r = 0; r < d; ++r) {
            Complex s{0.0, 0.0};
            for (std::size_t c = 0; c < d; ++c) {
                s += u.matrix[r * d + c] * in[c];
            }
            amps_[base | offsets[r]] = s;
        }
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

double overlap(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw Error(ErrorKind::ValidationError, "overlap of states with different sizes");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return std::abs(s);
}

}  // namespace qbatch::emulator
