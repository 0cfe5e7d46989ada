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

#include "qbatch/emulator/run.hpp"

#include "qbatch/error.hpp"

namespace qbatch::emulator {

std::vector<double> RunResult::frequencies() const {
    if (shots == kExactShots) {
        return probabilities;
    }
    std::vector<double> f(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        f[i] = static_cast<double>(counts[i]) / shots;
    }
    return f;
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw(const std::vector<double> &probabilities, std::mt19937_64 &rng) {
    double u = uniform01(rng);
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] <= 0.0) {
            continue;
        }
        acc += probabilities[i];
        last = i;
        if (u < acc) {
            return i;
        }
    }
    return last;
}

std::vector<std::uint64_t> sample(const std::vector<double> &probabilities, int shots, std::uint64_t seed) {
    if (shots < 0) {
        throw Error(ErrorKind::ValidationError, "shots must be non-negative");
    }
    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < shots; ++s) {
        ++counts[draw(probabilities, rng)];
    }
    return counts;
}

void apply_moment(StateVector &psi, const lang::Moment &moment) {
    for (const auto &g : moment.gates) {
        psi.apply(unitary_of(g));
    }
}

RunResult run_subcircuit(const lang::Subcircuit &sc, int shots, std::uint64_t seed) {
    StateVector psi(sc.num_qubits);
    for (const auto &m : sc.moments) {
        apply_moment(psi, m);
    }
    RunResult out;
    out.shots = shots;
    out.probabilities = psi.probabilities();
    if (shots != kExactShots) {
        out.counts = sample(out.probabilities, shots, seed);
    }
    return out;
}

}  // namespace qbatch::emulator
