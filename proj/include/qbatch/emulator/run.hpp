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
#include <random>
#include <vector>

#include "qbatch/emulator/state_vector.hpp"
#include "qbatch/lang/ast.hpp"

namespace qbatch::emulator {

/// Requesting zero shots selects exact mode: probabilities only, no counts.
inline constexpr int kExactShots = 0;

struct RunResult {
    int shots = kExactShots;
    std::vector<double> probabilities;
    std::vector<std::uint64_t> counts;  // empty in exact mode

    /// counts / shots, or the exact probabilities.
    std::vector<double> frequencies() const;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64 &rng);

/// Draws one basis index by inverse CDF.
std::size_t draw(const std::vector<double> &probabilities, std::mt19937_64 &rng);

/// Multinomial sample of `shots` outcomes.
std::vector<std::uint64_t> sample(const std::vector<double> &probabilities, int shots, std::uint64_t seed);

/// Applies a parallel block or single gate: each gate in turn; supports are
/// disjoint so the order does not matter.
void apply_moment(StateVector &psi, const lang::Moment &moment);

/// Prepares |0...0>, applies every moment and measures in the z basis.
RunResult run_subcircuit(const lang::Subcircuit &sc, int shots, std::uint64_t seed);

}  // namespace qbatch::emulator
