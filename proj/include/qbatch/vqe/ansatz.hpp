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

#include <array>
#include <string>
#include <vector>

#include "qbatch/batch/overrides.hpp"
#include "qbatch/lang/ast.hpp"
#include "qbatch/pulse/gate_library.hpp"
#include "qbatch/vqe/hamiltonian.hpp"

namespace qbatch::vqe {

inline constexpr const char *kThetaLet = "theta";

/// Two-qubit ansatz: MS(pi/2), Rz(q1, theta), MS(-pi/2), then per qubit q a
/// basis change R(q, pi/2, bx_q) R(q, 0, by_q). All basis lets default to
/// zero, which resolves to no pulse.
std::string ansatz_source(double theta = 0.5);
lang::Program ansatz_program(const pulse::GateLibrary &library = pulse::GateLibrary::standard());

/// Measurement recipe of one Pauli term on two qubits.
struct Projection {
    std::string pauli;
    double coeff = 0.0;
    std::array<double, 2> bx{0.0, 0.0};  // R(q, pi/2, bx): X -> -Z
    std::array<double, 2> by{0.0, 0.0};  // R(q, 0, by):    Y -> Z
    double sign = 1.0;                   // product of per-qubit signs
    unsigned mask = 0;                   // qubits entering the parity
};

struct ProjectionSet {
    std::vector<Projection> items;  // one per non-identity term, input order
    double identity = 0.0;

    /// theta as a scalar plus one override row per projection.
    batch::OverrideSet overrides(double theta) const;
};

/// Throws UnsupportedQubitCount unless H acts on two qubits.
ProjectionSet projections(const PauliHamiltonian &h);

/// <P> from z-basis outcome frequencies of the projection's circuit.
double expectation(const Projection &p, const std::vector<double> &frequencies);

}  // namespace qbatch::vqe
