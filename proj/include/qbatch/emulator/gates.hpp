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

#include <complex>
#include <cstdint>
#include <vector>

#include "qbatch/lang/ast.hpp"

namespace qbatch::emulator {

using Complex = std::complex<double>;

/// Dense unitary on `qubits`. Local basis index bit j corresponds to
/// qubits[j]; `matrix` is row-major with dimension 2^qubits.size().
struct GateUnitary {
    std::vector<int> qubits;
    std::vector<Complex> matrix;

    std::size_t dim() const {
        return std::size_t{1} << qubits.size();
    }
    Complex at(std::size_t row, std::size_t col) const {
        return matrix[row * dim() + col];
    }
};

/// exp(-i theta/2 (cos phi X + sin phi Y)).
GateUnitary rotation(int q, double phi, double theta);
/// diag(1, e^{i theta}).
GateUnitary rz(int q, double theta);
/// exp(-i theta/2 sigma_{phi_a} (x) sigma_{phi_b}); equal phases give MS(phi, theta).
GateUnitary ms(int a, int b, double phi_a, double phi_b, double theta);
GateUnitary pauli(int q, char p);

/// Unitary of a numeric native gate (R, Rz, MS). Throws UnknownGate, and
/// MissingSlotValue for a let-symbolic parameter.
GateUnitary unitary_of(const lang::ResolvedGate &gate);

/// max |(U^dagger U - I)_ij|.
double unitarity_error(const GateUnitary &u);

/// Product `second * first` of two unitaries on the same qubit list.
GateUnitary compose(const GateUnitary &first, const GateUnitary &second);

}  // namespace qbatch::emulator
