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

#include "qbatch/emulator/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qbatch/error.hpp"

namespace qbatch::emulator {
namespace {

using Mat2 = std::array<Complex, 4>;

Mat2 sigma(double phi) {
    return {Complex{0.0, 0.0}, std::polar(1.0, -phi), std::polar(1.0, phi), Complex{0.0, 0.0}};
}

double numeric(const lang::ResolvedGate &gate, std::size_t i) {
    const auto &p = gate.params.at(i);
    if (const auto *ref = std::get_if<lang::LetRef>(&p)) {
        throw Error(ErrorKind::MissingSlotValue, "gate " + gate.name + " has unresolved let '" + ref->name + "'",
                    gate.pos);
    }
    return std::get<double>(p);
}

}  // namespace

GateUnitary rotation(int q, double phi, double theta) {
    Mat2 s = sigma(phi);
    Complex c{std::cos(theta / 2), 0.0};
    Complex is{0.0, -std::sin(theta / 2)};
    return GateUnitary{{q}, {c + is * s[0], is * s[1], is * s[2], c + is * s[3]}};
}

GateUnitary rz(int q, double theta) {
    return GateUnitary{{q}, {1.0, 0.0, 0.0, std::polar(1.0, theta)}};
}

GateUnitary pauli(int q, char p) {
    switch (p) {
        case 'I':
            return GateUnitary{{q}, {1.0, 0.0, 0.0, 1.0}};
        case 'X':
            return GateUnitary{{q}, {0.0, 1.0, 1.0, 0.0}};
        case 'Y':
            return GateUnitary{{q}, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0}};
        case 'Z':
            return GateUnitary{{q}, {1.0, 0.0, 0.0, -1.0}};
        default:
            throw Error(ErrorKind::ValidationError, std::string("unknown Pauli '") + p + "'");
    }
}

GateUnitary ms(int a, int b, double phi_a, double phi_b, double theta) {
    Mat2 sa = sigma(phi_a);
    Mat2 sb = sigma(phi_b);
    Complex c{std::cos(theta / 2), 0.0};
    Complex is{0.0, -std::sin(theta / 2)};
    GateUnitary u{{a, b}, std::vector<Complex>(16)};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t col = 0; col < 4; ++col) {
            Complex kron = sa[(r & 1) * 2 + (col & 1)] * sb[(r >> 1) * 2 + (col >> 1)];
            u.matrix[r * 4 + col] = is * kron + (r == col ? c : Complex{0.0, 0.0});
        }
    }
    return u;
}

GateUnitary unitary_of(const lang::ResolvedGate &gate) {
    if (gate.name == "R" && gate.qubits.size() == 1 && gate.params.size() == 2) {
        return rotation(gate.qubits[0], numeric(gate, 0), numeric(gate, 1));
    }
    if (gate.name == "Rz" && gate.qubits.size() == 1 && gate.params.size() == 1) {
        return rz(gate.qubits[0], numeric(gate, 0));
    }
    if (gate.name == "MS" && gate.qubits.size() == 2 && gate.params.size() == 2) {
        if (gate.qubits[0] == gate.qubits[1]) {
            throw Error(ErrorKind::SameQubitMS, "MS needs two distinct qubits", gate.pos);
        }
        double phi = numeric(gate, 0);
        return ms(gate.qubits[0], gate.qubits[1], phi, phi, numeric(gate, 1));
    }
    throw Error(ErrorKind::UnknownGate, "no unitary for gate '" + gate.name + "'", gate.pos);
}

double unitarity_error(const GateUnitary &u) {
    std::size_t d = u.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) {
                s += std::conj(u.at(k, i)) * u.at(k, j);
            }
            if (i == j) {
                s -= 1.0;
            }
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

GateUnitary compose(const GateUnitary &first, const GateUnitary &second) {
    if (first.qubits != second.qubits) {
        throw Error(ErrorKind::ValidationError, "compose needs matching qubit lists");
    }
    std::size_t d = first.dim();
    GateUnitary out{first.qubits, std::vector<Complex>(d * d)};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) {
                s += second.at(i, k) * first.at(k, j);
            }
            out.matrix[i * d + j] = s;
        }
    }
    return out;
}

}  // namespace qbatch::emulator
