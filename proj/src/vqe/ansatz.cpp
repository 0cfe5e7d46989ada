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

#include "qbatch/vqe/ansatz.hpp"

#include <bit>
#include <cstdio>

#include "qbatch/error.hpp"
#include "qbatch/lang/parser.hpp"
#include "qbatch/pulse/lowering.hpp"

namespace qbatch::vqe {

std::string ansatz_source(double theta) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    std::string t = buf;
    if (t.find_first_of(".eEn") == std::string::npos) {
        t += ".0";
    }
    return "register q[2]\n"
           "let theta " + t + "\n"
           "let bx0 0.0\n"
           "let by0 0.0\n"
           "let bx1 0.0\n"
           "let by1 0.0\n"
           "\n"
           "prepare_all\n"
           "MS q[0] q[1] 0 1.5707963267948966\n"
           "Rz q[1] theta\n"
           "MS q[0] q[1] 0 -1.5707963267948966\n"
           "R q[0] 1.5707963267948966 bx0\n"
           "R q[0] 0 by0\n"
           "R q[1] 1.5707963267948966 bx1\n"
           "R q[1] 0 by1\n"
           "measure_all\n";
}

lang::Program ansatz_program(const pulse::GateLibrary &library) {
    return lang::parse(ansatz_source(), library.signatures());
}

batch::OverrideSet ProjectionSet::overrides(double theta) const {
    batch::OverrideSet ov;
    ov.set(kThetaLet, lang::LetValue::floating(theta));
    std::vector<lang::LetValue> bx0, by0, bx1, by1;
    for (const auto &p : items) {
        bx0.push_back(lang::LetValue::floating(p.bx[0]));
        by0.push_back(lang::LetValue::floating(p.by[0]));
        bx1.push_back(lang::LetValue::floating(p.bx[1]));
        by1.push_back(lang::LetValue::floating(p.by[1]));
    }
    if (!items.empty()) {
        ov.set("bx0", std::move(bx0));
        ov.set("by0", std::move(by0));
        ov.set("bx1", std::move(bx1));
        ov.set("by1", std::move(by1));
    }
    return ov;
}

ProjectionSet projections(const PauliHamiltonian &h) {
    if (h.num_qubits() != 2) {
        throw Error(ErrorKind::UnsupportedQubitCount,
                    "projections need a 2-qubit Hamiltonian, got " + std::to_string(h.num_qubits()) + " qubits");
    }
    ProjectionSet out;
    out.identity = h.identity_coefficient();
    for (const auto &t : h.terms()) {
        if (is_identity(t.pauli)) {
            continue;
        }
        Projection p;
        p.pauli = t.pauli;
        p.coeff = t.coeff;
        for (int q = 0; q < 2; ++q) {
            switch (t.pauli[static_cast<std::size_t>(q)]) {
                case 'X':
                    p.bx[q] = pulse::kPi / 2;
                    p.sign = -p.sign;
                    p.mask |= 1U << q;
                    break;
                case 'Y':
                    p.by[q] = pulse::kPi / 2;
                    p.mask |= 1U << q;
                    break;
                case 'Z':
                    p.mask |= 1U << q;
                    break;
                default:
                    break;
            }
        }
        out.items.push_back(std::move(p));
    }
    return out;
}

double expectation(const Projection &p, const std::vector<double> &frequencies) {
    double s = 0.0;
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        bool odd = std::popcount(static_cast<unsigned>(i) & p.mask) % 2 == 1;
        s += odd ? -frequencies[i] : frequencies[i];
    }
    return p.sign * s;
}

}  // namespace qbatch::vqe
