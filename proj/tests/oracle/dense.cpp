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

#include "oracle/dense.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qbatch/emulator/state_vector.hpp"

namespace oracle {
namespace {

using C = std::complex<double>;

Mat single(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("bad Pauli");
    }
    return m;
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat sigma(int n, int q, double phi) {
    return std::cos(phi) * pauli_on(n, q, 'X') + std::sin(phi) * pauli_on(n, q, 'Y');
}

double num(const qbatch::lang::Param &p) {
    return std::get<double>(p);
}

}  // namespace

Mat pauli_on(int n, int q, char p) {
    // Highest qubit is the leftmost Kronecker factor.
    Mat m = Mat::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        m = kron(m, single(k == q ? p : 'I'));
    }
    return m;
}

Mat pauli_string(const std::string &s) {
    int n = static_cast<int>(s.size());
    Mat m = Mat::Identity(1 << n, 1 << n);
    for (int q = 0; q < n; ++q) {
        m = m * pauli_on(n, q, s[static_cast<std::size_t>(q)]);
    }
    return m;
}

Mat r_gate(int n, int q, double phi, double theta) {
    Mat gen = C(0, -theta / 2) * sigma(n, q, phi);
    return gen.exp();
}

Mat rz_gate(int n, int q, double theta) {
    Mat id = Mat::Identity(1 << n, 1 << n);
    Mat one = (id - pauli_on(n, q, 'Z')) / 2.0;
    return id + (std::exp(C(0, theta)) - 1.0) * one;
}

Mat ms_gate(int n, int a, int b, double phi_a, double phi_b, double theta) {
    Mat gen = C(0, -theta / 2) * (sigma(n, a, phi_a) * sigma(n, b, phi_b));
    return gen.exp();
}

Mat gate(int n, const qbatch::lang::ResolvedGate &g) {
    if (g.name == "R") {
        return r_gate(n, g.qubits[0], num(g.params[0]), num(g.params[1]));
    }
    if (g.name == "Rz") {
        return rz_gate(n, g.qubits[0], num(g.params[0]));
    }
    if (g.name == "MS") {
        double phi = num(g.params[0]);
        return ms_gate(n, g.qubits[0], g.qubits[1], phi, phi, num(g.params[1]));
    }
    throw std::invalid_argument("oracle has no gate " + g.name);
}

Mat circuit(const qbatch::lang::Subcircuit &sc) {
    int n = sc.num_qubits;
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (const auto &m : sc.moments) {
        for (const auto &g : m.gates) {
            u = gate(n, g) * u;
        }
    }
    return u;
}

Vec final_state(const qbatch::lang::Subcircuit &sc) {
    Vec v = Vec::Zero(1 << sc.num_qubits);
    v(0) = 1.0;
    return circuit(sc) * v;
}

std::vector<double> probabilities(const Vec &psi) {
    std::vector<double> p(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(psi(i));
    }
    return p;
}

Mat emulator_matrix(const qbatch::emulator::GateUnitary &u, int n) {
    Mat m(1 << n, 1 << n);
    for (int col = 0; col < (1 << n); ++col) {
        qbatch::emulator::StateVector psi(n);
        psi.amplitudes()[0] = 0.0;
        psi.amplitudes()[static_cast<std::size_t>(col)] = 1.0;
        psi.apply(u);
        for (int row = 0; row < (1 << n); ++row) {
            m(row, col) = psi.amplitudes()[static_cast<std::size_t>(row)];
        }
    }
    return m;
}

double phase_distance(const Mat &a, const Mat &b) {
    C inner = (b.adjoint() * a).trace();
    C c = std::abs(inner) > 0 ? inner / std::abs(inner) : C(1.0, 0.0);
    return (a - c * b).cwiseAbs().maxCoeff();
}

Mat hamiltonian(const qbatch::vqe::PauliHamiltonian &h) {
    int n = h.num_qubits();
    Mat m = Mat::Zero(1 << n, 1 << n);
    for (const auto &t : h.terms()) {
        m += t.coeff * pauli_string(t.pauli);
    }
    return m;
}

double ground_energy(const qbatch::vqe::PauliHamiltonian &h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(h));
    return es.eigenvalues()(0);
}

double expectation(const Mat &op, const Vec &psi) {
    return (psi.adjoint() * op * psi)(0, 0).real();
}

Vec ansatz_state(double theta) {
    const double half_pi = 1.5707963267948966;
    Vec v = Vec::Zero(4);
    v(0) = 1.0;
    return ms_gate(2, 0, 1, 0, 0, -half_pi) * rz_gate(2, 1, theta) * ms_gate(2, 0, 1, 0, 0, half_pi) * v;
}

}  // namespace oracle
