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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracle/dense.hpp"
#include "qbatch/emulator/gates.hpp"
#include "qbatch/emulator/run.hpp"
#include "qbatch/emulator/state_vector.hpp"
#include "qbatch/pulse/lowering.hpp"
#include "support.hpp"

namespace {

using namespace qbatch;
using namespace qbatch::emulator;
using lang::ResolvedGate;
using qbatch::testing::parse;

constexpr double kPi = pulse::kPi;

GateUnitary random_gate(qbatch::testing::ProgramGen &gen, int n) {
    int kind = gen.uniform(0, n >= 2 ? 3 : 1);
    int q = gen.uniform(0, n - 1);
    switch (kind) {
        case 0:
            return rotation(q, gen.real(-kPi, kPi), gen.real(-7.0, 7.0));
        case 1:
            return rz(q, gen.real(-7.0, 7.0));
        case 2: {
            int b = (q + gen.uniform(1, n - 1)) % n;
            return ms(q, b, gen.real(-kPi, kPi), gen.real(-kPi, kPi), gen.real(-7.0, 7.0));
        }
        default: {
            int b = (q + gen.uniform(1, n - 1)) % n;
            return compose(ms(q, b, 0.3, 1.1, -0.5), ms(q, b, 0.2, -0.4, gen.real(-7.0, 7.0)));
        }
    }
}

TEST(EmulatorGates, MsOnZeroState) {
    StateVector psi(2);
    psi.apply(ms(0, 1, 0.0, 0.0, kPi / 2));
    const auto &a = psi.amplitudes();
    EXPECT_NEAR(a[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(a[3].imag(), -1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(a[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a[2]), 0.0, 1e-12);
}

TEST(EmulatorGates, RzInvisibleInZBasis) {
    for (double theta : {0.0, 0.3, -2.0, 10.0}) {
        StateVector psi(1);
        psi.apply(rz(0, theta));
        auto p = psi.probabilities();
        EXPECT_NEAR(p[0], 1.0, 1e-15);
    }
}

TEST(EmulatorGates, QubitZeroIsLeastSignificant) {
    StateVector psi(3);
    psi.apply(rotation(0, 0.0, kPi));
    auto p = psi.probabilities();
    EXPECT_NEAR(p[1], 1.0, 1e-12);
    StateVector chi(3);
    chi.apply(rotation(2, 0.0, kPi));
    EXPECT_NEAR(chi.probabilities()[4], 1.0, 1e-12);
}

TEST(EmulatorGates, UnitaryOfResolvedGates) {
    auto u = unitary_of(ResolvedGate{"MS", {1, 0}, {0.4, 0.7}, {}});
    EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(u, 2), oracle::ms_gate(2, 1, 0, 0.4, 0.4, 0.7)), 1e-12);
    EXPECT_QBATCH_ERROR(unitary_of(ResolvedGate{"CNOT", {0, 1}, {}, {}}), ErrorKind::UnknownGate);
    EXPECT_QBATCH_ERROR(unitary_of(ResolvedGate{"MS", {1, 1}, {0.4, 0.7}, {}}), ErrorKind::SameQubitMS);
    EXPECT_QBATCH_ERROR(unitary_of(ResolvedGate{"Rz", {0}, {lang::LetRef{"t"}}, {}}), ErrorKind::MissingSlotValue);
}

TEST(EmulatorGates, AnsatzOracleTable) {
    // <ZZ> and probabilities of MS(-pi/2) Rz(q1, theta) MS(pi/2) |00>.
    struct Row {
        double theta;
        double p00, p11, zz;
    };
    const Row rows[] = {
        {0.0, 1.0, 0.0, 1.0},
        {kPi / 4, 0.8535533905932737, 0.14644660940672624, 1.0},
        {kPi / 2, 0.5, 0.5, 1.0},
    };
    for (const auto &r : rows) {
        auto sc = lang::substitute(lang::compile_subcircuits(parse(
                                       "register q[2]\nlet t 0.0\nprepare_all\nMS q[0] q[1] 0 1.5707963267948966\n"
                                       "Rz q[1] t\nMS q[0] q[1] 0 -1.5707963267948966\nmeasure_all\n"))[0],
                                   {{"t", lang::LetValue::floating(r.theta)}});
        auto res = run_subcircuit(sc, kExactShots, 0);
        EXPECT_NEAR(res.probabilities[0], r.p00, 1e-12);
        EXPECT_NEAR(res.probabilities[3], r.p11, 1e-12);
        EXPECT_NEAR(res.probabilities[1] + res.probabilities[2], 0.0, 1e-12);
        double zz = res.probabilities[0] - res.probabilities[1] - res.probabilities[2] + res.probabilities[3];
        EXPECT_NEAR(zz, r.zz, 1e-12);
        auto ref = oracle::probabilities(oracle::ansatz_state(r.theta));
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_NEAR(res.probabilities[k], ref[k], 1e-12);
        }
    }
}

TEST(EmulatorRun, EmptySubcircuitAllZeros) {
    lang::Subcircuit sc{0, 2, {}};
    auto r = run_subcircuit(sc, 100, 3);
    EXPECT_EQ(r.counts, (std::vector<std::uint64_t>{100, 0, 0, 0}));
}

TEST(EmulatorRun, BellExact) {
    auto sc = qbatch::testing::numeric_subcircuits(
        parse(qbatch::testing::read_file(qbatch::testing::data_path("examples/bell.jaqal"))))[0];
    auto r = run_subcircuit(sc, kExactShots, 0);
    EXPECT_TRUE(r.counts.empty());
    EXPECT_NEAR(r.probabilities[0], 0.5, 1e-12);
    EXPECT_NEAR(r.probabilities[3], 0.5, 1e-12);
    EXPECT_EQ(r.frequencies(), r.probabilities);
}

TEST(EmulatorRun, SamplingDeterministicAndConsistent) {
    auto sc = qbatch::testing::numeric_subcircuits(
        parse(qbatch::testing::read_file(qbatch::testing::data_path("examples/bell.jaqal"))))[0];
    EXPECT_EQ(run_subcircuit(sc, 1000, 7).counts, run_subcircuit(sc, 1000, 7).counts);
    EXPECT_NE(run_subcircuit(sc, 1000, 7).counts, run_subcircuit(sc, 1000, 8).counts);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto r = run_subcircuit(sc, 100000, seed);
        auto f = r.frequencies();
        double tv = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            tv += std::fabs(f[k] - r.probabilities[k]);
        }
        EXPECT_LT(tv / 2, 0.01) << seed;
    }
}

TEST(EmulatorRun, SampleValidation) {
    EXPECT_QBATCH_ERROR(sample({0.5, 0.5}, -1, 0), ErrorKind::ValidationError);
    EXPECT_QBATCH_ERROR(StateVector(kMaxQubits + 1), ErrorKind::ValidationError);
    EXPECT_QBATCH_ERROR(StateVector(1).apply(rz(3, 0.1)), ErrorKind::QubitOutOfRange);
}

TEST(EmulatorProperty, Unitarity) {
    qbatch::testing::ProgramGen gen(51);
    for (int i = 0; i < 2000; ++i) {
        EXPECT_LT(unitarity_error(random_gate(gen, 3)), 1e-10);
    }
    for (char p : {'I', 'X', 'Y', 'Z'}) {
        EXPECT_LT(unitarity_error(pauli(0, p)), 1e-15);
    }
}

TEST(EmulatorProperty, MatchesDenseOracle) {
    qbatch::testing::ProgramGen gen(52);
    for (int i = 0; i < 300; ++i) {
        int q = gen.uniform(0, 2);
        int b = (q + gen.uniform(1, 2)) % 3;
        double phi = gen.real(-kPi, kPi);
        double phi2 = gen.real(-kPi, kPi);
        double theta = gen.real(-7.0, 7.0);
        EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(rotation(q, phi, theta), 3),
                                         oracle::r_gate(3, q, phi, theta)),
                  1e-10);
        EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(rz(q, theta), 3), oracle::rz_gate(3, q, theta)),
                  1e-10);
        EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(ms(q, b, phi, phi2, theta), 3),
                                         oracle::ms_gate(3, q, b, phi, phi2, theta)),
                  1e-10);
    }
}

TEST(EmulatorProperty, NormPreservedAfterEveryGate) {
    qbatch::testing::ProgramGen gen(53);
    for (int i = 0; i < 100; ++i) {
        int n = gen.uniform(1, 6);
        StateVector psi(n);
        for (int k = 0; k < 40; ++k) {
            psi.apply(random_gate(gen, n));
            ASSERT_LT(std::fabs(psi.norm() - 1.0), 1e-9);
        }
    }
}

TEST(EmulatorProperty, MsSignEquivalence) {
    qbatch::testing::ProgramGen gen(54);
    const auto &lib = qbatch::testing::standard();
    for (int i = 0; i < 300; ++i) {
        double theta = gen.real(0.01, kPi - 0.01);
        // Pi shift on the first ion: (-X) (x) X generator at angle |theta|.
        auto l = pulse::lower(ResolvedGate{"MS", {0, 1}, {0.0, -theta}, {}}, pulse::PhaseFrame(2), lib);
        double phi_a = l.pulse->tones[0].phase;
        double phi_b = l.pulse->tones[2].phase;
        GateUnitary shifted = ms(0, 1, phi_a, phi_b, theta);
        GateUnitary direct = unitary_of(ResolvedGate{"MS", {0, 1}, {0.0, -theta}, {}});
        EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(shifted, 2), oracle::emulator_matrix(direct, 2)),
                  1e-10);
    }
}

TEST(EmulatorProperty, ParallelBlockEquivalence) {
    qbatch::testing::ProgramGen gen(55);
    for (int i = 0; i < 300; ++i) {
        int n = gen.uniform(2, 5);
        std::vector<int> qubits(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            qubits[static_cast<std::size_t>(q)] = q;
        }
        std::shuffle(qubits.begin(), qubits.end(), gen.rng());
        lang::Moment moment;
        std::size_t used = 0;
        while (used < qubits.size()) {
            int q = qubits[used];
            if (used + 1 < qubits.size() && gen.coin()) {
                int b = qubits[used + 1];
                moment.gates.push_back(ResolvedGate{"MS", {q, b}, {gen.real(-3, 3), gen.angle()}, {}});
                used += 2;
            } else if (gen.coin()) {
                moment.gates.push_back(ResolvedGate{"R", {q}, {gen.real(-3, 3), gen.angle()}, {}});
                used += 1;
            } else {
                moment.gates.push_back(ResolvedGate{"Rz", {q}, {gen.angle()}, {}});
                used += 1;
            }
        }
        StateVector seed_state(n);
        for (int q = 0; q < n; ++q) {
            seed_state.apply(rotation(q, gen.real(-3, 3), gen.real(-3, 3)));
        }
        StateVector block = seed_state;
        apply_moment(block, moment);
        for (int perm = 0; perm < 4; ++perm) {
            auto gates = moment.gates;
            std::shuffle(gates.begin(), gates.end(), gen.rng());
            StateVector seq = seed_state;
            for (const auto &g : gates) {
                seq.apply(unitary_of(g));
            }
            double diff = 0.0;
            for (std::size_t k = 0; k < seq.amplitudes().size(); ++k) {
                diff = std::max(diff, std::abs(seq.amplitudes()[k] - block.amplitudes()[k]));
            }
            EXPECT_LT(diff, 1e-10);
        }
    }
}

TEST(EmulatorProperty, RandomCircuitsMatchOracle) {
    qbatch::testing::ProgramGen gen(56);
    for (int i = 0; i < 100; ++i) {
        auto g = gen.program({});
        for (const auto &sc : qbatch::testing::numeric_subcircuits(parse(g.source))) {
            auto res = run_subcircuit(sc, kExactShots, 0);
            auto ref = oracle::probabilities(oracle::final_state(sc));
            ASSERT_EQ(res.probabilities.size(), ref.size());
            for (std::size_t k = 0; k < ref.size(); ++k) {
                EXPECT_NEAR(res.probabilities[k], ref[k], 1e-10);
            }
        }
    }
}

}  // namespace
