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

#include <cmath>

#include "oracle/dense.hpp"
#include "qbatch/ctrlsim/interpreter.hpp"
#include "qbatch/pulse/gate_library.hpp"
#include "qbatch/pulse/lowering.hpp"
#include "support.hpp"

namespace {

using namespace qbatch;
using namespace qbatch::pulse;
using lang::LetRef;
using lang::ResolvedGate;
using qbatch::testing::standard;

ResolvedGate R(int q, double phi, double theta) {
    return ResolvedGate{"R", {q}, {phi, theta}, {}};
}
ResolvedGate Rz(int q, double theta) {
    return ResolvedGate{"Rz", {q}, {theta}, {}};
}
ResolvedGate MS(int a, int b, double phi, double theta) {
    return ResolvedGate{"MS", {a, b}, {phi, theta}, {}};
}

double frame_distance(double a, double b) {
    return std::fabs(wrap_angle(a - b));
}

/// Full-space unitary realized by lowering `gates` and interpreting the
/// pulses, with the residual virtual frame applied at the end.
oracle::Mat pulse_circuit(int n, const std::vector<ResolvedGate> &gates) {
    PhaseFrame frame(n);
    oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
    for (const auto &g : gates) {
        Lowered l = lower(g, frame, standard());
        frame = l.frame;
        if (l.pulse) {
            auto op = ctrlsim::interpret(*l.pulse, standard());
            u = oracle::emulator_matrix(op.unitary, n) * u;
        }
    }
    for (int q = 0; q < n; ++q) {
        u = oracle::rz_gate(n, q, frame[q].constant) * u;
    }
    return u;
}

oracle::Mat gate_circuit(int n, const std::vector<ResolvedGate> &gates) {
    oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
    for (const auto &g : gates) {
        u = oracle::gate(n, g) * u;
    }
    return u;
}

TEST(PulseLibrary, StandardDefinitions) {
    const auto *r = standard().find("R");
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->kind, GateKind::Rotation);
    EXPECT_DOUBLE_EQ(r->duration_us, 10.0);
    const auto *ms = standard().find("MS");
    ASSERT_NE(ms, nullptr);
    EXPECT_DOUBLE_EQ(ms->duration_us, 200.0);
    EXPECT_EQ(ms->tones.size(), 5u);
    EXPECT_EQ(standard().find("Rz")->kind, GateKind::VirtualZ);
    EXPECT_EQ(standard().find("CNOT"), nullptr);
    auto sig = standard().signatures();
    EXPECT_EQ(sig.at("MS").args.size(), 4u);
    EXPECT_TRUE(sig.count("prepare_all"));
}

TEST(PulseLibrary, ShippedFileMatchesStandard) {
    auto lib = GateLibrary::load(qbatch::testing::data_path("standard.gpf"));
    EXPECT_EQ(lib.to_text(), standard().to_text());
    EXPECT_EQ(GateLibrary::parse(standard().to_text()).to_text(), standard().to_text());
}

TEST(PulseLibrary, MalformedTextRejected) {
    EXPECT_QBATCH_ERROR(GateLibrary::parse("gate X wobble 10\nend\n"), ErrorKind::InvalidGateLibrary);
    EXPECT_QBATCH_ERROR(GateLibrary::parse("gate X rotation 10\n  tone target a 0 1\n"),
                        ErrorKind::InvalidGateLibrary);
    EXPECT_QBATCH_ERROR(GateLibrary::parse("gate X rotation -1\n  tone target a 0 1\nend\n"),
                        ErrorKind::InvalidGateLibrary);
    EXPECT_QBATCH_ERROR(GateLibrary::load("/nonexistent/lib.gpf"), ErrorKind::IoError);
}

TEST(PulseLower, RotationTones) {
    Lowered l = lower(R(1, 0.25, kPi / 2), PhaseFrame(2), standard());
    ASSERT_TRUE(l.pulse);
    ASSERT_EQ(l.pulse->tones.size(), 2u);
    for (const auto &t : l.pulse->tones) {
        EXPECT_EQ(t.channel, Channel::individual(1));
        EXPECT_DOUBLE_EQ(t.duration_us, 5.0);
        EXPECT_DOUBLE_EQ(t.phase, 0.25);
    }
    Lowered neg = lower(R(0, 0.25, -kPi / 2), PhaseFrame(1), standard());
    EXPECT_DOUBLE_EQ(neg.pulse->tones[0].duration_us, 5.0);
    EXPECT_NEAR(neg.pulse->tones[0].phase, 0.25 + kPi, 1e-15);
}

TEST(PulseLower, MsNegativeAngleUsesPhaseShift) {
    Lowered pos = lower(MS(0, 1, 0.0, kPi / 2), PhaseFrame(2), standard());
    Lowered neg = lower(MS(0, 1, 0.0, -kPi / 2), PhaseFrame(2), standard());
    ASSERT_EQ(pos.pulse->tones.size(), neg.pulse->tones.size());
    for (std::size_t i = 0; i < pos.pulse->tones.size(); ++i) {
        EXPECT_DOUBLE_EQ(pos.pulse->tones[i].amplitude, neg.pulse->tones[i].amplitude);
        EXPECT_DOUBLE_EQ(pos.pulse->tones[i].duration_us, 200.0);
    }
    EXPECT_NEAR(neg.pulse->tones[0].phase, kPi, 1e-15);
    EXPECT_NEAR(neg.pulse->tones[1].phase, kPi, 1e-15);
    EXPECT_DOUBLE_EQ(neg.pulse->tones[2].phase, 0.0);
    EXPECT_TRUE(neg.pulse->tones[4].channel.global);
}

TEST(PulseLower, VirtualZUpdatesFrameOnly) {
    Lowered l = lower(Rz(0, 0.7), PhaseFrame(1), standard());
    EXPECT_TRUE(l.virtual_update());
    EXPECT_DOUBLE_EQ(l.frame[0].constant, 0.7);
    Lowered after = lower(R(0, 1.0, kPi), l.frame, standard());
    EXPECT_NEAR(after.pulse->tones[0].phase, 0.3, 1e-15);
}

TEST(PulseLower, Errors) {
    EXPECT_QBATCH_ERROR(lower(R(0, 0.1, 0.0), PhaseFrame(1), standard()), ErrorKind::DegenerateGate);
    EXPECT_QBATCH_ERROR(lower(MS(0, 1, 0.1, 0.0), PhaseFrame(2), standard()), ErrorKind::DegenerateGate);
    EXPECT_QBATCH_ERROR(lower(MS(0, 1, 0.1, 2 * kPi), PhaseFrame(2), standard()), ErrorKind::DegenerateGate);
    EXPECT_QBATCH_ERROR(lower(MS(1, 1, 0.1, 0.5), PhaseFrame(2), standard()), ErrorKind::SameQubitMS);
    EXPECT_QBATCH_ERROR(lower(ResolvedGate{"CNOT", {0, 1}, {}, {}}, PhaseFrame(2), standard()),
                        ErrorKind::UnknownGate);
}

TEST(PulseLower, SymbolicSlots) {
    ResolvedGate g{"R", {0}, {0.0, LetRef{"t"}}, {}};
    Lowered l = lower(g, PhaseFrame(1), standard());
    ASSERT_TRUE(l.pulse->symbolic());
    auto fixed = lower(R(0, 0.0, -1.2), PhaseFrame(1), standard());
    auto resolved = resolve_pulse(*l.pulse, {{"t", lang::LetValue::floating(-1.2)}});
    ASSERT_TRUE(resolved);
    ASSERT_EQ(resolved->tones.size(), fixed.pulse->tones.size());
    for (std::size_t i = 0; i < resolved->tones.size(); ++i) {
        EXPECT_NEAR(resolved->tones[i].duration_us, fixed.pulse->tones[i].duration_us, 1e-12);
        EXPECT_NEAR(resolved->tones[i].phase, fixed.pulse->tones[i].phase, 1e-12);
    }
    EXPECT_EQ(content_key(*resolved), content_key(*fixed.pulse));
    EXPECT_FALSE(resolve_pulse(*l.pulse, {{"t", lang::LetValue::floating(0.0)}}));
    EXPECT_QBATCH_ERROR(resolve_pulse(*l.pulse, {}), ErrorKind::MissingSlotValue);
}

TEST(PulseLower, SymbolicFrameBecomesPhaseSlot) {
    Lowered z = lower(ResolvedGate{"Rz", {0}, {LetRef{"a"}}, {}}, PhaseFrame(1), standard());
    EXPECT_DOUBLE_EQ(z.frame[0].coefficients.at("a"), 1.0);
    Lowered r = lower(R(0, 0.5, 1.0), z.frame, standard());
    auto resolved = resolve_pulse(*r.pulse, {{"a", lang::LetValue::floating(0.2)}});
    EXPECT_NEAR(resolved->tones[0].phase, 0.3, 1e-12);
}

TEST(PulseKey, DedupTolerance) {
    auto base = *lower(R(0, 0.5, 1.0), PhaseFrame(1), standard()).pulse;
    auto same = base;
    same.tones[0].phase += 1e-14;
    auto shifted = base;
    shifted.tones[0].phase += kTwoPi;
    shifted.tones[0].phase = reduce_phase(shifted.tones[0].phase);
    auto other = base;
    other.tones[0].phase += 1e-9;
    EXPECT_EQ(content_key(same), content_key(base));
    EXPECT_EQ(canonical_form(same), canonical_form(base));
    EXPECT_EQ(content_key(shifted), content_key(base));
    EXPECT_NE(canonical_form(other), canonical_form(base));
    auto ms = *lower(MS(0, 1, 0.5, 1.0), PhaseFrame(2), standard()).pulse;
    EXPECT_NE(canonical_form(ms), canonical_form(base));
}

TEST(PulseProperty, FrameLinearity) {
    qbatch::testing::ProgramGen gen(21);
    for (int i = 0; i < 500; ++i) {
        double a = gen.real(-10.0, 10.0);
        double b = gen.real(-10.0, 10.0);
        PhaseFrame start(2);
        start[1].constant = gen.real(-3.0, 3.0);
        PhaseFrame two = lower(Rz(1, b), lower(Rz(1, a), start, standard()).frame, standard()).frame;
        PhaseFrame one = lower(Rz(1, a + b), start, standard()).frame;
        EXPECT_LT(frame_distance(two[1].constant, one[1].constant), 1e-12);
        EXPECT_EQ(two[0], one[0]);
    }
}

TEST(PulseProperty, MsSignIdentity) {
    qbatch::testing::ProgramGen gen(22);
    for (int i = 0; i < 200; ++i) {
        double theta = -gen.real(0.01, kPi - 0.01);
        auto l = lower(MS(0, 1, 0.0, theta), PhaseFrame(2), standard());
        auto op = ctrlsim::interpret(*l.pulse, standard());
        oracle::Mat expected = oracle::ms_gate(2, 0, 1, 0.0, 0.0, theta);
        EXPECT_LT(oracle::phase_distance(oracle::emulator_matrix(op.unitary, 2), expected), 1e-10);
    }
}

TEST(PulseProperty, PhaseFrameOnBasisStates) {
    qbatch::testing::ProgramGen gen(23);
    for (int i = 0; i < 200; ++i) {
        double theta = gen.real(-kPi, kPi);
        double phi = gen.real(-kPi, kPi);
        oracle::Mat lhs = gate_circuit(1, {Rz(0, theta), R(0, phi, kPi)});
        oracle::Mat rhs = gate_circuit(1, {R(0, phi + theta, kPi), Rz(0, theta)});
        for (int basis = 0; basis < 2; ++basis) {
            auto pl = oracle::probabilities(lhs.col(basis));
            auto pr = oracle::probabilities(rhs.col(basis));
            for (int k = 0; k < 2; ++k) {
                EXPECT_NEAR(pl[static_cast<std::size_t>(k)], pr[static_cast<std::size_t>(k)], 1e-10);
            }
        }
    }
}

TEST(PulseProperty, FramedPulsesReproduceGateUnitaries) {
    qbatch::testing::ProgramGen gen(24);
    for (int i = 0; i < 200; ++i) {
        int n = gen.uniform(1, 3);
        std::vector<ResolvedGate> gates;
        int count = gen.uniform(1, 8);
        for (int k = 0; k < count; ++k) {
            int kind = gen.uniform(0, n >= 2 ? 2 : 1);
            int q = gen.uniform(0, n - 1);
            if (kind == 0) {
                gates.push_back(R(q, gen.real(-kPi, kPi), gen.angle()));
            } else if (kind == 1) {
                gates.push_back(Rz(q, gen.real(-kPi, kPi)));
            } else {
                int b = (q + gen.uniform(1, n - 1)) % n;
                gates.push_back(MS(q, b, gen.real(-kPi, kPi), gen.angle()));
            }
        }
        EXPECT_LT(oracle::phase_distance(pulse_circuit(n, gates), gate_circuit(n, gates)), 1e-10);
    }
}

}  // namespace
