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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbatch/lang/ast.hpp"
#include "qbatch/pulse/gate_library.hpp"

namespace qbatch::pulse {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduces an angle to [0, 2pi).
double reduce_phase(double phase);
/// Reduces an angle to (-pi, pi].
double wrap_angle(double angle);

struct Channel {
    bool global = false;
    int qubit = 0;  // meaningful only for individual channels

    static Channel individual(int q) {
        return Channel{false, q};
    }
    static Channel global_beam() {
        return Channel{true, 0};
    }
    friend bool operator==(const Channel &, const Channel &) = default;
};

struct Tone {
    Channel channel;
    std::string frequency;
    double phase = 0.0;  // radians in [0, 2pi)
    double amplitude = 0.0;
    double duration_us = 0.0;
    friend bool operator==(const Tone &, const Tone &) = default;
};

/// How a let value rewrites one tone field at resolution time.
enum class SlotField : std::uint8_t {
    Phase = 1,             // phase += coefficient * v
    Duration = 2,          // duration = coefficient * |v|
    SignPhase = 3,         // phase += pi if v < 0
    Amplitude = 4,         // amplitude = coefficient * |wrap(v)|
    WrappedSignPhase = 5,  // phase += pi if wrap(v) < 0
};

std::string_view to_string(SlotField field);

struct ParameterSlot {
    std::uint32_t tone = 0;
    SlotField field = SlotField::Phase;
    std::string let;
    double coefficient = 0.0;
    friend bool operator==(const ParameterSlot &, const ParameterSlot &) = default;
};

struct PulseProgram {
    std::string gate;
    GateKind kind = GateKind::Rotation;
    std::vector<Tone> tones;
    std::vector<ParameterSlot> slots;

    bool symbolic() const {
        return !slots.empty();
    }
    double duration_us() const;
    friend bool operator==(const PulseProgram &, const PulseProgram &) = default;
};

/// Affine phase c + sum_k a_k * let_k accumulated by virtual Rz gates.
struct FramePhase {
    double constant = 0.0;
    std::map<std::string, double, std::less<>> coefficients;
    friend bool operator==(const FramePhase &, const FramePhase &) = default;
};

/// Per-qubit virtual phase frames; all zero after prepare_all.
class PhaseFrame {
   public:
    explicit PhaseFrame(int num_qubits = 0) : phases_(static_cast<std::size_t>(num_qubits)) {
    }
    void reset() {
        for (auto &p : phases_) {
            p = FramePhase{};
        }
    }
    int size() const {
        return static_cast<int>(phases_.size());
    }
    const FramePhase &operator[](int q) const {
        return phases_.at(static_cast<std::size_t>(q));
    }
    FramePhase &operator[](int q) {
        return phases_.at(static_cast<std::size_t>(q));
    }
    friend bool operator==(const PhaseFrame &, const PhaseFrame &) = default;

   private:
    std::vector<FramePhase> phases_;
};

struct Lowered {
    std::optional<PulseProgram> pulse;  // empty for a virtual update
    PhaseFrame frame;

    bool virtual_update() const {
        return !pulse.has_value();
    }
};

/// Lowers one resolved native gate. Throws UnknownGate, SameQubitMS,
/// DegenerateGate.
Lowered lower(const lang::ResolvedGate &gate, PhaseFrame frame, const GateLibrary &library);

/// Content-addressed key of a pulse program: floats are compared on a 1e-12
/// grid, so keys are equal iff the quantized canonical forms are equal.
struct ContentKey {
    std::uint64_t hash = 0;
    friend bool operator==(const ContentKey &, const ContentKey &) = default;
    friend auto operator<=>(const ContentKey &, const ContentKey &) = default;
};

/// Canonical quantized encoding that content keys hash.
std::vector<std::uint64_t> canonical_form(const PulseProgram &p);
ContentKey content_key(const PulseProgram &p);

/// Replaces all slots of `p` with values from `values`. Returns nullopt when
/// the resolved pulse has zero duration or amplitude (an identity to elide).
/// Throws MissingSlotValue.
std::optional<PulseProgram> resolve_pulse(const PulseProgram &p, const lang::ValueMap &values);

}  // namespace qbatch::pulse
