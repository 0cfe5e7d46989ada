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

#include "qbatch/pulse/lowering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qbatch/hash.hpp"

namespace qbatch::pulse {

double reduce_phase(double phase) {
    double r = std::fmod(phase, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r -= kTwoPi;
    }
    return r;
}

double wrap_angle(double angle) {
    double r = reduce_phase(angle);
    return r > kPi ? r - kTwoPi : r;
}

std::string_view to_string(SlotField field) {
    switch (field) {
        case SlotField::Phase:
            return "phase";
        case SlotField::Duration:
            return "duration";
        case SlotField::SignPhase:
            return "sign_phase";
        case SlotField::Amplitude:
            return "amplitude";
        case SlotField::WrappedSignPhase:
            return "wrapped_sign_phase";
    }
    return "?";
}

double PulseProgram::duration_us() const {
    double d = 0.0;
    for (const auto &t : tones) {
        d = std::max(d, t.duration_us);
    }
    return d;
}

namespace {

FramePhase affine(const lang::Param &p) {
    FramePhase out;
    if (const auto *d = std::get_if<double>(&p)) {
        out.constant = *d;
    } else {
        out.coefficients[std::get<lang::LetRef>(p).name] = 1.0;
    }
    return out;
}

void add_scaled(FramePhase &into, const FramePhase &x, double scale) {
    into.constant += scale * x.constant;
    for (const auto &[name, c] : x.coefficients) {
        into.coefficients[name] += scale * c;
    }
}

/// Writes the affine phase into tone `index`: constant part into the tone,
/// symbolic part as Phase slots.
void place_phase(PulseProgram &p, std::uint32_t index, const FramePhase &phase) {
    p.tones[index].phase = reduce_phase(phase.constant);
    for (const auto &[name, c] : phase.coefficients) {
        if (c != 0.0) {
            p.slots.push_back(ParameterSlot{index, SlotField::Phase, name, c});
        }
    }
}

const lang::LetRef *symbol(const lang::Param &p) {
    return std::get_if<lang::LetRef>(&p);
}

void expect_operands(const lang::ResolvedGate &g, std::size_t qubits, std::size_t params) {
    if (g.qubits.size() != qubits || g.params.size() != params) {
        throw Error(ErrorKind::ArityMismatch, "gate '" + g.name + "' has the wrong number of operands", g.pos);
    }
}

void check_qubit(const lang::ResolvedGate &g, int q, const PhaseFrame &frame) {
    if (q < 0 || q >= frame.size()) {
        throw Error(ErrorKind::QubitOutOfRange, "gate '" + g.name + "' addresses qubit " + std::to_string(q), g.pos);
    }
}

PulseProgram lower_rotation(const lang::ResolvedGate &g, const GateDefinition &def, const PhaseFrame &frame) {
    expect_operands(g, 1, 2);
    int q = g.qubits[0];
    check_qubit(g, q, frame);
    const lang::Param &theta = g.params[1];
    const lang::LetRef *theta_sym = symbol(theta);
    double theta_v = theta_sym ? 0.0 : std::get<double>(theta);
    if (!theta_sym && theta_v == 0.0) {
        throw Error(ErrorKind::DegenerateGate, "zero-angle rotation '" + g.name + "'", g.pos);
    }
    PulseProgram p;
    p.gate = g.name;
    p.kind = GateKind::Rotation;
    for (std::uint32_t i = 0; i < def.tones.size(); ++i) {
        const ToneTemplate &tmpl = def.tones[i];
        p.tones.push_back(Tone{Channel::individual(q), tmpl.frequency, 0.0, tmpl.amplitude, 0.0});
        FramePhase phase;
        phase.constant = tmpl.phase_offset;
        add_scaled(phase, affine(g.params[0]), 1.0);
        add_scaled(phase, frame[q], -1.0);
        if (!theta_sym) {
            p.tones[i].duration_us = std::fabs(theta_v) / kPi * def.duration_us;
            if (theta_v < 0.0) {
                phase.constant += kPi;
            }
        }
        place_phase(p, i, phase);
        if (theta_sym) {
            p.slots.push_back(ParameterSlot{i, SlotField::Duration, theta_sym->name, def.duration_us / kPi});
            p.slots.push_back(ParameterSlot{i, SlotField::SignPhase, theta_sym->name, 1.0});
        }
    }
    return p;
}

PulseProgram lower_ms(const lang::ResolvedGate &g, const GateDefinition &def, const PhaseFrame &frame) {
    expect_operands(g, 2, 2);
    int a = g.qubits[0];
    int b = g.qubits[1];
    check_qubit(g, a, frame);
    check_qubit(g, b, frame);
    if (a == b) {
        throw Error(ErrorKind::SameQubitMS, "MS gate needs two distinct qubits", g.pos);
    }
    const lang::LetRef *theta_sym = symbol(g.params[1]);
    double wrapped = theta_sym ? 0.0 : wrap_angle(std::get<double>(g.params[1]));
    if (!theta_sym && wrapped == 0.0) {
        throw Error(ErrorKind::DegenerateGate, "zero-angle MS gate", g.pos);
    }
    PulseProgram p;
    p.gate = g.name;
    p.kind = GateKind::MolmerSorensen;
    for (std::uint32_t i = 0; i < def.tones.size(); ++i) {
        const ToneTemplate &tmpl = def.tones[i];
        FramePhase phase;
        phase.constant = tmpl.phase_offset;
        Channel channel = Channel::global_beam();
        if (tmpl.role != ToneRole::Global) {
            int q = tmpl.role == ToneRole::Target0 ? a : b;
            channel = Channel::individual(q);
            add_scaled(phase, affine(g.params[0]), 1.0);
            add_scaled(phase, frame[q], -1.0);
        }
        p.tones.push_back(Tone{channel, tmpl.frequency, 0.0, 0.0, def.duration_us});
        if (!theta_sym) {
            p.tones[i].amplitude = tmpl.amplitude * std::fabs(wrapped) / kPi;
            // Negative angles: XX -> X,-X by a pi shift on the first ion's tones.
            if (wrapped < 0.0 && tmpl.role == ToneRole::Target0) {
                phase.constant += kPi;
            }
        }
        place_phase(p, i, phase);
        if (theta_sym) {
            p.slots.push_back(ParameterSlot{i, SlotField::Amplitude, theta_sym->name, tmpl.amplitude / kPi});
            if (tmpl.role == ToneRole::Target0) {
                p.slots.push_back(ParameterSlot{i, SlotField::WrappedSignPhase, theta_sym->name, 1.0});
            }
        }
    }
    return p;
}

constexpr double kGrid = 1e12;  // 1e-12 absolute tolerance

std::uint64_t quantize(double v) {
    if (std::fabs(v) < 9.0e6) {
        return static_cast<std::uint64_t>(std::llround(v * kGrid));
    }
    return std::bit_cast<std::uint64_t>(v) ^ 0x8000000000000001ULL;
}

std::uint64_t quantize_phase(double phase) {
    static const long long period = std::llround(kTwoPi * kGrid);
    long long q = std::llround(reduce_phase(phase) * kGrid) % period;
    return static_cast<std::uint64_t>(q < 0 ? q + period : q);
}

}  // namespace

Lowered lower(const lang::ResolvedGate &gate, PhaseFrame frame, const GateLibrary &library) {
    const GateDefinition *def = library.find(gate.name);
    if (!def) {
        throw Error(ErrorKind::UnknownGate, "no pulse definition for gate '" + gate.name + "'", gate.pos);
    }
    switch (def->kind) {
        case GateKind::VirtualZ: {
            expect_operands(gate, 1, 1);
            int q = gate.qubits[0];
            check_qubit(gate, q, frame);
            FramePhase &f = frame[q];
            add_scaled(f, affine(gate.params[0]), 1.0);
            f.constant = reduce_phase(f.constant);
            std::erase_if(f.coefficients, [](const auto &kv) { return kv.second == 0.0; });
            return Lowered{std::nullopt, std::move(frame)};
        }
        case GateKind::Rotation: {
            PulseProgram p = lower_rotation(gate, *def, frame);
            return Lowered{std::move(p), std::move(frame)};
        }
        case GateKind::MolmerSorensen: {
            PulseProgram p = lower_ms(gate, *def, frame);
            return Lowered{std::move(p), std::move(frame)};
        }
    }
    throw Error(ErrorKind::UnknownGate, "unsupported gate kind", gate.pos);
}

std::vector<std::uint64_t> canonical_form(const PulseProgram &p) {
    std::vector<std::uint64_t> out;
    out.reserve(3 + 5 * p.tones.size() + 4 * p.slots.size());
    out.push_back(static_cast<std::uint64_t>(p.kind));
    out.push_back(fnv1a(p.gate));
    out.push_back(p.tones.size());
    for (const auto &t : p.tones) {
        out.push_back(t.channel.global ? ~0ULL : static_cast<std::uint64_t>(t.channel.qubit));
        out.push_back(fnv1a(t.frequency));
        out.push_back(quantize_phase(t.phase));
        out.push_back(quantize(t.amplitude));
        out.push_back(quantize(t.duration_us));
    }
    out.push_back(p.slots.size());
    for (const auto &s : p.slots) {
        out.push_back(s.tone);
        out.push_back(static_cast<std::uint64_t>(s.field));
        out.push_back(fnv1a(s.let));
        out.push_back(quantize(s.coefficient));
    }
    return out;
}

ContentKey content_key(const PulseProgram &p) {
    Fnv1a h;
    for (std::uint64_t w : canonical_form(p)) {
        h.add_word(w);
    }
    return ContentKey{h.digest()};
}

std::optional<PulseProgram> resolve_pulse(const PulseProgram &p, const lang::ValueMap &values) {
    PulseProgram out = p;
    out.slots.clear();
    for (const auto &s : p.slots) {
        auto it = values.find(s.let);
        if (it == values.end()) {
            throw Error(ErrorKind::MissingSlotValue, "no value for let '" + s.let + "' in gate '" + p.gate + "'");
        }
        double v = it->second.as_double();
        Tone &t = out.tones.at(s.tone);
        switch (s.field) {
            case SlotField::Phase:
                t.phase += s.coefficient * v;
                break;
            case SlotField::Duration:
                t.duration_us = s.coefficient * std::fabs(v);
                break;
            case SlotField::SignPhase:
                if (v < 0.0) {
                    t.phase += kPi;
                }
                break;
            case SlotField::Amplitude:
                t.amplitude = s.coefficient * std::fabs(wrap_angle(v));
                break;
            case SlotField::WrappedSignPhase:
                if (wrap_angle(v) < 0.0) {
                    t.phase += kPi;
                }
                break;
        }
    }
    for (auto &t : out.tones) {
        t.phase = reduce_phase(t.phase);
        if (t.duration_us == 0.0 || t.amplitude == 0.0) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace qbatch::pulse
