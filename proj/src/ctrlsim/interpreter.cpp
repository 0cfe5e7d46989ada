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

#include "qbatch/ctrlsim/interpreter.hpp"

#include <algorithm>

#include "qbatch/error.hpp"

namespace qbatch::ctrlsim {
namespace {

[[noreturn]] void malformed(const pulse::PulseProgram &p, const std::string &why) {
    throw Error(ErrorKind::BackendError, "cannot interpret pulse for '" + p.gate + "': " + why);
}

}  // namespace

Operation interpret(const pulse::PulseProgram &p, const pulse::GateLibrary &library) {
    if (p.symbolic()) {
        malformed(p, "unresolved parameter slots");
    }
    const pulse::GateDefinition *def = library.find(p.gate);
    if (!def || def->kind != p.kind || def->tones.size() != p.tones.size() || p.tones.empty()) {
        malformed(p, "does not match the gate library");
    }
    Operation op;
    op.duration_us = p.duration_us();
    if (p.kind == pulse::GateKind::Rotation) {
        const pulse::Tone &t = p.tones[0];
        if (t.channel.global) {
            malformed(p, "rotation on the global beam");
        }
        double phi = t.phase - def->tones[0].phase_offset;
        double theta = t.duration_us / def->duration_us * pulse::kPi;
        op.unitary = emulator::rotation(t.channel.qubit, phi, theta);
        return op;
    }
    if (p.kind != pulse::GateKind::MolmerSorensen) {
        malformed(p, "virtual gates carry no pulse");
    }
    int a = -1;
    int b = -1;
    double phi_a = 0.0;
    double phi_b = 0.0;
    double theta = -1.0;
    for (std::size_t i = 0; i < p.tones.size(); ++i) {
        const pulse::ToneTemplate &tmpl = def->tones[i];
        const pulse::Tone &t = p.tones[i];
        if (tmpl.role == pulse::ToneRole::Global) {
            theta = t.amplitude / tmpl.amplitude * pulse::kPi;
        } else if (tmpl.role == pulse::ToneRole::Target0 && a < 0) {
            a = t.channel.qubit;
            phi_a = t.phase - tmpl.phase_offset;
        } else if (tmpl.role == pulse::ToneRole::Target1 && b < 0) {
            b = t.channel.qubit;
            phi_b = t.phase - tmpl.phase_offset;
        }
    }
    if (a < 0 || b < 0 || a == b || theta < 0.0) {
        malformed(p, "missing MS tones");
    }
    op.unitary = emulator::ms(a, b, phi_a, phi_b, theta);
    op.entangling = true;
    return op;
}

std::vector<Layer> interpret(const batch::ResolvedUnit &unit, const pulse::GateLibrary &library) {
    std::vector<Layer> out;
    out.reserve(unit.moments.size());
    for (const auto &moment : unit.moments) {
        Layer layer;
        for (const auto &p : moment) {
            layer.ops.push_back(interpret(p, library));
            layer.duration_us = std::max(layer.duration_us, layer.ops.back().duration_us);
        }
        out.push_back(std::move(layer));
    }
    return out;
}

}  // namespace qbatch::ctrlsim
