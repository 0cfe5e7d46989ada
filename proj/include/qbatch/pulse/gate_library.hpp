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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qbatch/lang/ast.hpp"

namespace qbatch::pulse {

enum class GateKind : std::uint8_t {
    Rotation = 1,        // equatorial single-qubit rotation R(phi, theta)
    VirtualZ = 2,        // frame update only
    MolmerSorensen = 3,  // MS(phi, theta)
};

std::string_view to_string(GateKind kind);

/// Which beam a template tone drives, relative to the gate's qubit operands.
enum class ToneRole : std::uint8_t { Target, Target0, Target1, Global };

struct ToneTemplate {
    ToneRole role = ToneRole::Target;
    std::string frequency;  // symbolic label, e.g. "red_sideband"
    double phase_offset = 0.0;
    double amplitude = 1.0;
};

struct GateDefinition {
    std::string name;
    GateKind kind = GateKind::Rotation;
    // Rotation: duration of a pi rotation. MS: fixed gate duration.
    double duration_us = 0.0;
    std::vector<ToneTemplate> tones;
};

/// Declarative gate-pulse definitions (the "standard library" of native gates).
///
/// Text format, one directive per line, `#` starts a comment:
///
///     gate <name> <rotation|virtual_z|ms> [duration_us]
///       tone <target|target0|target1|global> <frequency-label> <phase-offset> <amplitude>
///     end
class GateLibrary {
   public:
    /// Built-in definitions of R, Rz and MS (R pi-time 10 us, MS 200 us).
    static GateLibrary standard();
    static GateLibrary parse(std::string_view text);
    static GateLibrary load(const std::filesystem::path &path);

    const GateDefinition *find(std::string_view name) const;
    const std::vector<GateDefinition> &gates() const {
        return gates_;
    }

    /// Arity table for lang validation, including prepare_all/measure_all.
    lang::SignatureTable signatures() const;

    std::string to_text() const;

   private:
    std::vector<GateDefinition> gates_;
};

}  // namespace qbatch::pulse
