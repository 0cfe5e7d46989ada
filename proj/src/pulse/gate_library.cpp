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

#include "qbatch/pulse/gate_library.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qbatch/error.hpp"

namespace qbatch::pulse {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Rotation:
            return "rotation";
        case GateKind::VirtualZ:
            return "virtual_z";
        case GateKind::MolmerSorensen:
            return "ms";
    }
    return "?";
}

namespace {

std::string_view role_name(ToneRole role) {
    switch (role) {
        case ToneRole::Target:
            return "target";
        case ToneRole::Target0:
            return "target0";
        case ToneRole::Target1:
            return "target1";
        case ToneRole::Global:
            return "global";
    }
    return "?";
}

[[noreturn]] void bad(int line, const std::string &message) {
    throw Error(ErrorKind::InvalidGateLibrary, message, SourcePos{line, 1});
}

double parse_number(const std::string &word, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(word, &used);
    } catch (const std::exception &) {
        bad(line, "expected a number, got '" + word + "'");
    }
    if (used != word.size() || !std::isfinite(v)) {
        bad(line, "expected a number, got '" + word + "'");
    }
    return v;
}

void check_definition(const GateDefinition &g, int line) {
    auto count = [&](ToneRole r) {
        int n = 0;
        for (const auto &t : g.tones) {
            n += t.role == r;
        }
        return n;
    };
    for (const auto &t : g.tones) {
        if (!(t.amplitude > 0.0 && t.amplitude <= 1.0)) {
            bad(line, "gate '" + g.name + "': tone amplitude must be in (0, 1]");
        }
    }
    switch (g.kind) {
        case GateKind::Rotation:
            if (g.tones.size() != 2 || count(ToneRole::Target) != 2) {
                bad(line, "rotation gate '" + g.name + "' needs exactly two target tones");
            }
            if (!(g.duration_us > 0.0)) {
                bad(line, "rotation gate '" + g.name + "' needs a positive pi-time");
            }
            break;
        case GateKind::VirtualZ:
            if (!g.tones.empty()) {
                bad(line, "virtual_z gate '" + g.name + "' cannot have tones");
            }
            break;
        case GateKind::MolmerSorensen: {
            int t0 = count(ToneRole::Target0);
            int t1 = count(ToneRole::Target1);
            if (t0 < 1 || t0 > 2 || t1 < 1 || t1 > 2 || count(ToneRole::Global) != 1 || count(ToneRole::Target) != 0) {
                bad(line, "ms gate '" + g.name + "' needs 1-2 tones per target and exactly one global tone");
            }
            if (!(g.duration_us > 0.0)) {
                bad(line, "ms gate '" + g.name + "' needs a positive duration");
            }
            break;
        }
    }
}

}  // namespace

GateLibrary GateLibrary::standard() {
    return parse(R"(# Default native gate definitions.
gate R rotation 10
  tone target raman_a 0 1
  tone target raman_b 0 1
end
gate Rz virtual_z
end
gate MS ms 200
  tone target0 red_sideband 0 1
  tone target0 blue_sideband 0 1
  tone target1 red_sideband 0 1
  tone target1 blue_sideband 0 1
  tone global carrier 0 1
end
)");
}

GateLibrary GateLibrary::parse(std::string_view text) {
    GateLibrary lib;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    std::optional<GateDefinition> open;
    int open_line = 0;
    std::set<std::string, std::less<>> names;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.resize(hash);
        }
        std::istringstream words(raw);
        std::vector<std::string> w;
        for (std::string s; words >> s;) {
            w.push_back(s);
        }
        if (w.empty()) {
            continue;
        }
        if (w[0] == "gate") {
            if (open) {
                bad(line, "missing 'end' for gate '" + open->name + "'");
            }
            if (w.size() < 3 || w.size() > 4) {
                bad(line, "expected: gate <name> <kind> [duration_us]");
            }
            GateDefinition g;
            g.name = w[1];
            if (g.name == lang::kPrepareAll || g.name == lang::kMeasureAll) {
                bad(line, "'" + g.name + "' is built in");
            }
            if (!names.insert(g.name).second) {
                bad(line, "gate '" + g.name + "' defined twice");
            }
            if (w[2] == "rotation") {
                g.kind = GateKind::Rotation;
            } else if (w[2] == "virtual_z") {
                g.kind = GateKind::VirtualZ;
            } else if (w[2] == "ms") {
                g.kind = GateKind::MolmerSorensen;
            } else {
                bad(line, "unknown gate kind '" + w[2] + "'");
            }
            if (w.size() == 4) {
                g.duration_us = parse_number(w[3], line);
            }
            open = std::move(g);
            open_line = line;
        } else if (w[0] == "tone") {
            if (!open) {
                bad(line, "'tone' outside a gate definition");
            }
            if (w.size() != 5) {
                bad(line, "expected: tone <role> <frequency> <phase-offset> <amplitude>");
            }
            ToneTemplate t;
            if (w[1] == "target") {
                t.role = ToneRole::Target;
            } else if (w[1] == "target0") {
                t.role = ToneRole::Target0;
            } else if (w[1] == "target1") {
                t.role = ToneRole::Target1;
            } else if (w[1] == "global") {
                t.role = ToneRole::Global;
            } else {
                bad(line, "unknown tone role '" + w[1] + "'");
            }
            t.frequency = w[2];
            t.phase_offset = parse_number(w[3], line);
            t.amplitude = parse_number(w[4], line);
            open->tones.push_back(std::move(t));
        } else if (w[0] == "end") {
            if (!open || w.size() != 1) {
                bad(line, "unexpected 'end'");
            }
            check_definition(*open, open_line);
            lib.gates_.push_back(std::move(*open));
            open.reset();
        } else {
            bad(line, "unknown directive '" + w[0] + "'");
        }
    }
    if (open) {
        bad(open_line, "missing 'end' for gate '" + open->name + "'");
    }
    return lib;
}

GateLibrary GateLibrary::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read gate library " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const GateDefinition *GateLibrary::find(std::string_view name) const {
    for (const auto &g : gates_) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

lang::SignatureTable GateLibrary::signatures() const {
    using lang::ArgKind;
    lang::SignatureTable table;
    table.emplace(std::string(lang::kPrepareAll), lang::GateSignature{});
    table.emplace(std::string(lang::kMeasureAll), lang::GateSignature{});
    for (const auto &g : gates_) {
        switch (g.kind) {
            case GateKind::Rotation:
                table.emplace(g.name, lang::GateSignature{{ArgKind::Qubit, ArgKind::Angle, ArgKind::Angle}});
                break;
            case GateKind::VirtualZ:
                table.emplace(g.name, lang::GateSignature{{ArgKind::Qubit, ArgKind::Angle}});
                break;
            case GateKind::MolmerSorensen:
                table.emplace(g.name,
                              lang::GateSignature{{ArgKind::Qubit, ArgKind::Qubit, ArgKind::Angle, ArgKind::Angle}});
                break;
        }
    }
    return table;
}

std::string GateLibrary::to_text() const {
    std::ostringstream out;
    char buf[64];
    for (const auto &g : gates_) {
        out << "gate " << g.name << " " << to_string(g.kind);
        if (g.kind != GateKind::VirtualZ) {
            std::snprintf(buf, sizeof(buf), "%.17g", g.duration_us);
            out << " " << buf;
        }
        out << "\n";
        for (const auto &t : g.tones) {
            out << "  tone " << role_name(t.role) << " " << t.frequency;
            std::snprintf(buf, sizeof(buf), " %.17g %.17g", t.phase_offset, t.amplitude);
            out << buf << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

}  // namespace qbatch::pulse
