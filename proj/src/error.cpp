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

#include "qbatch/error.hpp"

namespace qbatch {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError:
            return "SyntaxError";
        case ErrorKind::UnknownIdentifier:
            return "UnknownIdentifier";
        case ErrorKind::DuplicateDefinition:
            return "DuplicateDefinition";
        case ErrorKind::QubitOutOfRange:
            return "QubitOutOfRange";
        case ErrorKind::RecursiveMacro:
            return "RecursiveMacro";
        case ErrorKind::UnknownMacro:
            return "UnknownMacro";
        case ErrorKind::ArityMismatch:
            return "ArityMismatch";
        case ErrorKind::UnknownLetName:
            return "UnknownLetName";
        case ErrorKind::TypeMismatch:
            return "TypeMismatch";
        case ErrorKind::UnbalancedBoundaries:
            return "UnbalancedBoundaries";
        case ErrorKind::UnknownGate:
            return "UnknownGate";
        case ErrorKind::SameQubitMS:
            return "SameQubitMS";
        case ErrorKind::DegenerateGate:
            return "DegenerateGate";
        case ErrorKind::InvalidGateLibrary:
            return "InvalidGateLibrary";
        case ErrorKind::LengthMismatch:
            return "LengthMismatch";
        case ErrorKind::ModeUnsupported:
            return "ModeUnsupported";
        case ErrorKind::StructuralOverride:
            return "StructuralOverride";
        case ErrorKind::MissingSlotValue:
            return "MissingSlotValue";
        case ErrorKind::BufferOverflow:
            return "BufferOverflow";
        case ErrorKind::BackendError:
            return "BackendError";
        case ErrorKind::ValidationError:
            return "ValidationError";
        case ErrorKind::UnknownJobId:
            return "UnknownJobId";
        case ErrorKind::UnsupportedQubitCount:
            return "UnsupportedQubitCount";
        case ErrorKind::InvalidHamiltonian:
            return "InvalidHamiltonian";
        case ErrorKind::IoError:
            return "IoError";
    }
    return "Error";
}

bool is_validation_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BufferOverflow:
        case ErrorKind::BackendError:
        case ErrorKind::IoError:
            return false;
        default:
            return true;
    }
}

namespace {

std::string format_message(ErrorKind kind, const std::string &message, const std::optional<SourcePos> &pos) {
    std::string out(to_string(kind));
    if (pos) {
        out += " at " + std::to_string(pos->line) + ":" + std::to_string(pos->column);
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string &message, std::optional<SourcePos> pos)
    : std::runtime_error(format_message(kind, message, pos)), kind_(kind), pos_(pos), detail_(message) {
}

}  // namespace qbatch
