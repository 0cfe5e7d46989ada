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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qbatch {

/// 1-based line and column of a token in Jaqal source.
struct SourcePos {
    int line = 0;
    int column = 0;

    // Positions never participate in structural equality of programs.
    friend bool operator==(const SourcePos &, const SourcePos &) {
        return true;
    }
};

enum class ErrorKind {
    // lang
    SyntaxError,
    UnknownIdentifier,
    DuplicateDefinition,
    QubitOutOfRange,
    RecursiveMacro,
    UnknownMacro,
    ArityMismatch,
    UnknownLetName,
    TypeMismatch,
    UnbalancedBoundaries,
    // pulselib
    UnknownGate,
    SameQubitMS,
    DegenerateGate,
    InvalidGateLibrary,
    // batcher
    LengthMismatch,
    ModeUnsupported,
    StructuralOverride,
    MissingSlotValue,
    // ctrlsim
    BufferOverflow,
    BackendError,
    ValidationError,
    UnknownJobId,
    // vqe
    UnsupportedQubitCount,
    InvalidHamiltonian,
    // io
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Returns true for kinds that describe bad input rather than a failure while
/// executing valid input.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message, std::optional<SourcePos> pos = std::nullopt);

    ErrorKind kind() const noexcept {
        return kind_;
    }
    const std::optional<SourcePos> &pos() const noexcept {
        return pos_;
    }
    /// Message without the kind prefix or location.
    const std::string &detail() const noexcept {
        return detail_;
    }

   private:
    ErrorKind kind_;
    std::optional<SourcePos> pos_;
    std::string detail_;
};

}  // namespace qbatch
