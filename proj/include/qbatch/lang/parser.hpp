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

#include <string>
#include <string_view>
#include <vector>

#include "qbatch/lang/ast.hpp"

namespace qbatch::lang {

/// Parses and validates Jaqal source. Throws qbatch::Error.
Program parse(std::string_view source, const SignatureTable &gates);

/// Checks every program invariant against `gates`: name uniqueness, identifier
/// resolution, native gate arity, qubit bounds, disjoint parallel blocks,
/// boundary-free macro bodies. Performs a trial expansion.
void validate(const Program &program, const SignatureTable &gates);

/// Renders a program as source that parses back to an equal Program.
std::string to_source(const Program &program);

}  // namespace qbatch::lang
