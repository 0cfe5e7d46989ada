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

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qbatch/lang/ast.hpp"

namespace qbatch::batch {

/// A scalar applies to every run; arrays are zipped by run index.
using OverrideEntry = std::variant<lang::LetValue, std::vector<lang::LetValue>>;

struct OverrideSet {
    std::map<std::string, OverrideEntry, std::less<>> entries;

    bool empty() const {
        return entries.empty();
    }
    void set(const std::string &name, lang::LetValue value);
    void set(const std::string &name, std::vector<lang::LetValue> values);

    /// L when any array is present, else 1. Does not check lengths.
    std::size_t run_count() const;
    /// Overridden values for run `i` (scalars broadcast).
    lang::ValueMap row(std::size_t i) const;

    /// JSON object of numbers or flat numeric arrays. Integral JSON numbers
    /// become integer values. Throws ValidationError on any other shape.
    static OverrideSet from_json(const nlohmann::json &j);
    static OverrideSet parse(std::string_view text);
    nlohmann::json to_json() const;

    friend bool operator==(const OverrideSet &, const OverrideSet &) = default;
};

/// Checks `ov` against the lets of `program` and returns the run count.
/// Throws LengthMismatch, UnknownLetName, TypeMismatch, StructuralOverride.
std::size_t validate(const OverrideSet &ov, const lang::Program &program);

}  // namespace qbatch::batch
