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

#include "qbatch/batch/overrides.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qbatch/error.hpp"

namespace qbatch::batch {
namespace {

lang::LetValue number(const nlohmann::json &j, const std::string &name) {
    if (j.is_number_integer()) {
        return lang::LetValue::integer(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) {
            throw Error(ErrorKind::ValidationError, "override '" + name + "' is not finite");
        }
        return lang::LetValue::floating(d);
    }
    throw Error(ErrorKind::ValidationError, "override '" + name + "' must be a number or a flat array of numbers");
}

nlohmann::json value_json(const lang::LetValue &v) {
    if (v.is_integer()) {
        return v.as_integer();
    }
    return v.as_double();
}

void check_value(const lang::LetDecl &let, const lang::LetValue &v) {
    if (!let.value.is_integer() || v.is_integer()) {
        return;
    }
    double d = v.as_double();
    if (d != std::floor(d)) {
        throw Error(ErrorKind::TypeMismatch, "integer let '" + let.name + "' given non-integral override");
    }
}

}  // namespace

void OverrideSet::set(const std::string &name, lang::LetValue value) {
    entries[name] = value;
}

void OverrideSet::set(const std::string &name, std::vector<lang::LetValue> values) {
    entries[name] = std::move(values);
}

std::size_t OverrideSet::run_count() const {
    for (const auto &[name, e] : entries) {
        if (const auto *a = std::get_if<std::vector<lang::LetValue>>(&e)) {
            return a->size();
        }
    }
    return 1;
}

lang::ValueMap OverrideSet::row(std::size_t i) const {
    lang::ValueMap out;
    for (const auto &[name, e] : entries) {
        if (const auto *a = std::get_if<std::vector<lang::LetValue>>(&e)) {
            out.emplace(name, a->at(i));
        } else {
            out.emplace(name, std::get<lang::LetValue>(e));
        }
    }
    return out;
}

OverrideSet OverrideSet::from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ValidationError, "overrides must be a JSON object");
    }
    OverrideSet out;
    for (const auto &[name, v] : j.items()) {
        if (v.is_array()) {
            std::vector<lang::LetValue> values;
            for (const auto &x : v) {
                if (x.is_array()) {
                    throw Error(ErrorKind::ValidationError, "override '" + name + "' is a nested array");
                }
                values.push_back(number(x, name));
            }
            out.set(name, std::move(values));
        } else {
            out.set(name, number(v, name));
        }
    }
    return out;
}

OverrideSet OverrideSet::parse(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::ValidationError, std::string("overrides are not valid JSON: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json OverrideSet::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[name, e] : entries) {
        if (const auto *a = std::get_if<std::vector<lang::LetValue>>(&e)) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto &v : *a) {
                arr.push_back(value_json(v));
            }
            j[name] = std::move(arr);
        } else {
            j[name] = value_json(std::get<lang::LetValue>(e));
        }
    }
    return j;
}

std::size_t validate(const OverrideSet &ov, const lang::Program &program) {
    auto structural = program.structural_lets();
    std::optional<std::pair<std::string, std::size_t>> length;
    for (const auto &[name, e] : ov.entries) {
        const lang::LetDecl *let = program.find_let(name);
        if (!let) {
            throw Error(ErrorKind::UnknownLetName, "override for undeclared let '" + name + "'");
        }
        if (std::find(structural.begin(), structural.end(), name) != structural.end()) {
            throw Error(ErrorKind::StructuralOverride, "let '" + name + "' is a loop count and cannot be overridden");
        }
        if (const auto *a = std::get_if<std::vector<lang::LetValue>>(&e)) {
            if (a->empty()) {
                throw Error(ErrorKind::LengthMismatch, "override array '" + name + "' is empty");
            }
            if (length && length->second != a->size()) {
                throw Error(ErrorKind::LengthMismatch, "override arrays '" + length->first + "' (" +
                                                           std::to_string(length->second) + ") and '" + name +
                                                           "' (" + std::to_string(a->size()) + ") differ in length");
            }
            length = std::pair{name, a->size()};
            for (const auto &v : *a) {
                check_value(*let, v);
            }
        } else {
            check_value(*let, std::get<lang::LetValue>(e));
        }
    }
    return length ? length->second : 1;
}

}  // namespace qbatch::batch
