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

#include <functional>
#include <string>
#include <vector>

#include "qbatch/lang/ast.hpp"

namespace qbatch::lang {

inline QubitRef qubit(std::string reg, std::int64_t index) {
    return QubitRef{std::move(reg), index};
}
inline LetRef let_ref(std::string name) {
    return LetRef{std::move(name)};
}
inline ParamRef param(std::string name) {
    return ParamRef{std::move(name)};
}

/// Appends statements to a body. Gate names that match a macro defined on the
/// owning ProgramBuilder become macro calls.
class BodyBuilder {
   public:
    BodyBuilder &gate(std::string name, std::vector<Arg> args = {});
    BodyBuilder &prepare_all();
    BodyBuilder &measure_all();
    BodyBuilder &parallel(std::vector<GateCall> gates);
    BodyBuilder &loop(LoopCount count, const std::function<void(BodyBuilder &)> &fill);

    std::vector<Statement> take() {
        return std::move(body_);
    }

   protected:
    explicit BodyBuilder(const std::vector<Macro> *macros) : macros_(macros) {
    }

    std::vector<Statement> body_;
    const std::vector<Macro> *macros_;
};

/// Programmatic construction of a Program; build() runs full validation.
class ProgramBuilder : public BodyBuilder {
   public:
    explicit ProgramBuilder(SignatureTable gates);
    ProgramBuilder(const ProgramBuilder &) = delete;
    ProgramBuilder &operator=(const ProgramBuilder &) = delete;

    ProgramBuilder &add_register(std::string name, std::int64_t size);
    ProgramBuilder &let(std::string name, LetValue value);
    ProgramBuilder &macro(std::string name, std::vector<std::string> params,
                          const std::function<void(BodyBuilder &)> &fill);

    Program build() const;

   private:
    SignatureTable gates_;
    Program program_;
};

}  // namespace qbatch::lang
