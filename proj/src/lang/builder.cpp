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

#include "qbatch/lang/builder.hpp"

#include <algorithm>

#include "qbatch/lang/parser.hpp"

namespace qbatch::lang {

namespace {

class NestedBuilder : public BodyBuilder {
   public:
    explicit NestedBuilder(const std::vector<Macro> *macros) : BodyBuilder(macros) {
    }
};

}  // namespace

BodyBuilder &BodyBuilder::gate(std::string name, std::vector<Arg> args) {
    bool is_macro = macros_ && std::any_of(macros_->begin(), macros_->end(),
                                           [&](const Macro &m) { return m.name == name; });
    if (is_macro) {
        body_.push_back(Statement{MacroCall{std::move(name), std::move(args), {}}});
    } else {
        body_.push_back(Statement{GateCall{std::move(name), std::move(args), {}}});
    }
    return *this;
}

BodyBuilder &BodyBuilder::prepare_all() {
    return gate(std::string(kPrepareAll));
}

BodyBuilder &BodyBuilder::measure_all() {
    return gate(std::string(kMeasureAll));
}

BodyBuilder &BodyBuilder::parallel(std::vector<GateCall> gates) {
    body_.push_back(Statement{ParallelBlock{std::move(gates), {}}});
    return *this;
}

BodyBuilder &BodyBuilder::loop(LoopCount count, const std::function<void(BodyBuilder &)> &fill) {
    NestedBuilder inner(macros_);
    fill(inner);
    body_.push_back(Statement{Loop{std::move(count), inner.take(), {}}});
    return *this;
}

ProgramBuilder::ProgramBuilder(SignatureTable gates) : BodyBuilder(nullptr), gates_(std::move(gates)) {
    macros_ = &program_.macros;
}

ProgramBuilder &ProgramBuilder::add_register(std::string name, std::int64_t size) {
    program_.registers.push_back(Register{std::move(name), size, {}});
    return *this;
}

ProgramBuilder &ProgramBuilder::let(std::string name, LetValue value) {
    program_.lets.push_back(LetDecl{std::move(name), value, {}});
    return *this;
}

ProgramBuilder &ProgramBuilder::macro(std::string name, std::vector<std::string> params,
                                      const std::function<void(BodyBuilder &)> &fill) {
    // Register the name first so recursive calls inside `fill` classify as macro calls.
    program_.macros.push_back(Macro{name, params, {}, {}});
    NestedBuilder inner(macros_);
    fill(inner);
    auto it = std::find_if(program_.macros.begin(), program_.macros.end(),
                           [&](const Macro &m) { return m.name == name; });
    it->body = inner.take();
    return *this;
}

Program ProgramBuilder::build() const {
    Program out = program_;
    out.body = body_;
    validate(out, gates_);
    return out;
}

}  // namespace qbatch::lang
