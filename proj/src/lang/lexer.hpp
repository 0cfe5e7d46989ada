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

#include "qbatch/error.hpp"

namespace qbatch::lang::detail {

enum class TokenType {
    Identifier,
    Integer,
    Number,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LAngle,
    RAngle,
    Pipe,
    Semicolon,
    Newline,
    End,
};

struct Token {
    TokenType type;
    std::string text;
    SourcePos pos;
};

std::vector<Token> tokenize(std::string_view source);

std::string_view describe(TokenType type);

}  // namespace qbatch::lang::detail
