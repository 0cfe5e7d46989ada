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

#include "lang/lexer.hpp"

#include <cctype>

namespace qbatch::lang::detail {

std::string_view describe(TokenType type) {
    switch (type) {
        case TokenType::Identifier:
            return "identifier";
        case TokenType::Integer:
            return "integer";
        case TokenType::Number:
            return "number";
        case TokenType::LBracket:
            return "'['";
        case TokenType::RBracket:
            return "']'";
        case TokenType::LBrace:
            return "'{'";
        case TokenType::RBrace:
            return "'}'";
        case TokenType::LAngle:
            return "'<'";
        case TokenType::RAngle:
            return "'>'";
        case TokenType::Pipe:
            return "'|'";
        case TokenType::Semicolon:
            return "';'";
        case TokenType::Newline:
            return "end of line";
        case TokenType::End:
            return "end of input";
    }
    return "token";
}

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (i_ < src_.size()) {
            char c = src_[i_];
            SourcePos pos{line_, col_};
            if (c == '\n') {
                out.push_back({TokenType::Newline, "\n", pos});
                advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    advance();
                }
            } else if (is_ident_start(c)) {
                std::size_t start = i_;
                while (i_ < src_.size() && is_ident_char(src_[i_])) {
                    advance();
                }
                out.push_back({TokenType::Identifier, std::string(src_.substr(start, i_ - start)), pos});
            } else if (is_digit(c) || c == '.' || ((c == '-' || c == '+') && (is_digit(peek(1)) || peek(1) == '.'))) {
                out.push_back(number(pos));
            } else {
                TokenType t;
                switch (c) {
                    case '[':
                        t = TokenType::LBracket;
                        break;
                    case ']':
                        t = TokenType::RBracket;
                        break;
                    case '{':
                        t = TokenType::LBrace;
                        break;
                    case '}':
                        t = TokenType::RBrace;
                        break;
                    case '<':
                        t = TokenType::LAngle;
                        break;
                    case '>':
                        t = TokenType::RAngle;
                        break;
                    case '|':
                        t = TokenType::Pipe;
                        break;
                    case ';':
                        t = TokenType::Semicolon;
                        break;
                    default:
                        throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", pos);
                }
                out.push_back({t, std::string(1, c), pos});
                advance();
            }
        }
        out.push_back({TokenType::End, "", SourcePos{line_, col_}});
        return out;
    }

   private:
    char peek(std::size_t ahead) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    Token number(SourcePos pos) {
        std::size_t start = i_;
        bool integral = true;
        if (src_[i_] == '-' || src_[i_] == '+') {
            advance();
        }
        std::size_t digits = 0;
        while (i_ < src_.size() && is_digit(src_[i_])) {
            advance();
            ++digits;
        }
        if (i_ < src_.size() && src_[i_] == '.') {
            integral = false;
            advance();
            while (i_ < src_.size() && is_digit(src_[i_])) {
                advance();
                ++digits;
            }
        }
        if (digits == 0) {
            throw Error(ErrorKind::SyntaxError, "malformed number", pos);
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            integral = false;
            advance();
            if (i_ < src_.size() && (src_[i_] == '-' || src_[i_] == '+')) {
                advance();
            }
            if (i_ >= src_.size() || !is_digit(src_[i_])) {
                throw Error(ErrorKind::SyntaxError, "malformed exponent", pos);
            }
            while (i_ < src_.size() && is_digit(src_[i_])) {
                advance();
            }
        }
        if (i_ < src_.size() && is_ident_char(src_[i_])) {
            throw Error(ErrorKind::SyntaxError, "identifier cannot start with a digit", pos);
        }
        return {integral ? TokenType::Integer : TokenType::Number, std::string(src_.substr(start, i_ - start)), pos};
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    return Lexer(source).run();
}

}  // namespace qbatch::lang::detail
