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

#include "qbatch/lang/parser.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

#include "lang/lexer.hpp"
#include "qbatch/lang/transform.hpp"

namespace qbatch::lang {

using detail::Token;
using detail::TokenType;

namespace {

const std::set<std::string, std::less<>> kKeywords = {"register", "let", "macro", "loop", "subcircuit"};

bool is_boundary(std::string_view name) {
    return name == kPrepareAll || name == kMeasureAll;
}

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    }

    Program run() {
        Program program;
        skip_separators();
        while (!check(TokenType::End)) {
            const Token &head = peek();
            if (head.type == TokenType::Identifier && head.text == "register") {
                program.registers.push_back(parse_register());
            } else if (head.type == TokenType::Identifier && head.text == "let") {
                program.lets.push_back(parse_let());
            } else if (head.type == TokenType::Identifier && head.text == "macro") {
                program.macros.push_back(parse_macro());
            } else {
                parse_statement(program.body, {});
            }
            end_of_statement();
            skip_separators();
        }
        classify(program);
        return program;
    }

   private:
    const Token &peek() const {
        return tokens_[pos_];
    }
    bool check(TokenType t) const {
        return peek().type == t;
    }
    const Token &advance() {
        const Token &t = tokens_[pos_];
        if (t.type != TokenType::End) {
            ++pos_;
        }
        return t;
    }
    [[noreturn]] void fail(const std::string &message) const {
        throw Error(ErrorKind::SyntaxError, message, peek().pos);
    }
    const Token &expect(TokenType t, std::string_view what) {
        if (!check(t)) {
            fail("expected " + std::string(what) + " but found " + found());
        }
        return advance();
    }
    std::string found() const {
        const Token &t = peek();
        if (t.type == TokenType::Identifier || t.type == TokenType::Integer || t.type == TokenType::Number) {
            return "'" + t.text + "'";
        }
        return std::string(detail::describe(t.type));
    }
    void skip_separators() {
        while (check(TokenType::Newline) || check(TokenType::Semicolon)) {
            advance();
        }
    }
    void end_of_statement() {
        if (check(TokenType::Newline) || check(TokenType::Semicolon) || check(TokenType::End)) {
            return;
        }
        fail("expected end of statement but found " + found());
    }

    std::string identifier(std::string_view what) {
        const Token &t = expect(TokenType::Identifier, what);
        if (kKeywords.count(t.text)) {
            throw Error(ErrorKind::SyntaxError, "'" + t.text + "' is a reserved word", t.pos);
        }
        return t.text;
    }

    std::int64_t integer(std::string_view what) {
        const Token &t = expect(TokenType::Integer, what);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data() + (t.text[0] == '+' ? 1 : 0), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw Error(ErrorKind::SyntaxError, "integer out of range: " + t.text, t.pos);
        }
        return v;
    }

    static double to_double(const Token &t) {
        char *end = nullptr;
        double v = std::strtod(t.text.c_str(), &end);
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::TypeMismatch, "number is not finite: " + t.text, t.pos);
        }
        return v;
    }

    Register parse_register() {
        SourcePos pos = advance().pos;
        Register reg;
        reg.pos = pos;
        reg.name = identifier("register name");
        expect(TokenType::LBracket, "'['");
        SourcePos size_pos = peek().pos;
        reg.size = integer("register size");
        if (reg.size <= 0) {
            throw Error(ErrorKind::SyntaxError, "register size must be positive", size_pos);
        }
        expect(TokenType::RBracket, "']'");
        return reg;
    }

    LetDecl parse_let() {
        SourcePos pos = advance().pos;
        LetDecl let;
        let.pos = pos;
        let.name = identifier("let name");
        const Token &t = peek();
        if (t.type == TokenType::Integer) {
            let.value = LetValue::integer(integer("value"));
        } else if (t.type == TokenType::Number) {
            let.value = LetValue::floating(to_double(advance()));
        } else {
            fail("expected a number after let name but found " + found());
        }
        return let;
    }

    Macro parse_macro() {
        SourcePos pos = advance().pos;
        Macro macro;
        macro.pos = pos;
        macro.name = identifier("macro name");
        while (check(TokenType::Identifier)) {
            macro.params.push_back(identifier("macro parameter"));
        }
        std::set<std::string, std::less<>> params(macro.params.begin(), macro.params.end());
        if (params.size() != macro.params.size()) {
            throw Error(ErrorKind::DuplicateDefinition, "repeated parameter in macro '" + macro.name + "'", pos);
        }
        macro.body = parse_block(params);
        return macro;
    }

    std::vector<Statement> parse_block(const std::set<std::string, std::less<>> &params) {
        expect(TokenType::LBrace, "'{'");
        std::vector<Statement> body;
        skip_separators();
        while (!check(TokenType::RBrace)) {
            if (check(TokenType::End)) {
                fail("unterminated block");
            }
            parse_statement(body, params);
            if (!check(TokenType::RBrace)) {
                end_of_statement();
            }
            skip_separators();
        }
        advance();
        return body;
    }

    void parse_statement(std::vector<Statement> &out, const std::set<std::string, std::less<>> &params) {
        const Token &head = peek();
        if (head.type == TokenType::LAngle) {
            out.push_back(Statement{parse_parallel(params)});
        } else if (head.type == TokenType::Identifier && head.text == "loop") {
            out.push_back(Statement{parse_loop(params)});
        } else if (head.type == TokenType::Identifier && head.text == "subcircuit") {
            SourcePos pos = advance().pos;
            out.push_back(Statement{GateCall{std::string(kPrepareAll), {}, pos}});
            for (auto &s : parse_block(params)) {
                out.push_back(std::move(s));
            }
            out.push_back(Statement{GateCall{std::string(kMeasureAll), {}, pos}});
        } else if (head.type == TokenType::Identifier) {
            if (kKeywords.count(head.text)) {
                fail("'" + head.text + "' is not allowed here");
            }
            out.push_back(Statement{parse_gate(params)});
        } else {
            fail("expected a statement but found " + found());
        }
    }

    GateCall parse_gate(const std::set<std::string, std::less<>> &params) {
        GateCall gate;
        gate.pos = peek().pos;
        gate.name = identifier("gate name");
        while (true) {
            const Token &t = peek();
            if (t.type == TokenType::Identifier) {
                std::string name = advance().text;
                if (check(TokenType::LBracket)) {
                    advance();
                    std::int64_t index = integer("qubit index");
                    expect(TokenType::RBracket, "']'");
                    gate.args.emplace_back(QubitRef{name, index});
                } else if (params.count(name)) {
                    gate.args.emplace_back(ParamRef{name});
                } else {
                    gate.args.emplace_back(LetRef{name});
                }
            } else if (t.type == TokenType::Integer || t.type == TokenType::Number) {
                gate.args.emplace_back(to_double(advance()));
            } else {
                break;
            }
        }
        return gate;
    }

    ParallelBlock parse_parallel(const std::set<std::string, std::less<>> &params) {
        ParallelBlock block;
        block.pos = advance().pos;
        auto skip = [&] {
            while (check(TokenType::Newline) || check(TokenType::Semicolon) || check(TokenType::Pipe)) {
                advance();
            }
        };
        skip();
        while (!check(TokenType::RAngle)) {
            if (check(TokenType::End)) {
                fail("unterminated parallel block");
            }
            if (!check(TokenType::Identifier)) {
                fail("expected a gate inside parallel block but found " + found());
            }
            block.gates.push_back(parse_gate(params));
            if (!check(TokenType::RAngle) && !check(TokenType::Newline) && !check(TokenType::Semicolon) &&
                !check(TokenType::Pipe)) {
                fail("expected '|' or '>' but found " + found());
            }
            skip();
        }
        advance();
        if (block.gates.empty()) {
            throw Error(ErrorKind::SyntaxError, "empty parallel block", block.pos);
        }
        return block;
    }

    Loop parse_loop(const std::set<std::string, std::less<>> &params) {
        Loop loop;
        loop.pos = advance().pos;
        if (check(TokenType::Integer)) {
            loop.count = integer("loop count");
        } else if (check(TokenType::Identifier)) {
            loop.count = LetRef{identifier("loop count")};
        } else {
            fail("expected a loop count but found " + found());
        }
        loop.body = parse_block(params);
        return loop;
    }

    // Gate statements naming a macro become macro calls.
    static void classify(Program &program) {
        std::set<std::string, std::less<>> macros;
        for (const auto &m : program.macros) {
            macros.insert(m.name);
        }
        std::function<void(std::vector<Statement> &)> walk = [&](std::vector<Statement> &body) {
            for (auto &s : body) {
                if (auto *g = std::get_if<GateCall>(&s.node)) {
                    if (macros.count(g->name)) {
                        s.node = MacroCall{g->name, std::move(g->args), g->pos};
                    }
                } else if (auto *l = std::get_if<Loop>(&s.node)) {
                    walk(l->body);
                }
            }
        };
        walk(program.body);
        for (auto &m : program.macros) {
            walk(m.body);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Validation

class Validator {
   public:
    Validator(const Program &program, const SignatureTable &gates) : program_(program), gates_(gates) {
    }

    void run() {
        check_names();
        check_macro_cycles();
        for (const auto &m : program_.macros) {
            std::set<std::string, std::less<>> params(m.params.begin(), m.params.end());
            check_body(m.body, &params, true);
        }
        check_body(program_.body, nullptr, false);
        // Parameter substitution can only be checked on the expanded form.
        Program expanded = expand(program_);
        check_body(expanded.body, nullptr, false);
    }

   private:
    void check_names() {
        std::set<std::string, std::less<>> seen;
        auto claim = [&](const std::string &name, SourcePos pos) {
            if (gates_.count(name)) {
                throw Error(ErrorKind::DuplicateDefinition, "'" + name + "' is a native gate name", pos);
            }
            if (!seen.insert(name).second) {
                throw Error(ErrorKind::DuplicateDefinition, "'" + name + "' is already defined", pos);
            }
        };
        for (const auto &r : program_.registers) {
            claim(r.name, r.pos);
            if (r.size <= 0) {
                throw Error(ErrorKind::SyntaxError, "register size must be positive", r.pos);
            }
        }
        for (const auto &l : program_.lets) {
            claim(l.name, l.pos);
            if (!l.value.is_integer() && !std::isfinite(l.value.as_double())) {
                throw Error(ErrorKind::TypeMismatch, "let '" + l.name + "' is not finite", l.pos);
            }
        }
        for (const auto &m : program_.macros) {
            claim(m.name, m.pos);
            std::set<std::string, std::less<>> params;
            for (const auto &p : m.params) {
                if (!params.insert(p).second) {
                    throw Error(ErrorKind::DuplicateDefinition, "repeated parameter '" + p + "'", m.pos);
                }
            }
        }
    }

    void check_macro_cycles() {
        std::map<std::string, int, std::less<>> state;  // 1 = visiting, 2 = done
        std::function<void(const Macro &)> visit;
        std::function<void(const std::vector<Statement> &, const Macro &)> scan =
            [&](const std::vector<Statement> &body, const Macro &owner) {
                for (const auto &s : body) {
                    if (const auto *c = std::get_if<MacroCall>(&s.node)) {
                        const Macro *callee = program_.find_macro(c->name);
                        if (!callee) {
                            continue;
                        }
                        if (state[callee->name] == 1) {
                            throw Error(ErrorKind::RecursiveMacro,
                                        "macro '" + owner.name + "' recursively calls '" + callee->name + "'", c->pos);
                        }
                        visit(*callee);
                    } else if (const auto *l = std::get_if<Loop>(&s.node)) {
                        scan(l->body, owner);
                    }
                }
            };
        visit = [&](const Macro &m) {
            if (state[m.name] == 2) {
                return;
            }
            state[m.name] = 1;
            scan(m.body, m);
            state[m.name] = 2;
        };
        for (const auto &m : program_.macros) {
            visit(m);
        }
    }

    void check_arg_ref(const Arg &arg, const std::set<std::string, std::less<>> *params, SourcePos pos) {
        if (const auto *q = std::get_if<QubitRef>(&arg)) {
            const Register *reg = program_.find_register(q->reg);
            if (!reg) {
                throw Error(ErrorKind::UnknownIdentifier, "unknown register '" + q->reg + "'", pos);
            }
            if (q->index < 0 || q->index >= reg->size) {
                throw Error(ErrorKind::QubitOutOfRange,
                            q->reg + "[" + std::to_string(q->index) + "] outside register of size " +
                                std::to_string(reg->size),
                            pos);
            }
        } else if (const auto *l = std::get_if<LetRef>(&arg)) {
            if (!program_.find_let(l->name)) {
                throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + l->name + "'", pos);
            }
        } else if (const auto *p = std::get_if<ParamRef>(&arg)) {
            if (!params || !params->count(p->name)) {
                throw Error(ErrorKind::UnknownIdentifier, "'" + p->name + "' is not a macro parameter", pos);
            }
        }
    }

    void check_gate(const GateCall &g, const std::set<std::string, std::less<>> *params, bool in_macro,
                    bool in_parallel) {
        auto sig = gates_.find(g.name);
        if (sig == gates_.end()) {
            if (program_.find_macro(g.name)) {
                throw Error(in_parallel ? ErrorKind::SyntaxError : ErrorKind::UnknownGate,
                            "macro '" + g.name + "' cannot be used as a native gate here", g.pos);
            }
            throw Error(ErrorKind::UnknownIdentifier, "unknown gate '" + g.name + "'", g.pos);
        }
        if (is_boundary(g.name) && in_macro) {
            throw Error(ErrorKind::SyntaxError, "'" + g.name + "' is not allowed inside a macro", g.pos);
        }
        if (is_boundary(g.name) && in_parallel) {
            throw Error(ErrorKind::SyntaxError, "'" + g.name + "' is not allowed inside a parallel block", g.pos);
        }
        if (g.args.size() != sig->second.args.size()) {
            throw Error(ErrorKind::ArityMismatch,
                        "gate '" + g.name + "' takes " + std::to_string(sig->second.args.size()) + " arguments, got " +
                            std::to_string(g.args.size()),
                        g.pos);
        }
        for (std::size_t i = 0; i < g.args.size(); ++i) {
            const Arg &a = g.args[i];
            check_arg_ref(a, params, g.pos);
            bool is_param = std::holds_alternative<ParamRef>(a);
            if (sig->second.args[i] == ArgKind::Qubit) {
                if (!std::holds_alternative<QubitRef>(a) && !is_param) {
                    throw Error(ErrorKind::TypeMismatch,
                                "argument " + std::to_string(i + 1) + " of '" + g.name + "' must be a qubit", g.pos);
                }
            } else if (std::holds_alternative<QubitRef>(a)) {
                throw Error(ErrorKind::TypeMismatch,
                            "argument " + std::to_string(i + 1) + " of '" + g.name + "' must be a number", g.pos);
            }
        }
    }

    void check_body(const std::vector<Statement> &body, const std::set<std::string, std::less<>> *params,
                    bool in_macro) {
        for (const auto &s : body) {
            std::visit(
                [&](const auto &node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, GateCall>) {
                        check_gate(node, params, in_macro, false);
                    } else if constexpr (std::is_same_v<T, ParallelBlock>) {
                        std::set<std::pair<std::string, std::int64_t>> used;
                        for (const auto &g : node.gates) {
                            check_gate(g, params, in_macro, true);
                            for (const auto &a : g.args) {
                                if (const auto *q = std::get_if<QubitRef>(&a)) {
                                    if (!used.insert({q->reg, q->index}).second) {
                                        throw Error(ErrorKind::SyntaxError,
                                                    "parallel block uses " + q->reg + "[" + std::to_string(q->index) +
                                                        "] more than once",
                                                    g.pos);
                                    }
                                }
                            }
                        }
                    } else if constexpr (std::is_same_v<T, Loop>) {
                        check_loop(node, params, in_macro);
                    } else if constexpr (std::is_same_v<T, MacroCall>) {
                        const Macro *m = program_.find_macro(node.name);
                        if (!m) {
                            throw Error(ErrorKind::UnknownMacro, "unknown macro '" + node.name + "'", node.pos);
                        }
                        if (m->params.size() != node.args.size()) {
                            throw Error(ErrorKind::ArityMismatch,
                                        "macro '" + node.name + "' takes " + std::to_string(m->params.size()) +
                                            " arguments, got " + std::to_string(node.args.size()),
                                        node.pos);
                        }
                        for (const auto &a : node.args) {
                            check_arg_ref(a, params, node.pos);
                        }
                    }
                },
                s.node);
        }
    }

    void check_loop(const Loop &loop, const std::set<std::string, std::less<>> *params, bool in_macro) {
        if (const auto *n = std::get_if<std::int64_t>(&loop.count)) {
            if (*n < 0) {
                throw Error(ErrorKind::SyntaxError, "loop count must be non-negative", loop.pos);
            }
        } else {
            const auto &ref = std::get<LetRef>(loop.count);
            const LetDecl *let = program_.find_let(ref.name);
            if (!let) {
                throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + ref.name + "'", loop.pos);
            }
            if (!let->value.is_integer()) {
                throw Error(ErrorKind::TypeMismatch, "loop count '" + ref.name + "' must be an integer let", loop.pos);
            }
            if (let->value.as_integer() < 0) {
                throw Error(ErrorKind::SyntaxError, "loop count must be non-negative", loop.pos);
            }
        }
        // A loop either stays inside one subcircuit or repeats whole ones.
        int depth = 0;
        bool any = false;
        std::function<void(const std::vector<Statement> &)> scan = [&](const std::vector<Statement> &body) {
            for (const auto &s : body) {
                if (const auto *g = std::get_if<GateCall>(&s.node)) {
                    if (g->name == kPrepareAll) {
                        any = true;
                        if (++depth > 1) {
                            throw Error(ErrorKind::UnbalancedBoundaries, "nested prepare_all inside loop", g->pos);
                        }
                    } else if (g->name == kMeasureAll) {
                        any = true;
                        if (--depth < 0) {
                            throw Error(ErrorKind::UnbalancedBoundaries,
                                        "loop body crosses a subcircuit boundary", g->pos);
                        }
                    }
                } else if (const auto *l = std::get_if<Loop>(&s.node)) {
                    scan(l->body);
                }
            }
        };
        scan(loop.body);
        if (any && depth != 0) {
            throw Error(ErrorKind::UnbalancedBoundaries, "loop body crosses a subcircuit boundary", loop.pos);
        }
        check_body(loop.body, params, in_macro);
    }

    const Program &program_;
    const SignatureTable &gates_;
};

}  // namespace

Program parse(std::string_view source, const SignatureTable &gates) {
    Parser parser(detail::tokenize(source));
    Program program = parser.run();
    if (program.registers.empty() && program.lets.empty() && program.macros.empty() && program.body.empty()) {
        throw Error(ErrorKind::SyntaxError, "empty program", SourcePos{1, 1});
    }
    validate(program, gates);
    return program;
}

void validate(const Program &program, const SignatureTable &gates) {
    Validator(program, gates).run();
}

}  // namespace qbatch::lang
