// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/parser.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "forge/dsl/lexer.hpp"

namespace forge::dsl {

namespace {

struct ParseError {};

const std::vector<std::string>& expression_starts() {
    static const std::vector<std::string> v{"number", "string", "identifier", "'('",    "'['",
                                            "'{'",    "'-'",    "'not'",      "'true'", "'false'"};
    return v;
}

std::vector<std::string> statement_starts() {
    std::vector<std::string> v{"'let'", "'if'", "'for'", "'skip'"};
    const auto& e = expression_starts();
    v.insert(v.end(), e.begin(), e.end());
    return v;
}

class Parser {
public:
    explicit Parser(std::string_view src) { tokens_ = lex(src, diags_); }

    ParseResult run() {
        ParseResult out;
        bool seen[3] = {false, false, false};
        while (!at(Tok::end)) {
            if (!at(Tok::kw_stage)) {
                error_here("expected 'stage'", {"'stage'"});
                while (!at(Tok::end) && !at(Tok::kw_stage)) advance();
                continue;
            }
            Stage stage;
            if (parse_stage(stage)) {
                const auto k = static_cast<std::size_t>(stage.kind);
                if (seen[k]) {
                    diags_.push_back({stage.pos, fmt::format("duplicate '{}' stage", to_string(stage.kind)), "stage", {}});
                } else {
                    seen[k] = true;
                    out.script.stages.push_back(std::move(stage));
                }
            }
        }
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return a.pos.line != b.pos.line ? a.pos.line < b.pos.line : a.pos.col < b.pos.col;
        });
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxNesting) {
                --p.depth_;
                p.error_here(fmt::format("nesting deeper than {} levels", kMaxNesting), {});
                throw ParseError{};
            }
        }
        ~DepthGuard() { --p.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;
    };

    const Token& cur() const { return tokens_[idx_]; }
    const Token& peek_tok(std::size_t ahead) const {
        return tokens_[std::min(idx_ + ahead, tokens_.size() - 1)];
    }
    bool at(Tok k) const { return cur().kind == k; }
    void advance() {
        if (idx_ + 1 < tokens_.size()) ++idx_;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        advance();
        return true;
    }

    static std::string shown(const Token& t) {
        if (t.kind == Tok::end) return "end of input";
        if (t.kind == Tok::string) return fmt::format("string \"{}\"", t.text);
        return fmt::format("'{}'", t.text);
    }

    void error_here(std::string what, std::vector<std::string> expected) {
        const Token& t = cur();
        diags_.push_back({t.pos, fmt::format("{}, found {}", what, shown(t)), t.text, std::move(expected)});
    }

    [[noreturn]] void fail(std::string what, std::vector<std::string> expected) {
        error_here(std::move(what), std::move(expected));
        throw ParseError{};
    }

    const Token& expect(Tok k) {
        if (!at(k)) fail(fmt::format("expected {}", describe(k)), {std::string(describe(k))});
        const Token& t = cur();
        advance();
        return t;
    }

    // Skips to a plausible statement boundary after an error.
    void sync(std::size_t start) {
        int depth = 0;
        while (!at(Tok::end)) {
            if (at(Tok::kw_stage) && cur().line_start) return;
            if (depth == 0 && idx_ > start && cur().line_start &&
                (at(Tok::kw_let) || at(Tok::kw_if) || at(Tok::kw_for) || at(Tok::kw_skip))) {
                return;
            }
            if (at(Tok::semicolon) && depth == 0) {
                advance();
                return;
            }
            if (at(Tok::rbrace)) {
                if (depth == 0) return;
                --depth;
            } else if (at(Tok::lbrace)) {
                ++depth;
            }
            advance();
        }
    }

    bool parse_stage(Stage& stage) {
        stage.pos = cur().pos;
        advance();  // 'stage'
        std::optional<StageKind> kind;
        if (at(Tok::ident)) kind = parse_stage_kind(cur().text);
        if (!kind) {
            error_here("expected stage kind", {"'scene'", "'entity'", "'pixel'"});
            if (at(Tok::ident)) advance();
        } else {
            stage.kind = *kind;
            advance();
        }
        if (!at(Tok::lbrace)) {
            error_here("expected '{'", {"'{'"});
            while (!at(Tok::end) && !at(Tok::kw_stage)) advance();
            return false;
        }
        advance();
        parse_statements(stage.body);
        if (!accept(Tok::rbrace)) error_here("expected '}'", {"'}'"});
        return kind.has_value();
    }

    // Statements up to (not including) the closing brace.
    void parse_statements(std::vector<Stmt>& out) {
        while (!at(Tok::rbrace) && !at(Tok::end)) {
            if (at(Tok::kw_stage) && cur().line_start) return;
            const std::size_t start = idx_;
            try {
                Stmt s = parse_statement();
                out.push_back(std::move(s));
            } catch (const ParseError&) {
                sync(start);
                if (idx_ == start && !at(Tok::rbrace) && !at(Tok::end) && !at(Tok::kw_stage)) advance();
            }
        }
    }

    void parse_block(std::vector<Stmt>& out) {
        DepthGuard guard(*this);
        expect(Tok::lbrace);
        parse_statements(out);
        expect(Tok::rbrace);
    }

    void end_statement() {
        if (accept(Tok::semicolon)) return;
        if (at(Tok::rbrace) || at(Tok::end) || cur().line_start) return;
        fail("expected ';' or newline", {"';'", "newline"});
    }

    Stmt parse_statement() {
        Stmt s;
        s.pos = cur().pos;
        switch (cur().kind) {
            case Tok::kw_let: {
                advance();
                s.kind = StmtKind::let;
                s.name = expect(Tok::ident).text;
                expect(Tok::assign);
                s.value = parse_expr();
                end_statement();
                return s;
            }
            case Tok::kw_if:
                s = parse_if();
                accept(Tok::semicolon);
                return s;
            case Tok::kw_for: {
                advance();
                s.kind = StmtKind::for_;
                s.name = expect(Tok::ident).text;
                expect(Tok::kw_in);
                s.value = parse_expr();
                parse_block(s.body);
                accept(Tok::semicolon);
                return s;
            }
            case Tok::kw_skip:
                advance();
                s.kind = StmtKind::skip;
                end_statement();
                return s;
            default:
                break;
        }
        if (!starts_expression()) fail("expected statement", statement_starts());
        ExprPtr e = parse_expr();
        if (at(Tok::assign)) {
            if (e->kind != ExprKind::ident && e->kind != ExprKind::field) {
                fail("invalid assignment target", {"identifier", "field"});
            }
            advance();
            s.kind = StmtKind::assign;
            s.target = std::move(e);
            s.value = parse_expr();
        } else {
            s.kind = StmtKind::expr;
            s.value = std::move(e);
        }
        end_statement();
        return s;
    }

    Stmt parse_if() {
        DepthGuard guard(*this);
        Stmt s;
        s.pos = cur().pos;
        s.kind = StmtKind::if_;
        advance();  // 'if'
        s.value = parse_expr();
        parse_block(s.body);
        if (accept(Tok::kw_else)) {
            s.has_else = true;
            if (at(Tok::kw_if)) {
                s.else_body.push_back(parse_if());
            } else {
                parse_block(s.else_body);
            }
        }
        return s;
    }

    bool starts_expression() const {
        switch (cur().kind) {
            case Tok::number:
            case Tok::string:
            case Tok::ident:
            case Tok::lparen:
            case Tok::lbracket:
            case Tok::lbrace:
            case Tok::minus:
            case Tok::kw_not:
            case Tok::kw_true:
            case Tok::kw_false:
                return true;
            default:
                return false;
        }
    }

    ExprPtr make(ExprKind k, Pos pos) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->pos = pos;
        return e;
    }

    ExprPtr binary(BinaryOp op, Pos pos, ExprPtr l, ExprPtr r) {
        auto e = make(ExprKind::binary, pos);
        e->binary = op;
        e->items.push_back(std::move(l));
        e->items.push_back(std::move(r));
        return e;
    }

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        return parse_or();
    }

    ExprPtr parse_or() {
        ExprPtr l = parse_and();
        while (at(Tok::kw_or)) {
            const Pos pos = cur().pos;
            advance();
            l = binary(BinaryOp::or_, pos, std::move(l), parse_and());
        }
        return l;
    }

    ExprPtr parse_and() {
        ExprPtr l = parse_not();
        while (at(Tok::kw_and)) {
            const Pos pos = cur().pos;
            advance();
            l = binary(BinaryOp::and_, pos, std::move(l), parse_not());
        }
        return l;
    }

    ExprPtr parse_not() {
        if (at(Tok::kw_not)) {
            DepthGuard guard(*this);
            auto e = make(ExprKind::unary, cur().pos);
            advance();
            e->unary = UnaryOp::not_;
            e->items.push_back(parse_not());
            return e;
        }
        return parse_comparison();
    }

    static std::optional<BinaryOp> comparison_op(Tok k) {
        switch (k) {
            case Tok::lt: return BinaryOp::lt;
            case Tok::le: return BinaryOp::le;
            case Tok::gt: return BinaryOp::gt;
            case Tok::ge: return BinaryOp::ge;
            case Tok::eq: return BinaryOp::eq;
            case Tok::ne: return BinaryOp::ne;
            default: return std::nullopt;
        }
    }

    ExprPtr parse_comparison() {
        ExprPtr l = parse_additive();
        if (const auto op = comparison_op(cur().kind)) {
            const Pos pos = cur().pos;
            advance();
            l = binary(*op, pos, std::move(l), parse_additive());
            if (comparison_op(cur().kind)) fail("comparisons cannot be chained", {});
        }
        return l;
    }

    ExprPtr parse_additive() {
        ExprPtr l = parse_multiplicative();
        while (at(Tok::plus) || at(Tok::minus)) {
            const BinaryOp op = at(Tok::plus) ? BinaryOp::add : BinaryOp::sub;
            const Pos pos = cur().pos;
            advance();
            l = binary(op, pos, std::move(l), parse_multiplicative());
        }
        return l;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr l = parse_unary();
        while (at(Tok::star) || at(Tok::slash)) {
            const BinaryOp op = at(Tok::star) ? BinaryOp::mul : BinaryOp::div;
            const Pos pos = cur().pos;
            advance();
            l = binary(op, pos, std::move(l), parse_unary());
        }
        return l;
    }

    ExprPtr parse_unary() {
        if (at(Tok::minus)) {
            DepthGuard guard(*this);
            auto e = make(ExprKind::unary, cur().pos);
            advance();
            e->unary = UnaryOp::neg;
            e->items.push_back(parse_unary());
            return e;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (at(Tok::dot)) {
                const Pos pos = cur().pos;
                advance();
                auto f = make(ExprKind::field, pos);
                f->text = expect(Tok::ident).text;
                f->items.push_back(std::move(e));
                e = std::move(f);
            } else if (at(Tok::lparen) && !cur().line_start) {
                DepthGuard guard(*this);
                auto c = make(ExprKind::call, cur().pos);
                advance();
                c->items.push_back(std::move(e));
                parse_args(c->args);
                e = std::move(c);
            } else {
                return e;
            }
        }
    }

    void parse_args(std::vector<Arg>& args) {
        while (!at(Tok::rparen)) {
            Arg a;
            a.pos = cur().pos;
            if (at(Tok::ident) && peek_tok(1).kind == Tok::colon) {
                a.name = cur().text;
                advance();
                advance();
            }
            a.value = parse_expr();
            args.push_back(std::move(a));
            if (!accept(Tok::comma)) break;
        }
        if (!at(Tok::rparen)) fail("expected ',' or ')'", {"','", "')'"});
        advance();
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::number: {
                auto e = make(ExprKind::number, t.pos);
                e->number = t.number;
                advance();
                return e;
            }
            case Tok::string: {
                auto e = make(ExprKind::string, t.pos);
                e->text = t.text;
                advance();
                return e;
            }
            case Tok::kw_true:
            case Tok::kw_false: {
                auto e = make(ExprKind::boolean, t.pos);
                e->boolean = t.kind == Tok::kw_true;
                advance();
                return e;
            }
            case Tok::ident: {
                auto e = make(ExprKind::ident, t.pos);
                e->text = t.text;
                advance();
                return e;
            }
            case Tok::lparen: {
                advance();
                ExprPtr e = parse_expr();
                expect(Tok::rparen);
                return e;
            }
            case Tok::lbracket: {
                DepthGuard guard(*this);
                auto e = make(ExprKind::list, t.pos);
                advance();
                while (!at(Tok::rbracket)) {
                    e->items.push_back(parse_expr());
                    if (!accept(Tok::comma)) break;
                }
                if (!at(Tok::rbracket)) fail("expected ',' or ']'", {"','", "']'"});
                advance();
                return e;
            }
            case Tok::lbrace: {
                DepthGuard guard(*this);
                auto e = make(ExprKind::record, t.pos);
                advance();
                while (!at(Tok::rbrace)) {
                    if (!at(Tok::ident) && !at(Tok::string)) fail("expected record key", {"identifier", "string"});
                    std::string key = cur().text;
                    for (const auto& k : e->keys) {
                        if (k == key) fail(fmt::format("duplicate record key '{}'", key), {});
                    }
                    advance();
                    expect(Tok::colon);
                    e->keys.push_back(std::move(key));
                    e->items.push_back(parse_expr());
                    if (!accept(Tok::comma)) break;
                }
                if (!at(Tok::rbrace)) fail("expected ',' or '}'", {"','", "'}'"});
                advance();
                return e;
            }
            default:
                fail("expected expression", expression_starts());
        }
    }

    std::vector<Token> tokens_;
    std::vector<Diagnostic> diags_;
    std::size_t idx_ = 0;
    int depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

}  // namespace forge::dsl
