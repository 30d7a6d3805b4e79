// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/lexer.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

namespace forge::dsl {

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::end: return "end of input";
        case Tok::ident: return "identifier";
        case Tok::number: return "number";
        case Tok::string: return "string";
        case Tok::kw_stage: return "'stage'";
        case Tok::kw_let: return "'let'";
        case Tok::kw_if: return "'if'";
        case Tok::kw_else: return "'else'";
        case Tok::kw_for: return "'for'";
        case Tok::kw_in: return "'in'";
        case Tok::kw_skip: return "'skip'";
        case Tok::kw_and: return "'and'";
        case Tok::kw_or: return "'or'";
        case Tok::kw_not: return "'not'";
        case Tok::kw_true: return "'true'";
        case Tok::kw_false: return "'false'";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::lbracket: return "'['";
        case Tok::rbracket: return "']'";
        case Tok::comma: return "','";
        case Tok::colon: return "':'";
        case Tok::dot: return "'.'";
        case Tok::semicolon: return "';'";
        case Tok::assign: return "'='";
        case Tok::eq: return "'=='";
        case Tok::ne: return "'!='";
        case Tok::lt: return "'<'";
        case Tok::le: return "'<='";
        case Tok::gt: return "'>'";
        case Tok::ge: return "'>='";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
    }
    return "token";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
    static const std::unordered_map<std::string_view, Tok> table{
        {"stage", Tok::kw_stage}, {"let", Tok::kw_let},   {"if", Tok::kw_if},     {"else", Tok::kw_else},
        {"for", Tok::kw_for},     {"in", Tok::kw_in},     {"skip", Tok::kw_skip}, {"and", Tok::kw_and},
        {"or", Tok::kw_or},       {"not", Tok::kw_not},   {"true", Tok::kw_true}, {"false", Tok::kw_false},
    };
    return table;
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        bool line_start = true;
        while (true) {
            // whitespace and comments
            while (i_ < src_.size()) {
                const char c = src_[i_];
                if (c == '\n') {
                    advance();
                    line_start = true;
                } else if (c == ' ' || c == '\t' || c == '\r') {
                    advance();
                } else if (c == '#') {
                    while (i_ < src_.size() && src_[i_] != '\n') advance();
                } else {
                    break;
                }
            }
            Token t;
            t.pos = {line_, col_};
            t.line_start = line_start;
            if (i_ >= src_.size()) {
                t.kind = Tok::end;
                out.push_back(std::move(t));
                return out;
            }
            if (scan(t)) {
                out.push_back(std::move(t));
                line_start = false;
            }
        }
    }

private:
    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

    void error(Pos pos, std::string msg, std::string token) {
        diags_.push_back({pos, std::move(msg), std::move(token), {}});
    }

    bool scan(Token& t) {
        const char c = peek();
        if (ident_start(c)) {
            const std::size_t start = i_;
            while (ident_char(peek())) advance();
            t.text = std::string(src_.substr(start, i_ - start));
            const auto it = keywords().find(t.text);
            t.kind = it == keywords().end() ? Tok::ident : it->second;
            return true;
        }
        if (digit(c)) return scan_number(t);
        if (c == '"' || c == '\'') return scan_string(t);

        auto single = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance();
            return true;
        };
        auto pair = [&](Tok k) {
            t.kind = k;
            t.text = std::string(src_.substr(i_, 2));
            advance();
            advance();
            return true;
        };
        switch (c) {
            case '{': return single(Tok::lbrace);
            case '}': return single(Tok::rbrace);
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            case '[': return single(Tok::lbracket);
            case ']': return single(Tok::rbracket);
            case ',': return single(Tok::comma);
            case ':': return single(Tok::colon);
            case '.': return single(Tok::dot);
            case ';': return single(Tok::semicolon);
            case '+': return single(Tok::plus);
            case '-': return single(Tok::minus);
            case '*': return single(Tok::star);
            case '/': return single(Tok::slash);
            case '=': return peek(1) == '=' ? pair(Tok::eq) : single(Tok::assign);
            case '<': return peek(1) == '=' ? pair(Tok::le) : single(Tok::lt);
            case '>': return peek(1) == '=' ? pair(Tok::ge) : single(Tok::gt);
            case '!':
                if (peek(1) == '=') return pair(Tok::ne);
                break;
            default:
                break;
        }
        const unsigned char uc = static_cast<unsigned char>(c);
        const std::string shown = uc >= 0x20 && uc < 0x7f ? std::string(1, c) : fmt::format("\\x{:02x}", uc);
        error(t.pos, fmt::format("unexpected character '{}'", shown), shown);
        advance();
        return false;
    }

    bool scan_number(Token& t) {
        const std::size_t start = i_;
        while (digit(peek())) advance();
        if (peek() == '.' && digit(peek(1))) {
            advance();
            while (digit(peek())) advance();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
            advance();
            if (peek() == '+' || peek() == '-') advance();
            while (digit(peek())) advance();
        }
        t.kind = Tok::number;
        t.text = std::string(src_.substr(start, i_ - start));
        double value = 0.0;
        const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (res.ec != std::errc() || !std::isfinite(value)) {
            error(t.pos, fmt::format("number '{}' is out of range", t.text), t.text);
            value = 0.0;
        }
        t.number = value;
        if (ident_start(peek())) {
            const Pos pos{line_, col_};
            const std::size_t s = i_;
            while (ident_char(peek())) advance();
            const std::string junk(src_.substr(s, i_ - s));
            error(pos, fmt::format("malformed number '{}{}'", t.text, junk), t.text + junk);
        }
        return true;
    }

    bool scan_string(Token& t) {
        const char quote = peek();
        advance();
        std::string value;
        while (true) {
            if (i_ >= src_.size() || peek() == '\n') {
                error(t.pos, "unterminated string literal", std::string(1, quote));
                t.kind = Tok::string;
                t.text = std::move(value);
                return true;
            }
            const char c = peek();
            if (c == quote) {
                advance();
                break;
            }
            if (c == '\\') {
                const Pos esc_pos{line_, col_};
                advance();
                const char e = peek();
                switch (e) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    case '0': value += '\0'; break;
                    case '\\': value += '\\'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    default:
                        error(esc_pos, "unknown escape sequence in string", std::string("\\") + e);
                        if (e == '\n' || e == '\0') continue;
                        value += e;
                        break;
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        t.kind = Tok::string;
        t.text = std::move(value);
        return true;
    }

    std::string_view src_;
    std::vector<Diagnostic>& diags_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diagnostics) {
    return Lexer(source, diagnostics).run();
}

}  // namespace forge::dsl
