// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "forge/dsl/ast.hpp"

namespace forge::dsl {

enum class Tok {
    end,
    ident,
    number,
    string,
    kw_stage,
    kw_let,
    kw_if,
    kw_else,
    kw_for,
    kw_in,
    kw_skip,
    kw_and,
    kw_or,
    kw_not,
    kw_true,
    kw_false,
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    colon,
    dot,
    semicolon,
    assign,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    plus,
    minus,
    star,
    slash,
};

std::string_view describe(Tok t);

struct Token {
    Tok kind = Tok::end;
    std::string text;    // source spelling; decoded value for strings
    double number = 0.0;
    Pos pos;
    bool line_start = false;  // first token on its line
};

/// Tokenises the whole source. Malformed input (stray bytes, unterminated
/// strings, bad numbers) yields diagnostics and is skipped; the token list
/// always ends with Tok::end.
std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diagnostics);

}  // namespace forge::dsl
