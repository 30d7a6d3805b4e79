// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "forge/dsl/lexer.hpp"

using namespace forge::dsl;

namespace {

std::vector<Tok> kinds(std::string_view src) {
    std::vector<Diagnostic> d;
    std::vector<Tok> out;
    for (const auto& t : lex(src, d)) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST_CASE("keywords, operators and literals") {
    CHECK(kinds("stage scene { let x = 1.5e3 }") ==
          std::vector<Tok>{Tok::kw_stage, Tok::ident, Tok::lbrace, Tok::kw_let, Tok::ident, Tok::assign,
                           Tok::number, Tok::rbrace, Tok::end});
    CHECK(kinds("a<=b != c >= d == e < f > g") ==
          std::vector<Tok>{Tok::ident, Tok::le, Tok::ident, Tok::ne, Tok::ident, Tok::ge, Tok::ident, Tok::eq,
                           Tok::ident, Tok::lt, Tok::ident, Tok::gt, Tok::ident, Tok::end});
    CHECK(kinds("and or not true false in skip") ==
          std::vector<Tok>{Tok::kw_and, Tok::kw_or, Tok::kw_not, Tok::kw_true, Tok::kw_false, Tok::kw_in,
                           Tok::kw_skip, Tok::end});
}

TEST_CASE("positions and line starts") {
    std::vector<Diagnostic> d;
    const auto toks = lex("a\n  # comment\n  bb c", d);
    REQUIRE(toks.size() == 4);
    CHECK(toks[0].pos.line == 1);
    CHECK(toks[0].pos.col == 1);
    CHECK(toks[1].pos.line == 3);
    CHECK(toks[1].pos.col == 3);
    CHECK(toks[1].line_start);
    CHECK_FALSE(toks[2].line_start);
    CHECK(d.empty());
}

TEST_CASE("string escapes decode") {
    std::vector<Diagnostic> d;
    const auto toks = lex(R"("a\n\"b\"" 'it\'s')", d);
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].text == "a\n\"b\"");
    CHECK(toks[1].text == "it's");
    CHECK(d.empty());
}

TEST_CASE("malformed input yields positioned diagnostics") {
    std::vector<Diagnostic> d;
    auto toks = lex("x = \"open\ny = 2", d);
    REQUIRE(d.size() == 1);
    CHECK(d[0].pos.line == 1);
    CHECK(d[0].pos.col == 5);
    CHECK(toks.back().kind == Tok::end);

    d.clear();
    lex("a @ b $", d);
    REQUIRE(d.size() == 2);
    CHECK(d[0].pos.col == 3);
    CHECK(d[1].pos.col == 7);

    d.clear();
    lex("1e999999", d);
    CHECK(d.size() == 1);

    d.clear();
    lex(std::string_view("\x01\xff", 2), d);
    CHECK(d.size() == 2);
    CHECK(d[0].message.find("\\x01") != std::string::npos);
}
