// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include "doctest.h"
#include "support.hpp"

#include "forge/dsl/parser.hpp"
#include "forge/rng.hpp"

using namespace forge::dsl;

namespace {

std::string expr_text(std::string_view src) {
    const auto r = parse("stage scene { let x = " + std::string(src) + " }");
    REQUIRE(r.ok());
    return print(*r.script.stages[0].body[0].value);
}

}  // namespace

TEST_CASE("precedence and associativity") {
    CHECK(expr_text("1 + 2 * 3") == "(1 + (2 * 3))");
    CHECK(expr_text("1 - 2 - 3") == "((1 - 2) - 3)");
    CHECK(expr_text("a or b and not c") == "(a or (b and (not c)))");
    CHECK(expr_text("-a.b(1)") == "(-a.b(1))");
    CHECK(expr_text("(x < 1) == true") == "((x < 1) == true)");
    CHECK(expr_text("[1, 2,]") == "[1, 2]");
    CHECK(expr_text("{a: 1, 'b c': 2}") == "{a: 1, \"b c\": 2}");
    CHECK(expr_text("f(1, k: 2)") == "f(1, k: 2)");
}

TEST_CASE("comparisons do not chain") {
    const auto r = parse("stage scene { let x = 1 < 2 < 3 }");
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics[0].pos.col == 29);
}

TEST_CASE("an if without a condition reports at the brace") {
    const auto r = parse("stage scene { if }");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].pos.line == 1);
    CHECK(r.diagnostics[0].pos.col == 18);
    CHECK(r.diagnostics[0].message.find("found '}'") != std::string::npos);
}

TEST_CASE("statements on one line need a separator") {
    CHECK(parse("stage scene { let a = 1; let b = 2 }").ok());
    CHECK_FALSE(parse("stage scene { let a = 1 let b = 2 }").ok());
    CHECK(parse("stage scene {\n let a = 1\n let b = 2\n}").ok());
}

TEST_CASE("a call needs its parenthesis on the same line") {
    const auto r = parse("stage scene {\n  let a = b\n  (1)\n}");
    REQUIRE(r.ok());
    REQUIRE(r.script.stages[0].body.size() == 2);
    CHECK(r.script.stages[0].body[0].value->kind == ExprKind::ident);
    CHECK(parse("stage scene {\n  let a = b(1)\n}").script.stages[0].body[0].value->kind == ExprKind::call);
}

TEST_CASE("recovery reports independent errors") {
    const auto r = parse("stage scene {\n  let = 1\n  let ok = 2\n  if == 1 { }\n}\nstage entity { for in x { } }");
    REQUIRE(r.diagnostics.size() == 3);
    CHECK(r.diagnostics[0].pos.line == 2);
    CHECK(r.diagnostics[1].pos.line == 4);
    CHECK(r.diagnostics[2].pos.line == 6);
}

TEST_CASE("duplicate stages and keys") {
    CHECK_FALSE(parse("stage scene { }\nstage scene { }").ok());
    CHECK_FALSE(parse("stage scene { let r = {a: 1, a: 2} }").ok());
    CHECK_FALSE(parse("stage render { }").ok());
}

TEST_CASE("deep nesting is a diagnostic, not a crash") {
    std::string deep = "stage scene { let x = " + std::string(5000, '(') + "1" + std::string(5000, ')') + " }";
    const auto r = parse(deep);
    CHECK_FALSE(r.ok());
    std::string blocks = "stage scene { ";
    for (int i = 0; i < 1000; ++i) blocks += "if true { ";
    const auto b = parse(blocks);
    CHECK_FALSE(b.ok());
}

TEST_CASE("printer output re-parses to the same tree") {
    namespace fs = std::filesystem;
    int n = 0;
    for (const auto& entry : fs::directory_iterator(forge::test::source_dir() / "scripts")) {
        const auto r = parse(forge::test::read_file(entry.path()));
        INFO(entry.path().string());
        REQUIRE(r.ok());
        const std::string printed = print(r.script);
        const auto again = parse(printed);
        REQUIRE(again.ok());
        CHECK(same(r.script, again.script));
        CHECK(print(again.script) == printed);
        ++n;
    }
    CHECK(n == 6);
}

TEST_CASE("random bytes never crash the parser") {
    forge::RngStream rng(1);
    const std::string alphabet = "stage scene entity pixel {}()[]:,.;=<>!+-*/\"'#\n\t 0123456789 abc let if else for in skip";
    for (int i = 0; i < 3000; ++i) {
        std::string s;
        const auto len = rng.below(80);
        for (std::uint64_t j = 0; j < len; ++j) {
            s += rng.uniform() < 0.8 ? alphabet[rng.below(alphabet.size())] : static_cast<char>(rng.below(256));
        }
        const auto r = parse(s);
        for (const auto& d : r.diagnostics) {
            CHECK(d.pos.line >= 1);
            CHECK(d.pos.col >= 1);
        }
    }
}
