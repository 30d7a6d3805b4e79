// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "forge/dsl/ast.hpp"

namespace forge::dsl {

/// Maximum nesting of blocks and expressions before the parser gives up on
/// a statement.
inline constexpr int kMaxNesting = 200;

struct ParseResult {
    Script script;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

/// Parses a script. Never throws on malformed input: every problem becomes a
/// positioned diagnostic, and the parser resynchronises at statement
/// boundaries so later errors are still reported.
ParseResult parse(std::string_view source);

/// Canonical source form. parse(print(s)) is structurally equal to s.
std::string print(const Script& script);
std::string print(const Expr& expr);

}  // namespace forge::dsl
