// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "forge/dsl/ast.hpp"

namespace forge::dsl {

/// Static checks on a parsed script: unknown builtins, bad arity or argument
/// names, builtins used outside their stage, names used before `let`, and
/// impure calls inside map_pixels expressions.
std::vector<Diagnostic> check(const Script& script);

}  // namespace forge::dsl
