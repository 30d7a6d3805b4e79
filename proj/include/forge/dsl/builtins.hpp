// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/dsl/ast.hpp"

namespace forge::dsl {

inline constexpr unsigned stage_bit(StageKind k) { return 1u << static_cast<unsigned>(k); }
inline constexpr unsigned kAllStages = 7u;

struct ParamSpec {
    std::string name;
    bool required = true;
};

struct BuiltinSpec {
    std::string name;
    unsigned stages = 0;  // bitmask of stage_bit()
    std::vector<ParamSpec> params;
    bool extra_named = false;  // accepts arbitrary additional named arguments
    bool pure = false;         // no side effects, allowed inside map_pixels
};

const BuiltinSpec* find_builtin(std::string_view name);
const std::vector<BuiltinSpec>& builtin_table();

/// Result of matching call arguments against a builtin's parameters.
struct Binding {
    std::vector<int> param_arg;  // per parameter: index into the argument list or -1
    std::vector<int> extra;      // argument indices of accepted extra named arguments
};

/// Binds call arguments to a builtin's parameters. `args` lists argument
/// names in call order ("" for positional). `receiver` prepends one
/// positional argument that is not in `args`; it binds as kReceiverArg.
/// Returns an error message when the call does not fit.
std::optional<std::string> bind_arguments(const BuiltinSpec& spec, const std::vector<std::string>& args,
                                          bool receiver, Binding& out);

inline constexpr int kReceiverArg = -2;

}  // namespace forge::dsl
