// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forge::dsl {

struct Pos {
    int line = 0;
    int col = 0;
};

enum class StageKind { scene, entity, pixel };

std::string_view to_string(StageKind k);
std::optional<StageKind> parse_stage_kind(std::string_view s);

enum class ExprKind { number, string, boolean, ident, list, record, field, call, unary, binary };

enum class UnaryOp { neg, not_ };

enum class BinaryOp { add, sub, mul, div, lt, le, gt, ge, eq, ne, and_, or_ };

std::string_view to_string(BinaryOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Arg {
    std::string name;  // empty for positional arguments
    ExprPtr value;
    Pos pos;
};

/// One node type for every expression form; which members are meaningful
/// depends on `kind`:
///   number/string/boolean/ident  literal payload (`text` holds the name)
///   list      items
///   record    keys + items (parallel)
///   field     items[0] is the object, `text` the field name
///   call      items[0] is the callee, `args`
///   unary     items[0]
///   binary    items[0], items[1]
struct Expr {
    ExprKind kind = ExprKind::number;
    Pos pos;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    UnaryOp unary = UnaryOp::neg;
    BinaryOp binary = BinaryOp::add;
    std::vector<ExprPtr> items;
    std::vector<std::string> keys;
    std::vector<Arg> args;
};

enum class StmtKind { let, assign, if_, for_, skip, expr };

struct Stmt {
    StmtKind kind = StmtKind::expr;
    Pos pos;
    std::string name;  // let / for variable
    ExprPtr target;    // assign
    ExprPtr value;     // let / assign value, if condition, for iterable, expression statement
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    bool has_else = false;
};

struct Stage {
    StageKind kind = StageKind::scene;
    Pos pos;
    std::vector<Stmt> body;
};

struct Script {
    std::vector<Stage> stages;  // source order
    const Stage* find(StageKind kind) const;
};

/// Structural equality that ignores source positions.
bool same(const Expr& a, const Expr& b);
bool same(const Stmt& a, const Stmt& b);
bool same(const Script& a, const Script& b);

struct Diagnostic {
    Pos pos;
    std::string message;
    std::string token;                  // offending token text, if any
    std::vector<std::string> expected;  // what the parser would have accepted

    /// "line:col: message".
    std::string format() const;
};

}  // namespace forge::dsl
