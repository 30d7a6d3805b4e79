// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/ast.hpp"

#include <fmt/format.h>

namespace forge::dsl {

std::string_view to_string(StageKind k) {
    switch (k) {
        case StageKind::scene: return "scene";
        case StageKind::entity: return "entity";
        case StageKind::pixel: return "pixel";
    }
    return "scene";
}

std::optional<StageKind> parse_stage_kind(std::string_view s) {
    if (s == "scene") return StageKind::scene;
    if (s == "entity") return StageKind::entity;
    if (s == "pixel") return StageKind::pixel;
    return std::nullopt;
}

std::string_view to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::add: return "+";
        case BinaryOp::sub: return "-";
        case BinaryOp::mul: return "*";
        case BinaryOp::div: return "/";
        case BinaryOp::lt: return "<";
        case BinaryOp::le: return "<=";
        case BinaryOp::gt: return ">";
        case BinaryOp::ge: return ">=";
        case BinaryOp::eq: return "==";
        case BinaryOp::ne: return "!=";
        case BinaryOp::and_: return "and";
        case BinaryOp::or_: return "or";
    }
    return "?";
}

const Stage* Script::find(StageKind kind) const {
    for (const auto& s : stages) {
        if (s.kind == kind) return &s;
    }
    return nullptr;
}

namespace {

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same(*a, *b);
}

bool same_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

bool same(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::number:
            if (a.number != b.number) return false;
            break;
        case ExprKind::boolean:
            if (a.boolean != b.boolean) return false;
            break;
        case ExprKind::string:
        case ExprKind::ident:
        case ExprKind::field:
            if (a.text != b.text) return false;
            break;
        case ExprKind::unary:
            if (a.unary != b.unary) return false;
            break;
        case ExprKind::binary:
            if (a.binary != b.binary) return false;
            break;
        default:
            break;
    }
    if (a.items.size() != b.items.size() || a.keys != b.keys || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        if (!same_ptr(a.items[i], b.items[i])) return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (a.args[i].name != b.args[i].name || !same_ptr(a.args[i].value, b.args[i].value)) return false;
    }
    return true;
}

bool same(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.name == b.name && a.has_else == b.has_else && same_ptr(a.target, b.target) &&
           same_ptr(a.value, b.value) && same_body(a.body, b.body) && same_body(a.else_body, b.else_body);
}

bool same(const Script& a, const Script& b) {
    if (a.stages.size() != b.stages.size()) return false;
    for (std::size_t i = 0; i < a.stages.size(); ++i) {
        if (a.stages[i].kind != b.stages[i].kind || !same_body(a.stages[i].body, b.stages[i].body)) return false;
    }
    return true;
}

std::string Diagnostic::format() const { return fmt::format("{}:{}: {}", pos.line, pos.col, message); }

}  // namespace forge::dsl
