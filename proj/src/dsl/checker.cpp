// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/checker.hpp"

#include <set>
#include <string>

#include <fmt/format.h>

#include "forge/dsl/builtins.hpp"

namespace forge::dsl {

namespace {

class Checker {
public:
    std::vector<Diagnostic> run(const Script& script) {
        for (const auto& stage : script.stages) {
            stage_ = stage.kind;
            scopes_.clear();
            scopes_.emplace_back();
            if (stage.kind != StageKind::pixel) scopes_.back().insert("world");
            body(stage.body);
        }
        return std::move(diags_);
    }

private:
    void report(Pos pos, std::string msg) { diags_.push_back({pos, std::move(msg), {}, {}}); }

    bool declared(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (it->count(name)) return true;
        }
        return false;
    }

    void body(const std::vector<Stmt>& stmts) {
        scopes_.emplace_back();
        for (const auto& s : stmts) stmt(s);
        scopes_.pop_back();
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::let:
                expr(*s.value);
                scopes_.back().insert(s.name);
                break;
            case StmtKind::assign:
                if (s.target->kind == ExprKind::ident) {
                    if (!declared(s.target->text)) {
                        report(s.target->pos, fmt::format("assignment to undeclared name '{}'", s.target->text));
                    }
                } else {
                    expr(*s.target->items[0]);
                }
                expr(*s.value);
                break;
            case StmtKind::if_:
                expr(*s.value);
                body(s.body);
                if (s.has_else) body(s.else_body);
                break;
            case StmtKind::for_:
                expr(*s.value);
                scopes_.emplace_back();
                scopes_.back().insert(s.name);
                body(s.body);
                scopes_.pop_back();
                break;
            case StmtKind::skip:
                break;
            case StmtKind::expr:
                expr(*s.value);
                break;
        }
    }

    void expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::number:
            case ExprKind::string:
            case ExprKind::boolean:
                return;
            case ExprKind::ident:
                if (!declared(e.text)) {
                    if (e.text == "world" && stage_ == StageKind::pixel) {
                        report(e.pos, "'world' is not available in the pixel stage");
                    } else if (pixel_expr_ == 0 && (e.text == "v" || e.text == "r" || e.text == "g" || e.text == "b") &&
                               stage_ == StageKind::pixel) {
                        report(e.pos, fmt::format("'{}' is only defined inside a map_pixels expression", e.text));
                    } else if (find_builtin(e.text) != nullptr) {
                        report(e.pos, fmt::format("builtin '{}' used as a value", e.text));
                    } else {
                        report(e.pos, fmt::format("unknown name '{}'", e.text));
                    }
                }
                return;
            case ExprKind::list:
            case ExprKind::record:
            case ExprKind::unary:
            case ExprKind::binary:
                for (const auto& i : e.items) expr(*i);
                return;
            case ExprKind::field:
                expr(*e.items[0]);
                return;
            case ExprKind::call:
                call(e);
                return;
        }
    }

    void call(const Expr& e) {
        const Expr& callee = *e.items[0];
        std::string name;
        bool receiver = false;
        if (callee.kind == ExprKind::ident) {
            name = callee.text;
        } else if (callee.kind == ExprKind::field) {
            name = callee.text;
            const Expr& obj = *callee.items[0];
            receiver = !(obj.kind == ExprKind::ident && obj.text == "world");
            expr(obj);
        } else {
            report(callee.pos, "only builtins can be called");
            for (const auto& a : e.args) expr(*a.value);
            return;
        }
        const BuiltinSpec* spec = find_builtin(name);
        if (spec == nullptr) {
            report(callee.pos, fmt::format("unknown builtin '{}'", name));
            for (const auto& a : e.args) expr(*a.value);
            return;
        }
        if ((spec->stages & stage_bit(stage_)) == 0) {
            report(callee.pos, fmt::format("builtin '{}' is not available in the {} stage", name, to_string(stage_)));
        }
        if (pixel_expr_ > 0 && !spec->pure) {
            report(callee.pos, fmt::format("builtin '{}' has side effects and cannot be used inside map_pixels", name));
        }
        std::vector<std::string> names;
        for (const auto& a : e.args) names.push_back(a.name);
        Binding binding;
        if (auto err = bind_arguments(*spec, names, receiver, binding)) report(e.pos, *err);

        int expr_arg = -1;
        if (spec->name == "map_pixels") expr_arg = binding.param_arg.size() > 1 ? binding.param_arg[1] : -1;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (static_cast<int>(i) == expr_arg) {
                scopes_.emplace_back(std::set<std::string>{"v", "r", "g", "b"});
                ++pixel_expr_;
                expr(*e.args[i].value);
                --pixel_expr_;
                scopes_.pop_back();
            } else {
                expr(*e.args[i].value);
            }
        }
    }

    StageKind stage_ = StageKind::scene;
    std::vector<std::set<std::string>> scopes_;
    std::vector<Diagnostic> diags_;
    int pixel_expr_ = 0;
};

}  // namespace

std::vector<Diagnostic> check(const Script& script) { return Checker().run(script); }

}  // namespace forge::dsl
