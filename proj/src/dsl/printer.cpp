// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <fmt/format.h>

#include "forge/dsl/parser.hpp"

namespace forge::dsl {

namespace {

bool is_keyword(const std::string& s) {
    static const char* const words[] = {"stage", "let", "if",  "else", "for",  "in",
                                        "skip",  "and", "or",  "not",  "true", "false"};
    for (const char* w : words) {
        if (s == w) return true;
    }
    return false;
}

bool plain_identifier(const std::string& s) {
    if (s.empty() || is_keyword(s)) return false;
    const auto start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!start(s[0])) return false;
    for (char c : s) {
        if (!start(c) && !(c >= '0' && c <= '9')) return false;
    }
    return true;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            case '\0': out += "\\0"; break;
            default: out += c; break;
        }
    }
    return out + "\"";
}

void print_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::number:
            out += fmt::format("{}", e.number);
            return;
        case ExprKind::string:
            out += quote(e.text);
            return;
        case ExprKind::boolean:
            out += e.boolean ? "true" : "false";
            return;
        case ExprKind::ident:
            out += e.text;
            return;
        case ExprKind::list:
            out += '[';
            for (std::size_t i = 0; i < e.items.size(); ++i) {
                if (i) out += ", ";
                print_expr(*e.items[i], out);
            }
            out += ']';
            return;
        case ExprKind::record:
            out += '{';
            for (std::size_t i = 0; i < e.items.size(); ++i) {
                if (i) out += ", ";
                out += plain_identifier(e.keys[i]) ? e.keys[i] : quote(e.keys[i]);
                out += ": ";
                print_expr(*e.items[i], out);
            }
            out += '}';
            return;
        case ExprKind::field:
            print_expr(*e.items[0], out);
            out += '.';
            out += e.text;
            return;
        case ExprKind::call:
            print_expr(*e.items[0], out);
            out += '(';
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                if (!e.args[i].name.empty()) out += e.args[i].name + ": ";
                print_expr(*e.args[i].value, out);
            }
            out += ')';
            return;
        case ExprKind::unary:
            out += e.unary == UnaryOp::neg ? "(-" : "(not ";
            print_expr(*e.items[0], out);
            out += ')';
            return;
        case ExprKind::binary:
            out += '(';
            print_expr(*e.items[0], out);
            out += fmt::format(" {} ", to_string(e.binary));
            print_expr(*e.items[1], out);
            out += ')';
            return;
    }
}

void print_body(const std::vector<Stmt>& body, int indent, std::string& out);

void print_if(const Stmt& s, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    out += "if ";
    print_expr(*s.value, out);
    out += " {\n";
    print_body(s.body, indent + 1, out);
    out += pad + "}";
    if (s.has_else) {
        if (s.else_body.size() == 1 && s.else_body[0].kind == StmtKind::if_) {
            out += " else ";
            print_if(s.else_body[0], indent, out);
            return;
        }
        out += " else {\n";
        print_body(s.else_body, indent + 1, out);
        out += pad + "}";
    }
}

void print_stmt(const Stmt& s, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    out += pad;
    switch (s.kind) {
        case StmtKind::let:
            out += "let " + s.name + " = ";
            print_expr(*s.value, out);
            break;
        case StmtKind::assign:
            print_expr(*s.target, out);
            out += " = ";
            print_expr(*s.value, out);
            break;
        case StmtKind::if_:
            print_if(s, indent, out);
            break;
        case StmtKind::for_:
            out += "for " + s.name + " in ";
            print_expr(*s.value, out);
            out += " {\n";
            print_body(s.body, indent + 1, out);
            out += pad + "}";
            break;
        case StmtKind::skip:
            out += "skip";
            break;
        case StmtKind::expr:
            print_expr(*s.value, out);
            break;
    }
    out += '\n';
}

void print_body(const std::vector<Stmt>& body, int indent, std::string& out) {
    for (const auto& s : body) print_stmt(s, indent, out);
}

}  // namespace

std::string print(const Expr& expr) {
    std::string out;
    print_expr(expr, out);
    return out;
}

std::string print(const Script& script) {
    std::string out;
    for (std::size_t i = 0; i < script.stages.size(); ++i) {
        if (i) out += '\n';
        out += fmt::format("stage {} {{\n", to_string(script.stages[i].kind));
        print_body(script.stages[i].body, 1, out);
        out += "}\n";
    }
    return out;
}

}  // namespace forge::dsl
