// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/value.hpp"

#include <fmt/format.h>

namespace forge::dsl {

const char* type_name(const Value& v) {
    static const char* const names[] = {"none",   "number", "bool", "string", "list",
                                        "record", "entity", "room", "world",  "image"};
    return names[v.v.index()];
}

bool equal(const Value& a, const Value& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, std::monostate>) {
                return true;
            } else if constexpr (std::is_same_v<T, std::shared_ptr<const List>>) {
                if (x->size() != y->size()) return false;
                for (std::size_t i = 0; i < x->size(); ++i) {
                    if (!equal((*x)[i], (*y)[i])) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, std::shared_ptr<const Record>>) {
                if (x->size() != y->size()) return false;
                for (auto ia = x->begin(), ib = y->begin(); ia != x->end(); ++ia, ++ib) {
                    if (ia->first != ib->first || !equal(ia->second, ib->second)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, ImageRef>) {
                return x.image == y.image;
            } else {
                return x == y;
            }
        },
        a.v);
}

nlohmann::json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double> || std::is_same_v<T, bool> ||
                                 std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, std::shared_ptr<const List>>) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& item : *x) arr.push_back(to_json(item));
                return arr;
            } else if constexpr (std::is_same_v<T, std::shared_ptr<const Record>>) {
                nlohmann::json obj = nlohmann::json::object();
                for (const auto& [k, item] : *x) obj[k] = to_json(item);
                return obj;
            } else if constexpr (std::is_same_v<T, EntityRef> || std::is_same_v<T, RoomRef>) {
                return x.id;
            } else if constexpr (std::is_same_v<T, WorldRef>) {
                return "world";
            } else {
                return x.name;
            }
        },
        v.v);
}

std::string display(const Value& v) {
    if (const auto* d = std::get_if<double>(&v.v)) return fmt::format("{}", *d);
    if (const auto* s = std::get_if<std::string>(&v.v)) return *s;
    if (const auto* e = std::get_if<EntityRef>(&v.v)) return fmt::format("<entity {}>", e->id);
    if (const auto* r = std::get_if<RoomRef>(&v.v)) return fmt::format("<room {}>", r->id);
    if (const auto* i = std::get_if<ImageRef>(&v.v)) return fmt::format("<image {}/{}>", i->view, i->name);
    return to_json(v).dump();
}

}  // namespace forge::dsl
