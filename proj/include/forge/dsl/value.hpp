// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "forge/image.hpp"

namespace forge::dsl {

struct Value;
using List = std::vector<Value>;
using Record = std::map<std::string, Value>;

struct EntityRef {
    std::string id;
    friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

struct RoomRef {
    std::string id;
    friend bool operator==(const RoomRef&, const RoomRef&) = default;
};

struct WorldRef {
    friend bool operator==(const WorldRef&, const WorldRef&) = default;
};

struct ImageRef {
    std::shared_ptr<const Image> image;
    std::string view;
    std::string name;
};

/// Script runtime value. Lists and records are immutable and shared.
struct Value {
    using Storage = std::variant<std::monostate, double, bool, std::string, std::shared_ptr<const List>,
                                 std::shared_ptr<const Record>, EntityRef, RoomRef, WorldRef, ImageRef>;
    Storage v;

    Value() = default;
    Value(double d) : v(d) {}
    Value(bool b) : v(b) {}
    Value(std::string s) : v(std::move(s)) {}
    Value(const char* s) : v(std::string(s)) {}
    Value(List l) : v(std::make_shared<const List>(std::move(l))) {}
    Value(Record r) : v(std::make_shared<const Record>(std::move(r))) {}
    Value(EntityRef e) : v(std::move(e)) {}
    Value(RoomRef r) : v(std::move(r)) {}
    Value(WorldRef w) : v(w) {}
    Value(ImageRef i) : v(std::move(i)) {}

    template <class T>
    bool is() const { return std::holds_alternative<T>(v); }
    bool is_none() const { return is<std::monostate>(); }
    bool is_list() const { return is<std::shared_ptr<const List>>(); }
    bool is_record() const { return is<std::shared_ptr<const Record>>(); }
    const List& list() const { return *std::get<std::shared_ptr<const List>>(v); }
    const Record& record() const { return *std::get<std::shared_ptr<const Record>>(v); }
};

/// "none", "number", "bool", "string", "list", "record", "entity", "room", "world", "image".
const char* type_name(const Value& v);

/// Deep equality; values of different types are unequal. Images compare by
/// identity.
bool equal(const Value& a, const Value& b);

/// Entities and rooms become their id strings; images their file name.
nlohmann::json to_json(const Value& v);

std::string display(const Value& v);

}  // namespace forge::dsl
