// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/interpreter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "forge/dsl/builtins.hpp"
#include "forge/dsl/value.hpp"
#include "forge/error.hpp"

namespace forge::dsl {

namespace {

struct RuntimeError {
    Pos pos;
    std::string message;
};

struct SkipSignal {};

[[noreturn]] void fail(Pos pos, std::string msg) { throw RuntimeError{pos, std::move(msg)}; }

Value vec3_record(Vec3 p) { return Record{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

std::string normalized(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::optional<ComponentKind> component_from_name(std::string_view s) {
    if (auto k = parse_component_kind(s)) return k;
    const std::string want = normalized(s);
    for (int i = 0; i < kComponentKindCount; ++i) {
        const auto k = static_cast<ComponentKind>(i);
        if (normalized(to_string(k)) == want) return k;
    }
    return std::nullopt;
}

bool valid_file_name(const std::string& name) {
    if (name.size() < 5 || name.size() > 128 || name.front() == '.') return false;
    if (name.substr(name.size() - 4) != ".png") return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

bool valid_trajectory_id(const std::string& id) {
    if (id.empty() || id.size() > 64 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

class Interp {
public:
    Interp(StageKind stage, StageContext& ctx) : stage_(stage), ctx_(ctx) {
        scopes_.emplace_back();
        if (stage != StageKind::pixel) scopes_.back()["world"] = Value(WorldRef{});
    }

    void run(const std::vector<Stmt>& body) { exec_body(body); }
    std::uint64_t steps() const { return steps_; }

private:
    using Scope = std::map<std::string, Value>;

    void tick(Pos pos) {
        if (++steps_ > ctx_.step_limit) fail(pos, fmt::format("step budget of {} exhausted", ctx_.step_limit));
    }

    // ---- values -------------------------------------------------------

    double num(const Value& v, Pos pos, std::string_view what) const {
        const auto* d = std::get_if<double>(&v.v);
        if (d == nullptr) fail(pos, fmt::format("{} must be a number, got {}", what, type_name(v)));
        return *d;
    }

    int whole(const Value& v, Pos pos, std::string_view what, int lo, int hi) const {
        const double d = num(v, pos, what);
        if (d != std::floor(d) || d < lo || d > hi) {
            fail(pos, fmt::format("{} must be a whole number in [{}, {}], got {}", what, lo, hi, d));
        }
        return static_cast<int>(d);
    }

    std::string str(const Value& v, Pos pos, std::string_view what) const {
        const auto* s = std::get_if<std::string>(&v.v);
        if (s == nullptr) fail(pos, fmt::format("{} must be a string, got {}", what, type_name(v)));
        return *s;
    }

    bool truth(const Value& v, Pos pos, std::string_view what) const {
        const auto* b = std::get_if<bool>(&v.v);
        if (b == nullptr) fail(pos, fmt::format("{} must be a bool, got {}", what, type_name(v)));
        return *b;
    }

    std::vector<double> numbers(const Value& v, Pos pos, std::string_view what) const {
        if (const auto* d = std::get_if<double>(&v.v)) return {*d};
        if (!v.is_list()) fail(pos, fmt::format("{} must be a number or a list of numbers", what));
        std::vector<double> out;
        for (const auto& item : v.list()) out.push_back(num(item, pos, what));
        return out;
    }

    Vec3 point(const Value& v, Pos pos, std::string_view what) const {
        if (v.is_list()) {
            const auto xs = numbers(v, pos, what);
            if (xs.size() != 3) fail(pos, fmt::format("{} must have 3 coordinates", what));
            return {xs[0], xs[1], xs[2]};
        }
        if (v.is_record()) {
            const auto& r = v.record();
            Vec3 p;
            const char* keys[] = {"x", "y", "z"};
            double* slots[] = {&p.x, &p.y, &p.z};
            for (int i = 0; i < 3; ++i) {
                auto it = r.find(keys[i]);
                if (it == r.end()) fail(pos, fmt::format("{} is missing '{}'", what, keys[i]));
                *slots[i] = num(it->second, pos, what);
            }
            return p;
        }
        fail(pos, fmt::format("{} must be a point record or list, got {}", what, type_name(v)));
    }

    SceneDocument& scene(Pos pos) const {
        if (ctx_.scene == nullptr) fail(pos, "no scene is available in this stage");
        return *ctx_.scene;
    }

    Entity& entity_of(const Value& v, Pos pos) const {
        std::string id;
        if (const auto* e = std::get_if<EntityRef>(&v.v)) {
            id = e->id;
        } else if (const auto* s = std::get_if<std::string>(&v.v)) {
            id = *s;
        } else {
            fail(pos, fmt::format("expected an entity or entity id, got {}", type_name(v)));
        }
        Entity* ent = scene(pos).find_entity(id);
        if (ent == nullptr) fail(pos, fmt::format("unknown entity '{}'", id));
        return *ent;
    }

    const Room& room_of(const Value& v, Pos pos) const {
        std::string id;
        if (const auto* r = std::get_if<RoomRef>(&v.v)) {
            id = r->id;
        } else if (const auto* s = std::get_if<std::string>(&v.v)) {
            id = *s;
        } else {
            fail(pos, fmt::format("expected a room or room id, got {}", type_name(v)));
        }
        const Room* room = scene(pos).find_room(id);
        if (room == nullptr) fail(pos, fmt::format("unknown room '{}'", id));
        return *room;
    }

    // ---- fields -------------------------------------------------------

    List entities_where(Pos pos, const std::function<bool(const Entity&)>& pred) const {
        List out;
        for (const auto& e : scene(pos).entities) {
            if (pred(e)) out.emplace_back(EntityRef{e.entity_id});
        }
        return out;
    }

    Value field(const Value& obj, const std::string& name, Pos pos) const {
        if (obj.is_record()) {
            const auto& r = obj.record();
            auto it = r.find(name);
            if (it == r.end()) fail(pos, fmt::format("record has no field '{}'", name));
            return it->second;
        }
        if (obj.is<EntityRef>()) return entity_field(entity_of(obj, pos), name, pos);
        if (obj.is<RoomRef>()) return room_field(room_of(obj, pos), name, pos);
        if (obj.is<WorldRef>()) return world_field(name, pos);
        if (const auto* img = std::get_if<ImageRef>(&obj.v)) {
            if (name == "width") return static_cast<double>(img->image->width);
            if (name == "height") return static_cast<double>(img->image->height);
            if (name == "channels") return static_cast<double>(img->image->channels);
            if (name == "name") return img->name;
            if (name == "view") return img->view;
            fail(pos, fmt::format("image has no field '{}'", name));
        }
        fail(pos, fmt::format("{} has no field '{}'", type_name(obj), name));
    }

    Value entity_field(const Entity& e, const std::string& name, Pos pos) const {
        if (name == "id") return e.entity_id;
        if (name == "room_id") return e.room_id ? Value(*e.room_id) : Value();
        if (name == "room") return e.room_id ? Value(RoomRef{*e.room_id}) : Value();
        if (name == "kind") {
            if (e.has(ComponentKind::mesh_ref)) return "mesh";
            if (e.has(ComponentKind::light)) return "light";
            if (e.has(ComponentKind::camera)) return "camera";
            return "other";
        }
        if (const auto* t = e.get<Transform>()) {
            if (name == "position") return vec3_record(t->position);
            if (name == "yaw") return t->rotation.x;
            if (name == "pitch") return t->rotation.y;
            if (name == "roll") return t->rotation.z;
            if (name == "scale") return vec3_record(t->scale);
        }
        if (const auto* m = e.get<MeshRef>()) {
            if (name == "asset_id") return m->asset_id;
            if (name == "category_id") return static_cast<double>(m->category_id);
            if (name == "label_name" || name == "category") return ctx_.catalog->category_name(m->category_id);
        }
        if (const auto* l = e.get<SemanticLabel>()) {
            if (name == "instance_id") return static_cast<double>(l->instance_id);
            if (name == "semantic_id") return static_cast<double>(l->category_id);
        }
        if (const auto* m = e.get<MaterialRef>()) {
            if (name == "material_id") return m->material_id;
            if (name == "series_id") return m->series_id;
        }
        if (const auto* l = e.get<Light>()) {
            if (name == "intensity") return l->intensity;
            if (name == "color_temperature") return l->color_temperature;
            if (name == "light_type") return l->light_type == LightType::point ? "point" : "area";
        }
        if (const auto* c = e.get<Camera>()) {
            if (name == "model") return std::string(to_string(c->model));
            if (name == "fov") return c->fov_deg;
            if (name == "imageWidth") return static_cast<double>(c->image_width);
            if (name == "imageHeight") return static_cast<double>(c->image_height);
            if (name == "orthoHalfHeight") return c->ortho_half_height;
        }
        fail(pos, fmt::format("entity '{}' has no field '{}'", e.entity_id, name));
    }

    Value room_field(const Room& room, const std::string& name, Pos pos) const {
        if (name == "id" || name == "roomId") return room.room_id;
        if (name == "area") return room.area;
        if (name == "type") return std::string(to_string(room.room_type));
        if (name == "height") return room.height;
        if (name == "corners") {
            List out;
            for (const auto& c : room.corners) out.push_back(vec3_record({c.x, 0.0, c.y}));
            return out;
        }
        const auto in_room = [&](const Entity& e) { return e.room_id && *e.room_id == room.room_id; };
        if (name == "instances") {
            return entities_where(pos, [&](const Entity& e) { return in_room(e) && e.has(ComponentKind::mesh_ref); });
        }
        if (name == "lights") {
            return entities_where(pos, [&](const Entity& e) { return in_room(e) && e.has(ComponentKind::light); });
        }
        if (name == "cameras") {
            return entities_where(pos, [&](const Entity& e) { return in_room(e) && e.has(ComponentKind::camera); });
        }
        fail(pos, fmt::format("room has no field '{}'", name));
    }

    Value world_field(const std::string& name, Pos pos) const {
        const SceneDocument& s = scene(pos);
        if (name == "scene_id") return s.scene_id;
        if (name == "rooms") {
            List out;
            for (const auto& r : s.rooms) out.emplace_back(RoomRef{r.room_id});
            return out;
        }
        if (name == "entities") return entities_where(pos, [](const Entity&) { return true; });
        if (name == "instances") return entities_where(pos, [](const Entity& e) { return e.has(ComponentKind::mesh_ref); });
        if (name == "lights") return entities_where(pos, [](const Entity& e) { return e.has(ComponentKind::light); });
        if (name == "cameras") return entities_where(pos, [](const Entity& e) { return e.has(ComponentKind::camera); });
        if (name == "meta") {
            Record r;
            for (const auto& [k, v] : s.meta) r[k] = v;
            return r;
        }
        fail(pos, fmt::format("world has no field '{}'", name));
    }

    void set_entity_field(Entity& e, const std::string& name, const Value& v, Pos pos) {
        static const std::set<std::string> camera_attrs{"imageWidth",  "imageHeight",  "fov",  "model",
                                                        "orthoHalfHeight", "image_width", "image_height",
                                                        "ortho_half_height", "fov_deg"};
        if (camera_attrs.count(name) && e.has(ComponentKind::camera)) {
            AttrValue attr;
            if (const auto* d = std::get_if<double>(&v.v)) {
                attr = *d;
            } else if (const auto* s = std::get_if<std::string>(&v.v)) {
                attr = *s;
            } else {
                fail(pos, fmt::format("camera attribute '{}' needs a number or string, got {}", name, type_name(v)));
            }
            try {
                e = set_camera_attr(std::move(e), name, attr);
            } catch (const Error& err) {
                fail(pos, err.what());
            }
            return;
        }
        auto finite = [&](std::string_view what) {
            const double d = num(v, pos, what);
            if (!std::isfinite(d)) fail(pos, fmt::format("{} must be finite", what));
            return d;
        };
        if (auto* t = e.get<Transform>()) {
            if (name == "position") {
                const Vec3 p = point(v, pos, "position");
                if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) fail(pos, "position must be finite");
                t->position = p;
                return;
            }
            if (name == "yaw") return void(t->rotation.x = wrap_angle(finite("yaw")));
            if (name == "pitch") return void(t->rotation.y = wrap_angle(finite("pitch")));
            if (name == "roll") return void(t->rotation.z = wrap_angle(finite("roll")));
        }
        if (auto* l = e.get<Light>()) {
            if (name == "intensity") {
                const double d = finite("intensity");
                if (d < 0.0) fail(pos, "intensity must be >= 0");
                l->intensity = d;
                return;
            }
            if (name == "color_temperature") {
                const double d = finite("color_temperature");
                if (d < kMinColorTemperature || d > kMaxColorTemperature) {
                    fail(pos, fmt::format("color_temperature must be in [{}, {}]", kMinColorTemperature,
                                          kMaxColorTemperature));
                }
                l->color_temperature = d;
                return;
            }
        }
        fail(pos, fmt::format("field '{}' of entity '{}' cannot be assigned", name, e.entity_id));
    }

    // ---- expressions --------------------------------------------------

    Value* lookup(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return &f->second;
        }
        return nullptr;
    }

    Value eval(const Expr& e) {
        tick(e.pos);
        switch (e.kind) {
            case ExprKind::number: return e.number;
            case ExprKind::string: return e.text;
            case ExprKind::boolean: return e.boolean;
            case ExprKind::ident: {
                if (Value* v = lookup(e.text)) return *v;
                if (pixel_channels_ == 1 && (e.text == "r" || e.text == "g" || e.text == "b")) {
                    fail(e.pos, fmt::format("'{}' needs a 3-channel image", e.text));
                }
                fail(e.pos, fmt::format("unknown name '{}'", e.text));
            }
            case ExprKind::list: {
                List out;
                out.reserve(e.items.size());
                for (const auto& i : e.items) out.push_back(eval(*i));
                return out;
            }
            case ExprKind::record: {
                Record out;
                for (std::size_t i = 0; i < e.items.size(); ++i) out[e.keys[i]] = eval(*e.items[i]);
                return out;
            }
            case ExprKind::field: return field(eval(*e.items[0]), e.text, e.pos);
            case ExprKind::call: return call(e);
            case ExprKind::unary: {
                const Value v = eval(*e.items[0]);
                if (e.unary == UnaryOp::neg) return -num(v, e.pos, "operand of '-'");
                return !truth(v, e.pos, "operand of 'not'");
            }
            case ExprKind::binary: return binary(e);
        }
        fail(e.pos, "unsupported expression");
    }

    Value binary(const Expr& e) {
        const BinaryOp op = e.binary;
        if (op == BinaryOp::and_ || op == BinaryOp::or_) {
            const bool l = truth(eval(*e.items[0]), e.pos, fmt::format("left operand of '{}'", to_string(op)));
            if (op == BinaryOp::and_ && !l) return false;
            if (op == BinaryOp::or_ && l) return true;
            return truth(eval(*e.items[1]), e.pos, fmt::format("right operand of '{}'", to_string(op)));
        }
        const Value l = eval(*e.items[0]);
        const Value r = eval(*e.items[1]);
        switch (op) {
            case BinaryOp::eq: return equal(l, r);
            case BinaryOp::ne: return !equal(l, r);
            case BinaryOp::lt:
            case BinaryOp::le:
            case BinaryOp::gt:
            case BinaryOp::ge: {
                int cmp;
                if (l.is<double>() && r.is<double>()) {
                    const double a = std::get<double>(l.v), b = std::get<double>(r.v);
                    cmp = a < b ? -1 : (a > b ? 1 : 0);
                } else if (l.is<std::string>() && r.is<std::string>()) {
                    cmp = std::get<std::string>(l.v).compare(std::get<std::string>(r.v));
                } else {
                    fail(e.pos, fmt::format("cannot compare {} with {}", type_name(l), type_name(r)));
                }
                if (op == BinaryOp::lt) return cmp < 0;
                if (op == BinaryOp::le) return cmp <= 0;
                if (op == BinaryOp::gt) return cmp > 0;
                return cmp >= 0;
            }
            case BinaryOp::add:
                if (l.is<std::string>() && r.is<std::string>()) {
                    return std::get<std::string>(l.v) + std::get<std::string>(r.v);
                }
                if (l.is_list() && r.is_list()) {
                    if (l.list().size() + r.list().size() > ctx_.list_limit) fail(e.pos, "list too long");
                    List out = l.list();
                    out.insert(out.end(), r.list().begin(), r.list().end());
                    return out;
                }
                break;
            default:
                break;
        }
        if (!l.is<double>() || !r.is<double>()) {
            fail(e.pos, fmt::format("operator '{}' does not apply to {} and {}", to_string(op), type_name(l),
                                    type_name(r)));
        }
        const double a = std::get<double>(l.v), b = std::get<double>(r.v);
        double out = 0.0;
        switch (op) {
            case BinaryOp::add: out = a + b; break;
            case BinaryOp::sub: out = a - b; break;
            case BinaryOp::mul: out = a * b; break;
            case BinaryOp::div:
                if (b == 0.0) fail(e.pos, "division by zero");
                out = a / b;
                break;
            default: break;
        }
        if (!std::isfinite(out)) fail(e.pos, "arithmetic overflow");
        return out;
    }

    // ---- statements ---------------------------------------------------

    void exec_body(const std::vector<Stmt>& body) {
        scopes_.emplace_back();
        for (const auto& s : body) exec(s);
        scopes_.pop_back();
    }

    void assign_path(const Expr& target, Value value, Pos pos) {
        if (target.kind == ExprKind::ident) {
            Value* slot = lookup(target.text);
            if (slot == nullptr) fail(target.pos, fmt::format("assignment to undeclared name '{}'", target.text));
            if (slot->is<WorldRef>()) fail(target.pos, "'world' cannot be reassigned");
            *slot = std::move(value);
            return;
        }
        const Value obj = eval(*target.items[0]);
        if (obj.is<EntityRef>()) {
            set_entity_field(entity_of(obj, pos), target.text, value, target.pos);
            return;
        }
        if (obj.is_record()) {
            Record updated = obj.record();
            updated[target.text] = std::move(value);
            assign_path(*target.items[0], Value(std::move(updated)), pos);
            return;
        }
        fail(target.pos, fmt::format("cannot assign field '{}' of {}", target.text, type_name(obj)));
    }

    void exec(const Stmt& s) {
        tick(s.pos);
        switch (s.kind) {
            case StmtKind::let:
                scopes_.back()[s.name] = eval(*s.value);
                return;
            case StmtKind::assign:
                assign_path(*s.target, eval(*s.value), s.pos);
                return;
            case StmtKind::if_:
                if (truth(eval(*s.value), s.value->pos, "if condition")) {
                    exec_body(s.body);
                } else if (s.has_else) {
                    exec_body(s.else_body);
                }
                return;
            case StmtKind::for_: {
                const Value iter = eval(*s.value);
                if (!iter.is_list()) fail(s.value->pos, fmt::format("for needs a list, got {}", type_name(iter)));
                const auto items = std::get<std::shared_ptr<const List>>(iter.v);
                for (const auto& item : *items) {
                    scopes_.emplace_back();
                    scopes_.back()[s.name] = item;
                    exec_body(s.body);
                    scopes_.pop_back();
                }
                return;
            }
            case StmtKind::skip:
                throw SkipSignal{};
            case StmtKind::expr:
                eval(*s.value);
                return;
        }
    }

    // ---- builtins -----------------------------------------------------

    struct Args {
        const BuiltinSpec* spec;
        Binding binding;
        std::vector<Value> values;  // per call argument
        Value receiver;
        std::vector<Pos> positions;
        Pos call_pos;

        std::optional<Value> get(std::string_view param) const {
            for (std::size_t p = 0; p < spec->params.size(); ++p) {
                if (spec->params[p].name != param) continue;
                const int a = binding.param_arg[p];
                if (a == kReceiverArg) return receiver;
                if (a < 0) return std::nullopt;
                return values[static_cast<std::size_t>(a)];
            }
            return std::nullopt;
        }
        Value req(std::string_view param) const { return *get(param); }
        Pos pos_of(std::string_view param) const {
            for (std::size_t p = 0; p < spec->params.size(); ++p) {
                if (spec->params[p].name == param && binding.param_arg[p] >= 0) {
                    return positions[static_cast<std::size_t>(binding.param_arg[p])];
                }
            }
            return call_pos;
        }
    };

    Value call(const Expr& e) {
        const Expr& callee = *e.items[0];
        std::string name;
        bool has_receiver = false;
        Args a;
        a.call_pos = e.pos;
        if (callee.kind == ExprKind::ident) {
            name = callee.text;
        } else if (callee.kind == ExprKind::field) {
            name = callee.text;
            const Expr& obj = *callee.items[0];
            if (!(obj.kind == ExprKind::ident && obj.text == "world")) {
                has_receiver = true;
                a.receiver = eval(obj);
            }
        } else {
            fail(callee.pos, "only builtins can be called");
        }
        a.spec = find_builtin(name);
        if (a.spec == nullptr) fail(callee.pos, fmt::format("unknown builtin '{}'", name));
        if ((a.spec->stages & stage_bit(stage_)) == 0) {
            fail(callee.pos, fmt::format("builtin '{}' is not available in the {} stage", name, to_string(stage_)));
        }
        if (pixel_channels_ != 0 && !a.spec->pure) {
            fail(callee.pos, fmt::format("builtin '{}' cannot be used inside map_pixels", name));
        }
        std::vector<std::string> names;
        for (const auto& arg : e.args) names.push_back(arg.name);
        if (auto err = bind_arguments(*a.spec, names, has_receiver, a.binding)) fail(e.pos, *err);

        if (name == "map_pixels") return map_pixels(e, a);

        for (const auto& arg : e.args) {
            a.values.push_back(eval(*arg.value));
            a.positions.push_back(arg.value->pos);
        }
        try {
            return dispatch(name, e, a);
        } catch (const Error& err) {
            fail(e.pos, fmt::format("{}: {}", name, err.what()));
        }
    }

    Value dispatch(const std::string& name, const Expr& e, const Args& a) {
        const Pos pos = e.pos;
        if (name == "count") {
            const Value v = a.req("value");
            if (v.is_list()) return static_cast<double>(v.list().size());
            if (v.is_record()) return static_cast<double>(v.record().size());
            if (const auto* s = std::get_if<std::string>(&v.v)) return static_cast<double>(s->size());
            fail(a.pos_of("value"), fmt::format("count needs a list, record or string, got {}", type_name(v)));
        }
        if (name == "randomize_layout") {
            const Room& room = room_of(a.req("room"), a.pos_of("room"));
            if (auto w = a.get("world"); w && !w->is<WorldRef>()) fail(a.pos_of("world"), "second argument must be world");
            std::optional<int> iters = ctx_.layout_iterations;
            if (auto it = a.get("iterations")) iters = whole(*it, a.pos_of("iterations"), "iterations", 0, 1'000'000);
            const std::string room_id = room.room_id;
            const auto result = randomize_layout(scene(pos), room_id, *ctx_.catalog, *ctx_.rng, ctx_.layout, iters);
            return result.best_cost.total;
        }
        if (name == "replace_model") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            int k = ctx_.replace_k;
            if (auto kv = a.get("k")) k = whole(*kv, a.pos_of("k"), "k", 1, 1'000'000);
            const std::string id = ent.entity_id;
            replace_model(scene(pos), id, *ctx_.catalog, *ctx_.rng, k);
            return scene(pos).find_entity(id)->get<MeshRef>()->asset_id;
        }
        if (name == "replace_material") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            ent = replace_material(ent, *ctx_.catalog, *ctx_.rng);
            return ent.get<MaterialRef>()->material_id;
        }
        if (name == "tune_temp" || name == "tune_intensity") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            Light* light = ent.get<Light>();
            if (light == nullptr) fail(a.pos_of("id"), fmt::format("entity '{}' is not a light", ent.entity_id));
            LightMode mode = LightMode::free;
            if (auto m = a.get("mode")) {
                const auto parsed = parse_light_mode(str(*m, a.pos_of("mode"), "mode"));
                if (!parsed) fail(a.pos_of("mode"), "mode must be \"day\", \"night\" or \"free\"");
                mode = *parsed;
            }
            const bool temp = name == "tune_temp";
            *light = tune_light(*light, mode, *ctx_.rng, LightTune{temp, !temp});
            return temp ? light->color_temperature : light->intensity;
        }
        if (name == "set_attr") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            set_entity_field(ent, str(a.req("name"), a.pos_of("name"), "name"), a.req("value"), pos);
            return Value();
        }
        if (name == "add_trajectory") return add_trajectory(a, pos);
        if (name == "pick") {
            nlohmann::json rec = nlohmann::json::object();
            rec["type"] = to_json(a.req("type"));
            rec["id"] = to_json(a.req("id"));
            for (int idx : a.binding.extra) {
                rec[e.args[static_cast<std::size_t>(idx)].name] = to_json(a.values[static_cast<std::size_t>(idx)]);
            }
            if (ctx_.picks == nullptr) fail(pos, "pick is not available here");
            ctx_.picks->add(std::move(rec));
            return Value();
        }
        if (name == "attach_distribution") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            const auto kind = component_from_name(str(a.req("component"), a.pos_of("component"), "component"));
            if (!kind) fail(a.pos_of("component"), "unknown component");
            std::string field;
            if (auto f = a.get("field")) field = str(*f, a.pos_of("field"), "field");
            ent = attach_distribution(ent, *kind, field, descriptor(a));
            return Value();
        }
        if (name == "sample_component") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            const auto kind = component_from_name(str(a.req("component"), a.pos_of("component"), "component"));
            if (!kind) fail(a.pos_of("component"), "unknown component");
            const AssetCatalog& catalog = *ctx_.catalog;
            const SimilarityLookup similar = [&catalog](const std::string& asset, int k) {
                const int category = catalog.asset(asset).category_id;
                std::vector<std::string> out;
                for (auto& id : catalog.nearest_models(asset, k)) {
                    if (catalog.asset(id).category_id == category) out.push_back(std::move(id));
                }
                return out;
            };
            ent.components[*kind] = sample_component(ent, *kind, *ctx_.rng, similar);
            return Value();
        }
        if (name == "sample_transform") {
            Entity& ent = entity_of(a.req("id"), a.pos_of("id"));
            std::string field = "position";
            if (auto f = a.get("field")) field = str(*f, a.pos_of("field"), "field");
            ent = sample_transform(scene(pos), ent, field, descriptor(a), *ctx_.catalog, *ctx_.rng);
            return Value();
        }
        if (name == "gen_depth") {
            const NoiseKind kind = noise_kind_from_code(whole(a.req("noise"), a.pos_of("noise"), "noise", 0, 4));
            NoiseParams params = ctx_.noise;
            if (auto v = a.get("sigma")) params.gaussian_sigma = num(*v, a.pos_of("sigma"), "sigma");
            if (auto v = a.get("scale")) params.poisson_scale = num(*v, a.pos_of("scale"), "scale");
            if (auto v = a.get("p")) params.salt_pepper_p = num(*v, a.pos_of("p"), "p");
            if (auto v = a.get("sigma_disparity")) {
                params.kinect_sigma_disparity = num(*v, a.pos_of("sigma_disparity"), "sigma_disparity");
            }
            if (auto v = a.get("sigma_shift")) params.kinect_sigma_shift = num(*v, a.pos_of("sigma_shift"), "sigma_shift");
            double n = 0;
            for (auto& [view, files] : images(pos)) {
                auto it = files.find("camera_depth.png");
                if (it == files.end()) continue;
                Image noisy = apply_noise(it->second, kind, params, *ctx_.rng);
                files.insert_or_assign("camera_depth_noisy.png", std::move(noisy));
                ++n;
            }
            return n;
        }
        if (name == "remap_labels") {
            const std::string& mapping = str(a.req("mapping"), a.pos_of("mapping"), "mapping");
            double n = 0;
            for (auto& [view, files] : images(pos)) {
                auto it = files.find("camera_semantic.png");
                if (it == files.end()) continue;
                it->second = remap_labels(it->second, *ctx_.catalog, mapping);
                ++n;
            }
            return n;
        }
        if (name == "load_images") {
            const std::string& file = str(a.req("name"), a.pos_of("name"), "name");
            List out;
            for (const auto& [view, files] : images(pos)) {
                auto it = files.find(file);
                if (it == files.end()) continue;
                ImageRef ref{std::make_shared<const Image>(it->second), view, file};
                out.push_back(Record{{"view", view}, {"name", file}, {"image", ref}});
            }
            return out;
        }
        if (name == "save_files") {
            const std::string& view = str(a.req("view"), a.pos_of("view"), "view");
            const Value content = a.req("content");
            const auto* ref = std::get_if<ImageRef>(&content.v);
            if (ref == nullptr) fail(a.pos_of("content"), fmt::format("content must be an image, got {}", type_name(content)));
            std::string file = ref->name;
            if (auto n = a.get("name")) file = str(*n, a.pos_of("name"), "name");
            if (!valid_file_name(file)) fail(a.pos_of("name"), fmt::format("'{}' is not a valid .png file name", file));
            auto& views = images(pos);
            auto it = views.find(view);
            if (it == views.end()) fail(a.pos_of("view"), fmt::format("unknown view '{}'", view));
            it->second.insert_or_assign(file, *ref->image);
            return Value();
        }
        fail(pos, fmt::format("builtin '{}' is not implemented", name));
    }

    ViewImages& images(Pos pos) const {
        if (ctx_.images == nullptr) fail(pos, "no rendered images are available in this stage");
        return *ctx_.images;
    }

    DistributionDescriptor descriptor(const Args& a) const {
        const std::string& kind = str(a.req("kind"), a.pos_of("kind"), "kind");
        auto need = [&](std::string_view p) {
            auto v = a.get(p);
            if (!v) fail(a.call_pos, fmt::format("{} distribution needs '{}'", kind, p));
            return *v;
        };
        if (kind == "uniform") {
            return UniformDist{numbers(need("lo"), a.pos_of("lo"), "lo"), numbers(need("hi"), a.pos_of("hi"), "hi")};
        }
        if (kind == "gaussian") {
            return GaussianDist{numbers(need("mean"), a.pos_of("mean"), "mean"),
                                numbers(need("sigma"), a.pos_of("sigma"), "sigma")};
        }
        if (kind == "discrete") {
            const Value values = need("values");
            if (!values.is_list()) fail(a.pos_of("values"), "values must be a list");
            std::vector<double> weights(values.list().size(), 1.0);
            if (auto w = a.get("weights")) {
                weights = numbers(*w, a.pos_of("weights"), "weights");
                if (weights.size() != values.list().size()) fail(a.pos_of("weights"), "weights and values differ in length");
            }
            DiscreteDist d;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                const Value& item = values.list()[i];
                if (const auto* x = std::get_if<double>(&item.v)) {
                    d.entries.push_back({*x, weights[i]});
                } else if (const auto* s = std::get_if<std::string>(&item.v)) {
                    d.entries.push_back({*s, weights[i]});
                } else {
                    fail(a.pos_of("values"), "discrete values must be numbers or strings");
                }
            }
            return d;
        }
        if (kind == "similarity") {
            return SimilarityDist{whole(need("k"), a.pos_of("k"), "k", 1, 1'000'000)};
        }
        fail(a.pos_of("kind"), fmt::format("unknown distribution kind '{}'", kind));
    }

    Value add_trajectory(const Args& a, Pos pos) {
        const Entity& cam = entity_of(a.req("initCamera"), a.pos_of("initCamera"));
        if (!cam.has(ComponentKind::camera)) fail(a.pos_of("initCamera"), fmt::format("'{}' is not a camera", cam.entity_id));
        const std::string& id = str(a.req("id"), a.pos_of("id"), "id");
        if (!valid_trajectory_id(id)) fail(a.pos_of("id"), fmt::format("'{}' is not a valid trajectory id", id));
        if (ctx_.trajectories == nullptr) fail(pos, "trajectories are not available here");
        for (const auto& t : *ctx_.trajectories) {
            if (t.trajectory_id == id) fail(a.pos_of("id"), fmt::format("duplicate trajectory id '{}'", id));
        }
        if (scene(pos).find_entity(id) != nullptr) {
            fail(a.pos_of("id"), fmt::format("trajectory id '{}' collides with an entity id", id));
        }
        TrajectoryParams p;
        if (auto v = a.get("fps")) p.fps = num(*v, a.pos_of("fps"), "fps");
        if (auto v = a.get("speed")) p.speed = num(*v, a.pos_of("speed"), "speed");
        if (auto v = a.get("height")) p.height = num(*v, a.pos_of("height"), "height");
        if (auto v = a.get("collisionPadding")) p.collision_padding = num(*v, a.pos_of("collisionPadding"), "collisionPadding");
        if (auto v = a.get("time")) p.duration = num(*v, a.pos_of("time"), "time");
        if (auto v = a.get("type")) {
            const std::string t = normalized(str(*v, a.pos_of("type"), "type"));
            if (t == "random") {
                p.kind = TrajectoryKind::random;
            } else if (t == "keypoints") {
                p.kind = TrajectoryKind::keypoints;
            } else {
                fail(a.pos_of("type"), "type must be \"RANDOM\" or \"KEYPOINTS\"");
            }
        }
        if (auto v = a.get("keypoints")) {
            if (!v->is_list()) fail(a.pos_of("keypoints"), "keypoints must be a list of points");
            for (const auto& k : v->list()) p.keypoints.push_back(point(k, a.pos_of("keypoints"), "keypoint"));
        }
        if (p.kind == TrajectoryKind::keypoints && p.keypoints.size() < 2) {
            fail(a.pos_of("keypoints"), "KEYPOINTS trajectories need at least 2 keypoints");
        }
        TrajectoryResult result = generate_trajectory(scene(pos), *ctx_.catalog, cam, id, p, *ctx_.rng, ctx_.trajectory);
        const double frames = static_cast<double>(result.keyframes.size());
        ctx_.trajectories->push_back(std::move(result));
        return frames;
    }

    Value map_pixels(const Expr& e, Args& a) {
        const int image_arg = a.binding.param_arg[0];
        const int expr_arg = a.binding.param_arg[1];
        if (expr_arg < 0) fail(e.pos, "map_pixels needs an expression");
        const Value img = image_arg == kReceiverArg ? a.receiver : eval(*e.args[static_cast<std::size_t>(image_arg)].value);
        const auto* ref = std::get_if<ImageRef>(&img.v);
        if (ref == nullptr) fail(e.pos, fmt::format("map_pixels needs an image, got {}", type_name(img)));
        const Expr& body = *e.args[static_cast<std::size_t>(expr_arg)].value;
        const Image& src = *ref->image;
        Image out = src;
        const double max_value = src.max_value();

        scopes_.emplace_back();
        Scope& scope = scopes_.back();
        pixel_channels_ = src.channels;
        for (int y = 0; y < src.height; ++y) {
            for (int x = 0; x < src.width; ++x) {
                if (src.channels == 3) {
                    scope["r"] = static_cast<double>(src.at(x, y, 0));
                    scope["g"] = static_cast<double>(src.at(x, y, 1));
                    scope["b"] = static_cast<double>(src.at(x, y, 2));
                }
                for (int c = 0; c < src.channels; ++c) {
                    scope["v"] = static_cast<double>(src.at(x, y, c));
                    Value res;
                    try {
                        res = eval(body);
                    } catch (const RuntimeError& err) {
                        pixel_channels_ = 0;
                        fail(err.pos, fmt::format("{} at pixel ({}, {})", err.message, x, y));
                    }
                    double d;
                    if (const auto* n = std::get_if<double>(&res.v)) {
                        d = *n;
                    } else if (res.is_list() && res.list().size() == static_cast<std::size_t>(src.channels) &&
                               res.list()[static_cast<std::size_t>(c)].is<double>()) {
                        d = std::get<double>(res.list()[static_cast<std::size_t>(c)].v);
                    } else {
                        pixel_channels_ = 0;
                        fail(body.pos, fmt::format("map_pixels expression must yield a number, got {}", type_name(res)));
                    }
                    out.at(x, y, c) = static_cast<std::uint16_t>(std::clamp(std::round(d), 0.0, max_value));
                }
            }
        }
        pixel_channels_ = 0;
        scopes_.pop_back();
        return ImageRef{std::make_shared<const Image>(std::move(out)), ref->view, ref->name};
    }

    StageKind stage_;
    StageContext& ctx_;
    std::vector<Scope> scopes_;
    std::uint64_t steps_ = 0;
    int pixel_channels_ = 0;  // nonzero while evaluating a map_pixels body
};

}  // namespace

StageOutcome execute_stage(const Script& script, StageKind stage, StageContext& ctx) {
    StageOutcome out;
    const Stage* block = script.find(stage);
    if (block == nullptr) return out;
    if (ctx.catalog == nullptr || ctx.rng == nullptr) throw Error(Errc::invalid_argument, "stage context needs a catalog and rng");
    if (stage == StageKind::pixel) {
        if (ctx.scene != nullptr) throw Error(Errc::invalid_argument, "the pixel stage has no scene access");
        if (ctx.images == nullptr) throw Error(Errc::invalid_argument, "the pixel stage needs rendered images");
    } else if (ctx.scene == nullptr) {
        throw Error(Errc::invalid_argument, fmt::format("the {} stage needs a scene", to_string(stage)));
    }
    Interp interp(stage, ctx);
    try {
        interp.run(block->body);
    } catch (const SkipSignal&) {
        out.status = StageStatus::filtered;
    } catch (const RuntimeError& err) {
        out.status = StageStatus::failed;
        out.diagnostic = Diagnostic{err.pos, err.message, {}, {}};
    } catch (const Error& err) {
        out.status = StageStatus::failed;
        out.diagnostic = Diagnostic{block->pos, err.what(), {}, {}};
    }
    out.steps = interp.steps();
    return out;
}

}  // namespace forge::dsl
