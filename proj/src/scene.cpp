// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/scene.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "forge/error.hpp"

namespace forge {

namespace {

constexpr std::string_view kComponentNames[] = {"Transform", "MeshRef",          "MaterialRef",
                                                "Light",     "Camera",           "TrajectoryParams",
                                                "SemanticLabel"};

bool finite(Vec3 v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

std::optional<std::string> check_component(const Component& c) {
    return std::visit(
        [](const auto& v) -> std::optional<std::string> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Transform>) {
                if (!finite(v.position) || !finite(v.rotation) || !finite(v.scale)) {
                    return "non-finite transform";
                }
                if (v.scale.x <= 0.0 || v.scale.y <= 0.0 || v.scale.z <= 0.0) {
                    return "scale must be positive";
                }
            } else if constexpr (std::is_same_v<T, MeshRef>) {
                if (v.asset_id.empty()) return "empty asset_id";
            } else if constexpr (std::is_same_v<T, MaterialRef>) {
                if (v.material_id.empty()) return "empty material_id";
            } else if constexpr (std::is_same_v<T, Light>) {
                if (!(v.intensity > 0.0)) return "light intensity must be > 0";
                if (!(v.color_temperature >= kMinColorTemperature &&
                      v.color_temperature <= kMaxColorTemperature)) {
                    return "color temperature outside [1000, 12000] K";
                }
            } else if constexpr (std::is_same_v<T, Camera>) {
                if (!(v.fov_deg > 0.0 && v.fov_deg < 180.0)) return "fov_deg outside (0, 180)";
                if (!(v.ortho_half_height > 0.0)) return "ortho_half_height must be > 0";
                if (v.image_width < 1 || v.image_height < 1) return "image dimensions must be >= 1";
            } else if constexpr (std::is_same_v<T, TrajectoryParams>) {
                if (!(v.fps > 0.0) || !(v.speed > 0.0) || v.collision_padding < 0.0) {
                    return "trajectory fps/speed must be > 0 and padding >= 0";
                }
                if (v.kind == TrajectoryKind::keypoints && v.keypoints.empty()) {
                    return "KEYPOINTS trajectory without keypoints";
                }
            }
            return std::nullopt;
        },
        c);
}

std::size_t field_dims(ComponentKind kind, std::string_view field) {
    if (kind == ComponentKind::transform && field == "position") return 3;
    return 1;
}

double draw_scalar(const DistributionDescriptor& d, std::size_t dim, RngStream& rng) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UniformDist>) {
                const std::size_t i = v.lo.size() == 1 ? 0 : dim;
                return rng.uniform(v.lo[i], v.hi[i]);
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                const std::size_t i = v.mean.size() == 1 ? 0 : dim;
                const std::size_t j = v.sigma.size() == 1 ? 0 : dim;
                return rng.normal(v.mean[i], v.sigma[j]);
            } else {
                throw Error(Errc::incompatible, "descriptor does not produce numbers");
            }
        },
        d);
}

const DiscreteValue& draw_discrete(const DiscreteDist& d, RngStream& rng) {
    double total = 0.0;
    for (const auto& e : d.entries) total += e.weight;
    double u = rng.uniform() * total;
    const DiscreteDist::Entry* last_positive = nullptr;
    for (const auto& e : d.entries) {
        if (e.weight <= 0.0) continue;
        last_positive = &e;
        if (u < e.weight) return e.value;
        u -= e.weight;
    }
    return last_positive->value;
}

double draw_number(const DistributionDescriptor& d, std::size_t dim, RngStream& rng) {
    if (const auto* disc = std::get_if<DiscreteDist>(&d)) {
        const auto& v = draw_discrete(*disc, rng);
        if (const double* x = std::get_if<double>(&v)) return *x;
        throw Error(Errc::incompatible, "discrete descriptor holds strings for a numeric field");
    }
    return draw_scalar(d, dim, rng);
}

std::string draw_string(const DistributionDescriptor& d, RngStream& rng) {
    const auto* disc = std::get_if<DiscreteDist>(&d);
    if (disc == nullptr) throw Error(Errc::incompatible, "string field needs a discrete descriptor");
    const auto& v = draw_discrete(*disc, rng);
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw Error(Errc::incompatible, "discrete descriptor holds numbers for a string field");
}

}  // namespace

std::string_view to_string(RoomType t) {
    switch (t) {
        case RoomType::bedroom: return "bedroom";
        case RoomType::living: return "living";
        case RoomType::kitchen: return "kitchen";
        case RoomType::bath: return "bath";
        case RoomType::other: return "other";
    }
    return "other";
}

std::optional<RoomType> parse_room_type(std::string_view s) {
    for (RoomType t : {RoomType::bedroom, RoomType::living, RoomType::kitchen, RoomType::bath,
                       RoomType::other}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::string_view to_string(CameraModelKind k) {
    switch (k) {
        case CameraModelKind::perspective: return "perspective";
        case CameraModelKind::orthographic: return "orthographic";
        case CameraModelKind::panoramic: return "panoramic";
    }
    return "perspective";
}

std::optional<CameraModelKind> parse_camera_model(std::string_view s) {
    for (auto k : {CameraModelKind::perspective, CameraModelKind::orthographic,
                   CameraModelKind::panoramic}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string_view to_string(ComponentKind k) { return kComponentNames[static_cast<int>(k)]; }

std::optional<ComponentKind> parse_component_kind(std::string_view s) {
    for (int i = 0; i < kComponentKindCount; ++i) {
        if (kComponentNames[i] == s) return static_cast<ComponentKind>(i);
    }
    return std::nullopt;
}

std::string_view to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::duplicate_id: return "duplicate_id";
        case ViolationKind::duplicate_room_id: return "duplicate_room_id";
        case ViolationKind::unknown_room: return "unknown_room";
        case ViolationKind::invalid_polygon: return "invalid_polygon";
        case ViolationKind::area_mismatch: return "area_mismatch";
        case ViolationKind::invalid_room: return "invalid_room";
        case ViolationKind::missing_transform: return "missing_transform";
        case ViolationKind::invalid_component: return "invalid_component";
        case ViolationKind::duplicate_instance: return "duplicate_instance";
        case ViolationKind::invalid_distribution: return "invalid_distribution";
    }
    return "unknown";
}

double room_area_m2(std::span<const Vec2> corners) {
    return std::fabs(signed_area(corners)) / 1.0e6;
}

Room Room::make(std::string id, std::vector<Vec2> corners, double height, RoomType type) {
    Room r;
    r.room_id = std::move(id);
    r.corners = std::move(corners);
    r.height = height;
    r.room_type = type;
    r.area = room_area_m2(r.corners);
    return r;
}

const Room* SceneDocument::find_room(std::string_view id) const {
    for (const auto& r : rooms) {
        if (r.room_id == id) return &r;
    }
    return nullptr;
}

const Entity* SceneDocument::find_entity(std::string_view id) const {
    for (const auto& e : entities) {
        if (e.entity_id == id) return &e;
    }
    return nullptr;
}

Entity* SceneDocument::find_entity(std::string_view id) {
    for (auto& e : entities) {
        if (e.entity_id == id) return &e;
    }
    return nullptr;
}

std::string_view distribution_kind_name(const DistributionDescriptor& d) {
    static constexpr std::string_view names[] = {"uniform", "gaussian", "discrete", "similarity"};
    return names[d.index()];
}

std::optional<std::string> check_descriptor(const DistributionDescriptor& d) {
    return std::visit(
        [](const auto& v) -> std::optional<std::string> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UniformDist>) {
                if (v.lo.empty() || v.lo.size() != v.hi.size()) return "uniform needs lo/hi of equal length";
                for (std::size_t i = 0; i < v.lo.size(); ++i) {
                    if (!std::isfinite(v.lo[i]) || !std::isfinite(v.hi[i]) || v.lo[i] > v.hi[i]) {
                        return "uniform requires finite lo <= hi";
                    }
                }
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                if (v.mean.empty() || v.sigma.empty()) return "gaussian needs mean and sigma";
                if (v.sigma.size() != 1 && v.mean.size() != 1 && v.sigma.size() != v.mean.size()) {
                    return "gaussian mean/sigma length mismatch";
                }
                for (double s : v.sigma) {
                    if (!(s >= 0.0) || !std::isfinite(s)) return "gaussian sigma must be >= 0";
                }
                for (double m : v.mean) {
                    if (!std::isfinite(m)) return "gaussian mean must be finite";
                }
            } else if constexpr (std::is_same_v<T, DiscreteDist>) {
                double total = 0.0;
                for (const auto& e : v.entries) {
                    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) return "discrete weights must be >= 0";
                    total += e.weight;
                }
                if (!(total > 0.0)) return "discrete weights must sum to > 0";
            } else {
                if (v.k < 1) return "similarity k must be >= 1";
            }
            return std::nullopt;
        },
        d);
}

std::vector<Violation> validate_scene(const SceneDocument& scene) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind k, const std::string& subject, std::string msg) {
        out.push_back({k, subject, std::move(msg)});
    };

    std::set<std::string> room_ids;
    for (const auto& room : scene.rooms) {
        if (!room_ids.insert(room.room_id).second) {
            add(ViolationKind::duplicate_room_id, room.room_id, "room id appears more than once");
        }
        if (!is_simple(room.corners)) {
            add(ViolationKind::invalid_polygon, room.room_id, "corner polygon is not simple");
        } else if (signed_area(room.corners) <= 0.0) {
            add(ViolationKind::invalid_polygon, room.room_id, "corners are not counter-clockwise");
        }
        const double expected = room_area_m2(room.corners);
        if (!(std::fabs(room.area - expected) <= 1e-9 * std::max(1.0, std::fabs(expected)))) {
            add(ViolationKind::area_mismatch, room.room_id,
                fmt::format("stored area {} m2 but corners give {} m2", room.area, expected));
        }
        if (!(room.height > 0.0)) {
            add(ViolationKind::invalid_room, room.room_id, "room height must be > 0");
        }
    }

    std::set<std::string> entity_ids;
    std::set<int> instance_ids;
    for (const auto& e : scene.entities) {
        if (!entity_ids.insert(e.entity_id).second) {
            add(ViolationKind::duplicate_id, e.entity_id, "entity id appears more than once");
        }
        if (e.room_id && !room_ids.contains(*e.room_id)) {
            add(ViolationKind::unknown_room, e.entity_id,
                fmt::format("room_id '{}' names no room", *e.room_id));
        }
        if (e.has(ComponentKind::mesh_ref) && !e.has(ComponentKind::transform)) {
            add(ViolationKind::missing_transform, e.entity_id, "MeshRef without Transform");
        }
        for (const auto& [kind, comp] : e.components) {
            if (kind_of(comp) != kind) {
                add(ViolationKind::invalid_component, e.entity_id, "component stored under wrong kind");
            } else if (auto msg = check_component(comp)) {
                add(ViolationKind::invalid_component, e.entity_id,
                    fmt::format("{}: {}", to_string(kind), *msg));
            }
        }
        if (e.has(ComponentKind::mesh_ref)) {
            if (const auto* label = e.get<SemanticLabel>()) {
                if (!instance_ids.insert(label->instance_id).second) {
                    add(ViolationKind::duplicate_instance, e.entity_id,
                        fmt::format("instance_id {} reused", label->instance_id));
                }
            }
        }
        for (const auto& [key, desc] : e.distributions) {
            if (!e.has(key.component)) {
                add(ViolationKind::invalid_distribution, e.entity_id,
                    fmt::format("distribution on absent component {}", to_string(key.component)));
            } else if (auto msg = check_descriptor(desc)) {
                add(ViolationKind::invalid_distribution, e.entity_id, *msg);
            }
        }
    }
    return out;
}

std::vector<std::string_view> distribution_fields(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::transform: return {"position", "yaw"};
        case ComponentKind::mesh_ref: return {"asset_id"};
        case ComponentKind::material_ref: return {"material_id"};
        case ComponentKind::light: return {"intensity", "color_temperature"};
        case ComponentKind::camera: return {"fov_deg"};
        default: return {};
    }
}

Entity attach_distribution(Entity entity, ComponentKind kind, std::string_view field,
                           DistributionDescriptor descriptor) {
    const auto fields = distribution_fields(kind);
    if (fields.empty()) {
        throw Error(Errc::incompatible,
                    fmt::format("{} does not accept distributions", to_string(kind)));
    }
    if (field.empty()) {
        if (fields.size() != 1) {
            throw Error(Errc::invalid_argument,
                        fmt::format("{} has several fields; name one", to_string(kind)));
        }
        field = fields.front();
    }
    if (std::find(fields.begin(), fields.end(), field) == fields.end()) {
        throw Error(Errc::invalid_argument,
                    fmt::format("{} has no distributable field '{}'", to_string(kind), field));
    }
    if (!entity.has(kind)) {
        throw Error(Errc::not_found, fmt::format("entity {} has no {} component", entity.entity_id,
                                                 to_string(kind)));
    }
    if (auto msg = check_descriptor(descriptor)) {
        throw Error(Errc::invalid_argument, *msg);
    }

    const bool is_string_field = kind == ComponentKind::mesh_ref || kind == ComponentKind::material_ref;
    const bool compatible = std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, SimilarityDist>) {
                return kind == ComponentKind::mesh_ref;
            } else if constexpr (std::is_same_v<T, DiscreteDist>) {
                for (const auto& e : d.entries) {
                    if (std::holds_alternative<std::string>(e.value) != is_string_field) return false;
                }
                return field_dims(kind, field) == 1;
            } else if constexpr (std::is_same_v<T, UniformDist>) {
                return !is_string_field &&
                       (d.lo.size() == 1 || d.lo.size() == field_dims(kind, field));
            } else {
                const std::size_t n = field_dims(kind, field);
                return !is_string_field && (d.mean.size() == 1 || d.mean.size() == n) &&
                       (d.sigma.size() == 1 || d.sigma.size() == n);
            }
        },
        descriptor);
    if (!compatible) {
        throw Error(Errc::incompatible,
                    fmt::format("{} descriptor is incompatible with {}.{}",
                                distribution_kind_name(descriptor), to_string(kind), field));
    }
    entity.distributions.insert_or_assign(DistributionKey{kind, std::string(field)},
                                          std::move(descriptor));
    return entity;
}

Component sample_component(const Entity& entity, ComponentKind kind, RngStream& rng,
                           const SimilarityLookup& similar) {
    auto it = entity.components.find(kind);
    if (it == entity.components.end()) {
        throw Error(Errc::not_found, fmt::format("entity {} has no {} component", entity.entity_id,
                                                 to_string(kind)));
    }
    auto descriptor_for = [&](std::string_view field) -> const DistributionDescriptor* {
        auto d = entity.distributions.find(DistributionKey{kind, std::string(field)});
        return d == entity.distributions.end() ? nullptr : &d->second;
    };
    bool any = false;
    for (auto f : distribution_fields(kind)) {
        any = any || descriptor_for(f) != nullptr;
    }
    if (!any) {
        throw Error(Errc::not_found, fmt::format("no distribution attached to {}.{}",
                                                 entity.entity_id, to_string(kind)));
    }

    Component out = it->second;
    std::visit(
        [&](auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Transform>) {
                if (const auto* d = descriptor_for("position")) {
                    for (int axis = 0; axis < 3; ++axis) {
                        c.position[axis] = draw_number(*d, static_cast<std::size_t>(axis), rng);
                    }
                }
                if (const auto* d = descriptor_for("yaw")) {
                    c.rotation.x = draw_number(*d, 0, rng);
                }
            } else if constexpr (std::is_same_v<T, Light>) {
                if (const auto* d = descriptor_for("intensity")) {
                    c.intensity = std::max(1.0, draw_number(*d, 0, rng));
                }
                if (const auto* d = descriptor_for("color_temperature")) {
                    c.color_temperature = std::clamp(draw_number(*d, 0, rng), kMinColorTemperature,
                                                     kMaxColorTemperature);
                }
            } else if constexpr (std::is_same_v<T, Camera>) {
                if (const auto* d = descriptor_for("fov_deg")) {
                    c.fov_deg = std::clamp(draw_number(*d, 0, rng), 1.0, 179.0);
                }
            } else if constexpr (std::is_same_v<T, MaterialRef>) {
                if (const auto* d = descriptor_for("material_id")) {
                    c.material_id = draw_string(*d, rng);
                }
            } else if constexpr (std::is_same_v<T, MeshRef>) {
                if (const auto* d = descriptor_for("asset_id")) {
                    if (const auto* sim = std::get_if<SimilarityDist>(d)) {
                        if (!similar) {
                            throw Error(Errc::invalid_argument,
                                        "similarity sampling needs a catalog lookup");
                        }
                        const auto pool = similar(c.asset_id, sim->k);
                        if (pool.empty()) {
                            throw Error(Errc::not_found, "similarity candidate set is empty");
                        }
                        c.asset_id = pool[rng.below(pool.size())];
                    } else {
                        c.asset_id = draw_string(*d, rng);
                    }
                }
            }
        },
        out);
    return out;
}

}  // namespace forge
