// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

// ECS-D scene representation: every object is an entity holding typed
// components, and any sampled attribute of a component may carry a
// distribution descriptor that samplers draw from.

#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forge/geometry.hpp"
#include "forge/rng.hpp"

namespace forge {

enum class RoomType { bedroom, living, kitchen, bath, other };

std::string_view to_string(RoomType t);
std::optional<RoomType> parse_room_type(std::string_view s);

struct Room {
    std::string room_id;
    std::vector<Vec2> corners;  // mm, counter-clockwise in (x, z)
    double height = 2800.0;     // mm
    double area = 0.0;          // m^2, derived from corners
    RoomType room_type = RoomType::other;

    /// Builds a room and derives its area from the corner polygon.
    static Room make(std::string id, std::vector<Vec2> corners, double height, RoomType type);
    friend bool operator==(const Room&, const Room&) = default;
};

/// Shoelace area of a corner list in square meters.
double room_area_m2(std::span<const Vec2> corners);

// Components. The variant order below defines ComponentKind.

struct Transform {
    Vec3 position;              // mm
    Vec3 rotation;              // yaw, pitch, roll (radians)
    Vec3 scale{1.0, 1.0, 1.0};  // unitless
    friend bool operator==(const Transform&, const Transform&) = default;
};

struct MeshRef {
    std::string asset_id;
    int category_id = 0;
    friend bool operator==(const MeshRef&, const MeshRef&) = default;
};

struct MaterialRef {
    std::string material_id;
    std::string series_id;
    friend bool operator==(const MaterialRef&, const MaterialRef&) = default;
};

enum class LightType { point, area };

struct Light {
    double intensity = 800.0;           // lumens
    double color_temperature = 4000.0;  // kelvin
    LightType light_type = LightType::point;
    friend bool operator==(const Light&, const Light&) = default;
};

enum class CameraModelKind { perspective, orthographic, panoramic };

std::string_view to_string(CameraModelKind k);
std::optional<CameraModelKind> parse_camera_model(std::string_view s);

struct Camera {
    CameraModelKind model = CameraModelKind::perspective;
    double fov_deg = 60.0;               // horizontal, perspective only
    double ortho_half_height = 1500.0;   // mm, orthographic only
    int image_width = 128;
    int image_height = 128;
    friend bool operator==(const Camera&, const Camera&) = default;
};

enum class TrajectoryKind { random, keypoints };

struct TrajectoryParams {
    double fps = 3.0;
    double speed = 1200.0;             // mm/s
    double height = 1000.0;            // mm
    double collision_padding = 300.0;  // mm
    TrajectoryKind kind = TrajectoryKind::random;
    double duration = 5.0;             // s
    std::vector<Vec3> keypoints;       // mm
    friend bool operator==(const TrajectoryParams&, const TrajectoryParams&) = default;
};

struct SemanticLabel {
    int category_id = 0;
    int instance_id = 0;
    friend bool operator==(const SemanticLabel&, const SemanticLabel&) = default;
};

using Component =
    std::variant<Transform, MeshRef, MaterialRef, Light, Camera, TrajectoryParams, SemanticLabel>;

enum class ComponentKind {
    transform,
    mesh_ref,
    material_ref,
    light,
    camera,
    trajectory_params,
    semantic_label,
};

inline constexpr int kComponentKindCount = 7;

std::string_view to_string(ComponentKind k);
/// Accepts the schema names ("Transform", "MeshRef", ...).
std::optional<ComponentKind> parse_component_kind(std::string_view s);
inline ComponentKind kind_of(const Component& c) { return static_cast<ComponentKind>(c.index()); }

template <class T>
constexpr ComponentKind component_kind_v = [] {
    if constexpr (std::is_same_v<T, Transform>) return ComponentKind::transform;
    else if constexpr (std::is_same_v<T, MeshRef>) return ComponentKind::mesh_ref;
    else if constexpr (std::is_same_v<T, MaterialRef>) return ComponentKind::material_ref;
    else if constexpr (std::is_same_v<T, Light>) return ComponentKind::light;
    else if constexpr (std::is_same_v<T, Camera>) return ComponentKind::camera;
    else if constexpr (std::is_same_v<T, TrajectoryParams>) return ComponentKind::trajectory_params;
    else return ComponentKind::semantic_label;
}();

// Distribution descriptors ("D" in ECS-D).

struct UniformDist {
    std::vector<double> lo;
    std::vector<double> hi;
    friend bool operator==(const UniformDist&, const UniformDist&) = default;
};

struct GaussianDist {
    std::vector<double> mean;
    std::vector<double> sigma;
    friend bool operator==(const GaussianDist&, const GaussianDist&) = default;
};

using DiscreteValue = std::variant<double, std::string>;

struct DiscreteDist {
    struct Entry {
        DiscreteValue value;
        double weight = 1.0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;
    friend bool operator==(const DiscreteDist&, const DiscreteDist&) = default;
};

/// Draw among the k catalog assets nearest in feature space.
struct SimilarityDist {
    int k = 1;
    friend bool operator==(const SimilarityDist&, const SimilarityDist&) = default;
};

using DistributionDescriptor = std::variant<UniformDist, GaussianDist, DiscreteDist, SimilarityDist>;

std::string_view distribution_kind_name(const DistributionDescriptor& d);
/// Empty when the descriptor's own parameters are well formed.
std::optional<std::string> check_descriptor(const DistributionDescriptor& d);

struct DistributionKey {
    ComponentKind component;
    std::string field;
    auto operator<=>(const DistributionKey&) const = default;
};

struct Entity {
    std::string entity_id;
    std::optional<std::string> room_id;
    std::map<ComponentKind, Component> components;
    std::map<DistributionKey, DistributionDescriptor> distributions;

    bool has(ComponentKind k) const { return components.contains(k); }

    template <class T>
    const T* get() const {
        auto it = components.find(component_kind_v<T>);
        return it == components.end() ? nullptr : &std::get<T>(it->second);
    }
    template <class T>
    T* get() {
        auto it = components.find(component_kind_v<T>);
        return it == components.end() ? nullptr : &std::get<T>(it->second);
    }
    template <class T>
    void set(T value) {
        components.insert_or_assign(component_kind_v<T>, Component{std::move(value)});
    }

    friend bool operator==(const Entity&, const Entity&) = default;
};

struct SceneDocument {
    std::string scene_id;
    std::vector<Room> rooms;
    std::vector<Entity> entities;
    std::map<std::string, std::string> meta;

    const Room* find_room(std::string_view id) const;
    const Entity* find_entity(std::string_view id) const;
    Entity* find_entity(std::string_view id);

    friend bool operator==(const SceneDocument&, const SceneDocument&) = default;
};

enum class ViolationKind {
    duplicate_id,
    duplicate_room_id,
    unknown_room,
    invalid_polygon,
    area_mismatch,
    invalid_room,
    missing_transform,
    invalid_component,
    duplicate_instance,
    invalid_distribution,
};

std::string_view to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::string subject;  // offending room or entity id
    std::string message;
};

/// Every invariant violation in the document; empty means valid.
std::vector<Violation> validate_scene(const SceneDocument& scene);

/// Fields of a component that accept a distribution, in schema order.
std::vector<std::string_view> distribution_fields(ComponentKind kind);

/// Attaches `descriptor` to `field` of the entity's `kind` component. An empty
/// field selects the component's only distributable field. Throws
/// Error(incompatible) for descriptor/field mismatches and Error(not_found)
/// when the entity lacks the component.
Entity attach_distribution(Entity entity, ComponentKind kind, std::string_view field,
                           DistributionDescriptor descriptor);

/// Looks up the k feature-space neighbours of an asset (used by similarity
/// descriptors on MeshRef).
using SimilarityLookup = std::function<std::vector<std::string>(const std::string&, int)>;

/// Draws a new value for every field of the component that carries a
/// descriptor; fields without one are copied. Throws Error(not_found) when no
/// descriptor is attached to the component.
Component sample_component(const Entity& entity, ComponentKind kind, RngStream& rng,
                           const SimilarityLookup& similar = {});

// Legal ranges shared by validation and samplers.
inline constexpr double kMinColorTemperature = 1000.0;
inline constexpr double kMaxColorTemperature = 12000.0;

}  // namespace forge
