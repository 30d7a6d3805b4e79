// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/scene.hpp"

namespace forge {

/// World-space AABB of a local box under scale, then yaw-pitch-roll, then
/// translation.
Aabb3 transform_box(const Aabb3& local, const Transform& t);
Vec3 transform_point(Vec3 p, const Transform& t);

/// World AABB of a mesh entity, or nullopt when it has no MeshRef/Transform or
/// the asset is unknown.
std::optional<Aabb3> entity_world_aabb(const Entity& e, const AssetCatalog& catalog);

inline Rect2 footprint_of(const Aabb3& box) { return {{box.min.x, box.min.z}, {box.max.x, box.max.z}}; }

/// Mesh entities whose world AABB bottom rests (within `tolerance` mm) on the
/// top of `supporter` and whose footprint centre lies over it.
std::vector<std::string> supported_children(const SceneDocument& scene, const std::string& supporter_id,
                                            const AssetCatalog& catalog, double tolerance = 5.0);

/// Height of the surface an entity stands on: the top of a supporting mesh
/// entity when the entity's bottom is within `tolerance` of it, else 0 (floor).
/// The supporter id is returned through `supporter` when one is found.
double support_height(const SceneDocument& scene, const Entity& e, const AssetCatalog& catalog,
                      std::string* supporter = nullptr, double tolerance = 5.0);

/// The room whose polygon contains the point, or nullptr.
const Room* room_containing(const SceneDocument& scene, Vec2 p);

}  // namespace forge
