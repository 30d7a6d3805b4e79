// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/placement.hpp"

#include <cmath>

namespace forge {

Vec3 transform_point(Vec3 p, const Transform& t) {
    return rotate_ypr(hadamard(p, t.scale), t.rotation) + t.position;
}

Aabb3 transform_box(const Aabb3& local, const Transform& t) {
    Aabb3 out;
    if (local.empty()) return out;
    for (int i = 0; i < 8; ++i) {
        const Vec3 corner{(i & 1) ? local.max.x : local.min.x, (i & 2) ? local.max.y : local.min.y,
                          (i & 4) ? local.max.z : local.min.z};
        out.expand(transform_point(corner, t));
    }
    return out;
}

std::optional<Aabb3> entity_world_aabb(const Entity& e, const AssetCatalog& catalog) {
    const auto* mesh = e.get<MeshRef>();
    const auto* xf = e.get<Transform>();
    if (mesh == nullptr || xf == nullptr) return std::nullopt;
    const AssetRecord* asset = catalog.find_asset(mesh->asset_id);
    if (asset == nullptr) return std::nullopt;
    return transform_box(asset->aabb, *xf);
}

std::vector<std::string> supported_children(const SceneDocument& scene, const std::string& supporter_id,
                                            const AssetCatalog& catalog, double tolerance) {
    std::vector<std::string> out;
    const Entity* sup = scene.find_entity(supporter_id);
    if (sup == nullptr) return out;
    const auto sup_box = entity_world_aabb(*sup, catalog);
    if (!sup_box) return out;
    const Rect2 top = footprint_of(*sup_box);
    for (const auto& e : scene.entities) {
        if (e.entity_id == supporter_id) continue;
        const auto box = entity_world_aabb(e, catalog);
        if (!box) continue;
        if (std::fabs(box->min.y - sup_box->max.y) <= tolerance && box->min.y > tolerance &&
            top.contains(footprint_of(*box).center())) {
            out.push_back(e.entity_id);
        }
    }
    return out;
}

double support_height(const SceneDocument& scene, const Entity& e, const AssetCatalog& catalog,
                      std::string* supporter, double tolerance) {
    const auto box = entity_world_aabb(e, catalog);
    if (!box || std::fabs(box->min.y) <= tolerance) return 0.0;
    const Vec2 c = footprint_of(*box).center();
    double best = 0.0;
    double best_gap = tolerance;
    bool found = false;
    for (const auto& other : scene.entities) {
        if (other.entity_id == e.entity_id) continue;
        const auto ob = entity_world_aabb(other, catalog);
        if (!ob) continue;
        const double gap = std::fabs(ob->max.y - box->min.y);
        if (gap <= best_gap && footprint_of(*ob).contains(c) && (!found || gap < best_gap)) {
            best = ob->max.y;
            best_gap = gap;
            found = true;
            if (supporter != nullptr) *supporter = other.entity_id;
        }
    }
    return best;
}

const Room* room_containing(const SceneDocument& scene, Vec2 p) {
    for (const auto& r : scene.rooms) {
        if (contains_point(r.corners, p)) return &r;
    }
    return nullptr;
}

}  // namespace forge
