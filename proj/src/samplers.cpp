// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/samplers.hpp"

#include <cmath>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/placement.hpp"

namespace forge {

std::optional<LightMode> parse_light_mode(std::string_view s) {
    if (s == "day") return LightMode::day;
    if (s == "night") return LightMode::night;
    if (s == "free") return LightMode::free;
    return std::nullopt;
}

LightRange light_range(LightMode mode) {
    switch (mode) {
        case LightMode::day: return {200.0, 1200.0, 5000.0, 6500.0};
        case LightMode::night: return {50.0, 500.0, 2700.0, 4000.0};
        case LightMode::free: break;
    }
    return {10.0, 3000.0, kMinColorTemperature, kMaxColorTemperature};
}

Light tune_light(const Light& light, const LightRange& range, RngStream& rng, LightTune which) {
    if (range.intensity_lo > range.intensity_hi || range.temperature_lo > range.temperature_hi) {
        throw Error(Errc::invalid_argument, "light range has lo > hi");
    }
    Light out = light;
    if (which.intensity) out.intensity = rng.uniform(range.intensity_lo, range.intensity_hi);
    if (which.temperature) out.color_temperature = rng.uniform(range.temperature_lo, range.temperature_hi);
    return out;
}

Light tune_light(const Light& light, LightMode mode, RngStream& rng, LightTune which) {
    return tune_light(light, light_range(mode), rng, which);
}

Entity replace_material(const Entity& entity, const AssetCatalog& catalog, RngStream& rng) {
    const auto* mesh = entity.get<MeshRef>();
    if (mesh == nullptr) {
        throw Error(Errc::invalid_argument, fmt::format("{} has no MeshRef", entity.entity_id));
    }
    Entity out = entity;
    const std::string material = catalog.sample_material(mesh->category_id, rng);
    out.set(MaterialRef{material, catalog.series_of(material)});
    return out;
}

std::vector<std::string> replace_model(SceneDocument& scene, const std::string& entity_id,
                                       const AssetCatalog& catalog, RngStream& rng, int k) {
    Entity* e = scene.find_entity(entity_id);
    if (e == nullptr) throw Error(Errc::not_found, fmt::format("no entity '{}'", entity_id));
    if (e->get<MeshRef>() == nullptr || e->get<Transform>() == nullptr) {
        throw Error(Errc::invalid_argument, fmt::format("{} needs MeshRef and Transform", entity_id));
    }
    const MeshRef mesh = *e->get<MeshRef>();
    auto sim = e->distributions.find(DistributionKey{ComponentKind::mesh_ref, "asset_id"});
    if (sim != e->distributions.end()) {
        if (const auto* s = std::get_if<SimilarityDist>(&sim->second)) k = s->k;
    }
    const int max_k = static_cast<int>(catalog.assets().size()) - 1;
    k = std::min(k, max_k);
    std::vector<std::string> candidates;
    if (k >= 1) {
        for (auto& id : catalog.nearest_models(mesh.asset_id, k)) {
            if (catalog.asset(id).category_id == mesh.category_id) candidates.push_back(std::move(id));
        }
    }
    if (candidates.empty()) {
        throw Error(Errc::runtime, fmt::format("no same-category model among the {} nearest to {}", k,
                                               mesh.asset_id));
    }
    const std::string chosen = candidates[rng.below(candidates.size())];

    const Aabb3 old_box = *entity_world_aabb(*e, catalog);
    const double support = support_height(scene, *e, catalog);
    const auto children = supported_children(scene, entity_id, catalog);

    Transform xf = *e->get<Transform>();
    Transform at_origin = xf;
    at_origin.position = {};
    const Aabb3 old_local = transform_box(catalog.asset(mesh.asset_id).aabb, at_origin);
    const Aabb3 new_local = transform_box(catalog.asset(chosen).aabb, at_origin);
    xf.position.x += old_local.center().x - new_local.center().x;
    xf.position.z += old_local.center().z - new_local.center().z;
    xf.position.y += (support - old_box.min.y) + (old_local.min.y - new_local.min.y);
    e->set(xf);
    e->get<MeshRef>()->asset_id = chosen;

    std::vector<std::string> changed{entity_id};
    const Aabb3 new_box = *entity_world_aabb(*e, catalog);
    const double lift = new_box.max.y - old_box.max.y;
    for (const auto& child_id : children) {
        Entity* child = scene.find_entity(child_id);
        if (lift != 0.0) child->get<Transform>()->position.y += lift;
        changed.push_back(child_id);
    }
    return changed;
}

namespace {

double draw_offset(const DistributionDescriptor& d, std::size_t dim, RngStream& rng) {
    if (const auto* u = std::get_if<UniformDist>(&d)) {
        const std::size_t i = u->lo.size() == 1 ? 0 : dim;
        return rng.uniform(u->lo.at(i), u->hi.at(i));
    }
    const auto& g = std::get<GaussianDist>(d);
    const std::size_t i = g.mean.size() == 1 ? 0 : dim;
    const std::size_t j = g.sigma.size() == 1 ? 0 : dim;
    return rng.normal(g.mean.at(i), g.sigma.at(j));
}

}  // namespace

Entity sample_transform(const SceneDocument& scene, const Entity& entity, std::string_view field,
                        const DistributionDescriptor& descriptor, const AssetCatalog& catalog,
                        RngStream& rng) {
    const auto* xf = entity.get<Transform>();
    if (xf == nullptr) throw Error(Errc::not_found, fmt::format("{} has no Transform", entity.entity_id));
    if (!std::holds_alternative<UniformDist>(descriptor) && !std::holds_alternative<GaussianDist>(descriptor)) {
        throw Error(Errc::incompatible, "sample_transform needs a uniform or gaussian descriptor");
    }
    if (auto msg = check_descriptor(descriptor)) throw Error(Errc::invalid_argument, *msg);
    const std::size_t dims = field == "position" ? 3 : (field == "yaw" ? 1 : 0);
    if (dims == 0) throw Error(Errc::invalid_argument, fmt::format("unknown transform field '{}'", field));
    const std::size_t given = std::visit(
        [](const auto& d) -> std::size_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, UniformDist>) return d.lo.size();
            else if constexpr (std::is_same_v<T, GaussianDist>) return std::max(d.mean.size(), d.sigma.size());
            else return 0;
        },
        descriptor);
    if (given != 1 && given != dims) {
        throw Error(Errc::incompatible, fmt::format("descriptor has {} dimensions, {} expects {}", given, field, dims));
    }

    Entity out = entity;
    Transform next = *xf;
    if (dims == 3) {
        for (int axis = 0; axis < 3; ++axis) next.position[axis] += draw_offset(descriptor, axis, rng);
    } else {
        const double dyaw = draw_offset(descriptor, 0, rng);
        if (dyaw != 0.0) next.rotation.x = wrap_angle(next.rotation.x + dyaw);
    }

    const Room* room = entity.room_id ? scene.find_room(*entity.room_id) : nullptr;
    const auto* mesh = entity.get<MeshRef>();
    const AssetRecord* asset = mesh != nullptr ? catalog.find_asset(mesh->asset_id) : nullptr;
    auto fits = [&](const Transform& t) {
        return contains_rect(room->corners, footprint_of(transform_box(asset->aabb, t)));
    };
    if (room != nullptr && asset != nullptr && fits(*xf) && !fits(next)) {
        if (dims == 1) {
            next = *xf;
        } else {
            const Vec3 delta = next.position - xf->position;
            double lo = 0.0;
            double hi = 1.0;
            for (int i = 0; i < 40; ++i) {
                const double mid = 0.5 * (lo + hi);
                Transform t = *xf;
                t.position = xf->position + delta * mid;
                if (fits(t)) lo = mid; else hi = mid;
            }
            next.position = xf->position + delta * lo;
        }
    }
    out.set(next);
    return out;
}

Entity set_camera_attr(Entity camera, std::string_view name, const AttrValue& value) {
    Camera* cam = camera.get<Camera>();
    if (cam == nullptr) throw Error(Errc::invalid_argument, fmt::format("{} is not a camera", camera.entity_id));
    auto number = [&]() {
        const double* v = std::get_if<double>(&value);
        if (v == nullptr) throw Error(Errc::validation, fmt::format("{} expects a number", name));
        return *v;
    };
    auto whole = [&]() {
        const double v = number();
        if (v != std::floor(v) || v < 1.0 || v > 16384.0) {
            throw Error(Errc::validation, fmt::format("{} must be a whole number in [1, 16384], got {}", name, v));
        }
        return static_cast<int>(v);
    };
    if (name == "imageWidth" || name == "image_width") {
        cam->image_width = whole();
    } else if (name == "imageHeight" || name == "image_height") {
        cam->image_height = whole();
    } else if (name == "fov" || name == "fov_deg") {
        const double v = number();
        if (!(v > 0.0 && v < 180.0)) throw Error(Errc::validation, fmt::format("fov {} outside (0, 180)", v));
        cam->fov_deg = v;
    } else if (name == "orthoHalfHeight" || name == "ortho_half_height") {
        const double v = number();
        if (!(v > 0.0)) throw Error(Errc::validation, "orthoHalfHeight must be > 0");
        cam->ortho_half_height = v;
    } else if (name == "model") {
        const auto* s = std::get_if<std::string>(&value);
        const auto model = s ? parse_camera_model(*s) : std::nullopt;
        if (!model) throw Error(Errc::validation, "model must be perspective, orthographic or panoramic");
        cam->model = *model;
    } else {
        throw Error(Errc::invalid_argument, fmt::format("unknown camera attribute '{}'", name));
    }
    return camera;
}

void PickSink::add(nlohmann::json record) {
    if (!record.is_object()) throw Error(Errc::validation, "pick record must be an object");
    auto type = record.find("type");
    auto id = record.find("id");
    if (type == record.end() || !type->is_string()) throw Error(Errc::validation, "pick record needs a string 'type'");
    if (id == record.end() || !(id->is_string() || id->is_number())) {
        throw Error(Errc::validation, "pick record needs an 'id'");
    }
    records_.push_back(std::move(record));
}

std::string PickSink::serialize() const {
    return nlohmann::json(records_).dump(2) + "\n";
}

}  // namespace forge
