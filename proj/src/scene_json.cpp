// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/scene_json.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "forge/error.hpp"

namespace forge {

using nlohmann::json;

namespace {

json vec(Vec3 v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw Error(Errc::validation, "expected a 3-element array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string_view light_type_name(LightType t) { return t == LightType::point ? "point" : "area"; }

}  // namespace

json to_json(const Component& component) {
    json j;
    j["kind"] = std::string(to_string(kind_of(component)));
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Transform>) {
                j["position"] = vec(c.position);
                j["rotation"] = vec(c.rotation);
                j["scale"] = vec(c.scale);
            } else if constexpr (std::is_same_v<T, MeshRef>) {
                j["asset_id"] = c.asset_id;
                j["category_id"] = c.category_id;
            } else if constexpr (std::is_same_v<T, MaterialRef>) {
                j["material_id"] = c.material_id;
                j["series_id"] = c.series_id;
            } else if constexpr (std::is_same_v<T, Light>) {
                j["intensity"] = c.intensity;
                j["color_temperature"] = c.color_temperature;
                j["light_type"] = std::string(light_type_name(c.light_type));
            } else if constexpr (std::is_same_v<T, Camera>) {
                j["model"] = std::string(to_string(c.model));
                j["fov_deg"] = c.fov_deg;
                j["ortho_half_height"] = c.ortho_half_height;
                j["image_width"] = c.image_width;
                j["image_height"] = c.image_height;
            } else if constexpr (std::is_same_v<T, TrajectoryParams>) {
                j["fps"] = c.fps;
                j["speed"] = c.speed;
                j["height"] = c.height;
                j["collision_padding"] = c.collision_padding;
                j["type"] = c.kind == TrajectoryKind::random ? "RANDOM" : "KEYPOINTS";
                j["duration"] = c.duration;
                json kp = json::array();
                for (const auto& p : c.keypoints) kp.push_back(vec(p));
                j["keypoints"] = std::move(kp);
            } else {
                j["category_id"] = c.category_id;
                j["instance_id"] = c.instance_id;
            }
        },
        component);
    return j;
}

json to_json(const DistributionDescriptor& descriptor) {
    json j;
    j["kind"] = std::string(distribution_kind_name(descriptor));
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, UniformDist>) {
                j["lo"] = d.lo;
                j["hi"] = d.hi;
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                j["mean"] = d.mean;
                j["sigma"] = d.sigma;
            } else if constexpr (std::is_same_v<T, DiscreteDist>) {
                json values = json::array();
                for (const auto& e : d.entries) {
                    json v;
                    std::visit([&](const auto& x) { v["value"] = x; }, e.value);
                    v["weight"] = e.weight;
                    values.push_back(std::move(v));
                }
                j["values"] = std::move(values);
            } else {
                j["k"] = d.k;
            }
        },
        descriptor);
    return j;
}

json to_json(const SceneDocument& scene) {
    json rooms = json::array();
    for (const auto& r : scene.rooms) {
        json corners = json::array();
        for (const auto& c : r.corners) corners.push_back(json::array({c.x, c.y}));
        rooms.push_back({{"room_id", r.room_id},
                         {"room_type", std::string(to_string(r.room_type))},
                         {"height", r.height},
                         {"area", r.area},
                         {"corners", std::move(corners)}});
    }
    json entities = json::array();
    for (const auto& e : scene.entities) {
        json je;
        je["entity_id"] = e.entity_id;
        if (e.room_id) je["room_id"] = *e.room_id;
        json comps = json::array();
        for (const auto& [kind, c] : e.components) comps.push_back(to_json(c));
        je["components"] = std::move(comps);
        if (!e.distributions.empty()) {
            json dists = json::array();
            for (const auto& [key, d] : e.distributions) {
                json jd = to_json(d);
                jd["component"] = std::string(to_string(key.component));
                jd["field"] = key.field;
                dists.push_back(std::move(jd));
            }
            je["distributions"] = std::move(dists);
        }
        entities.push_back(std::move(je));
    }
    json meta = json::object();
    for (const auto& [k, v] : scene.meta) meta[k] = v;
    return {{"scene_id", scene.scene_id},
            {"rooms", std::move(rooms)},
            {"entities", std::move(entities)},
            {"meta", std::move(meta)}};
}

Component component_from_json(const json& j) {
    const std::string kind_name = j.at("kind").get<std::string>();
    const auto kind = parse_component_kind(kind_name);
    if (!kind) {
        throw Error(Errc::validation, fmt::format("unknown component kind '{}'", kind_name));
    }
    switch (*kind) {
        case ComponentKind::transform: {
            Transform t;
            t.position = vec3_from(j.at("position"));
            t.rotation = j.contains("rotation") ? vec3_from(j["rotation"]) : Vec3{};
            t.scale = j.contains("scale") ? vec3_from(j["scale"]) : Vec3{1, 1, 1};
            return t;
        }
        case ComponentKind::mesh_ref:
            return MeshRef{j.at("asset_id").get<std::string>(), j.at("category_id").get<int>()};
        case ComponentKind::material_ref:
            return MaterialRef{j.at("material_id").get<std::string>(),
                               j.value("series_id", std::string{})};
        case ComponentKind::light: {
            Light l;
            l.intensity = j.at("intensity").get<double>();
            l.color_temperature = j.at("color_temperature").get<double>();
            const std::string type = j.value("light_type", std::string("point"));
            if (type != "point" && type != "area") {
                throw Error(Errc::validation, fmt::format("unknown light_type '{}'", type));
            }
            l.light_type = type == "point" ? LightType::point : LightType::area;
            return l;
        }
        case ComponentKind::camera: {
            Camera c;
            const std::string model = j.value("model", std::string("perspective"));
            const auto m = parse_camera_model(model);
            if (!m) throw Error(Errc::validation, fmt::format("unknown camera model '{}'", model));
            c.model = *m;
            c.fov_deg = j.value("fov_deg", c.fov_deg);
            c.ortho_half_height = j.value("ortho_half_height", c.ortho_half_height);
            c.image_width = j.at("image_width").get<int>();
            c.image_height = j.at("image_height").get<int>();
            return c;
        }
        case ComponentKind::trajectory_params: {
            TrajectoryParams p;
            p.fps = j.at("fps").get<double>();
            p.speed = j.at("speed").get<double>();
            p.height = j.at("height").get<double>();
            p.collision_padding = j.at("collision_padding").get<double>();
            const std::string type = j.at("type").get<std::string>();
            if (type == "RANDOM") {
                p.kind = TrajectoryKind::random;
            } else if (type == "KEYPOINTS") {
                p.kind = TrajectoryKind::keypoints;
            } else {
                throw Error(Errc::validation, fmt::format("unknown trajectory type '{}'", type));
            }
            p.duration = j.at("duration").get<double>();
            if (j.contains("keypoints")) {
                for (const auto& k : j["keypoints"]) p.keypoints.push_back(vec3_from(k));
            }
            return p;
        }
        case ComponentKind::semantic_label:
            return SemanticLabel{j.at("category_id").get<int>(), j.at("instance_id").get<int>()};
    }
    throw Error(Errc::validation, "unreachable component kind");
}

DistributionDescriptor descriptor_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
        return UniformDist{j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>()};
    }
    if (kind == "gaussian") {
        return GaussianDist{j.at("mean").get<std::vector<double>>(),
                            j.at("sigma").get<std::vector<double>>()};
    }
    if (kind == "discrete") {
        DiscreteDist d;
        for (const auto& v : j.at("values")) {
            DiscreteDist::Entry e;
            const auto& value = v.at("value");
            if (value.is_string()) {
                e.value = value.get<std::string>();
            } else {
                e.value = value.get<double>();
            }
            e.weight = v.value("weight", 1.0);
            d.entries.push_back(std::move(e));
        }
        return d;
    }
    if (kind == "similarity") {
        return SimilarityDist{j.at("k").get<int>()};
    }
    throw Error(Errc::validation, fmt::format("unknown distribution kind '{}'", kind));
}

SceneDocument scene_from_json(const json& j) {
    try {
        SceneDocument doc;
        doc.scene_id = j.at("scene_id").get<std::string>();
        for (const auto& jr : j.at("rooms")) {
            Room r;
            r.room_id = jr.at("room_id").get<std::string>();
            const std::string type = jr.value("room_type", std::string("other"));
            const auto rt = parse_room_type(type);
            if (!rt) throw Error(Errc::validation, fmt::format("unknown room_type '{}'", type));
            r.room_type = *rt;
            r.height = jr.at("height").get<double>();
            for (const auto& c : jr.at("corners")) {
                if (!c.is_array() || c.size() != 2) {
                    throw Error(Errc::validation, "room corner must be [x, z]");
                }
                r.corners.push_back({c[0].get<double>(), c[1].get<double>()});
            }
            r.area = jr.contains("area") ? jr["area"].get<double>() : room_area_m2(r.corners);
            doc.rooms.push_back(std::move(r));
        }
        for (const auto& je : j.at("entities")) {
            Entity e;
            e.entity_id = je.at("entity_id").get<std::string>();
            if (je.contains("room_id") && !je["room_id"].is_null()) {
                e.room_id = je["room_id"].get<std::string>();
            }
            for (const auto& jc : je.at("components")) {
                Component c = component_from_json(jc);
                const ComponentKind k = kind_of(c);
                if (e.components.contains(k)) {
                    throw Error(Errc::validation,
                                fmt::format("entity {} has two {} components", e.entity_id,
                                            to_string(k)));
                }
                e.components.emplace(k, std::move(c));
            }
            if (je.contains("distributions")) {
                for (const auto& jd : je["distributions"]) {
                    const std::string comp = jd.at("component").get<std::string>();
                    const auto ck = parse_component_kind(comp);
                    if (!ck) throw Error(Errc::validation, fmt::format("unknown component '{}'", comp));
                    e.distributions.insert_or_assign(
                        DistributionKey{*ck, jd.at("field").get<std::string>()},
                        descriptor_from_json(jd));
                }
            }
            doc.entities.push_back(std::move(e));
        }
        if (j.contains("meta")) {
            for (const auto& [k, v] : j["meta"].items()) {
                doc.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
            }
        }
        return doc;
    } catch (const json::exception& ex) {
        throw Error(Errc::validation, fmt::format("scene JSON: {}", ex.what()));
    }
}

std::string serialize_scene(const SceneDocument& scene) { return to_json(scene).dump(1, '\t') + "\n"; }

SceneDocument parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw Error(Errc::validation, fmt::format("scene JSON: {}", ex.what()));
    }
    return scene_from_json(j);
}

SceneDocument read_scene_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

}  // namespace forge
