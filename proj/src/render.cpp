// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/render.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/placement.hpp"
#include "forge/rng.hpp"

namespace forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShadowOffset = 1e-2;  // mm along the normal

void add_quad(std::vector<SceneTriangle>& out, Vec3 a, Vec3 b, Vec3 c, Vec3 d, const SceneTriangle& proto) {
    SceneTriangle t = proto;
    t.a = a, t.b = b, t.c = c;
    out.push_back(t);
    t.a = a, t.b = c, t.c = d;
    out.push_back(t);
}

int structure_semantic(const AssetCatalog& catalog, const char* name, int fallback) {
    return catalog.category_id(name).value_or(fallback);
}

std::uint16_t encode_unit(double v) {
    return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Orthonormal frame around n for hemisphere sampling.
void onb(Vec3 n, Vec3& t, Vec3& b) {
    const Vec3 helper = std::fabs(n.x) > 0.9 ? Vec3{0.0, 1.0, 0.0} : Vec3{1.0, 0.0, 0.0};
    t = normalize(cross(helper, n));
    b = cross(n, t);
}

}  // namespace

std::optional<RenderMode> parse_render_mode(std::string_view s) {
    if (s == "raycast") return RenderMode::raycast;
    if (s == "pathtrace") return RenderMode::pathtrace;
    return std::nullopt;
}

std::string_view to_string(RenderMode m) { return m == RenderMode::raycast ? "raycast" : "pathtrace"; }

std::array<double, 3> temperature_tint(double kelvin) {
    const double t = std::clamp(kelvin, kMinColorTemperature, kMaxColorTemperature) / 100.0;
    double r, g, b;
    if (t <= 66.0) {
        r = 255.0;
        g = 99.4708025861 * std::log(t) - 161.1195681661;
        b = t <= 19.0 ? 0.0 : 138.5177312231 * std::log(t - 10.0) - 305.0447927307;
    } else {
        r = 329.698727446 * std::pow(t - 60.0, -0.1332047592);
        g = 288.1221695283 * std::pow(t - 60.0, -0.0755148492);
        b = 255.0;
    }
    std::array<double, 3> c{std::clamp(r, 0.0, 255.0), std::clamp(g, 0.0, 255.0), std::clamp(b, 0.0, 255.0)};
    const double m = std::max({c[0], c[1], c[2]});
    for (double& v : c) v /= m;
    return c;
}

std::unique_ptr<RenderScene> build_render_scene(const SceneDocument& scene, const AssetCatalog& catalog) {
    auto out = std::make_unique<RenderScene>();
    auto& tris = out->triangles;
    const int wall_id = structure_semantic(catalog, "wall", 1);
    const int floor_id = structure_semantic(catalog, "floor", 2);
    const int ceiling_id = structure_semantic(catalog, "ceiling", 3);

    for (std::size_t r = 0; r < scene.rooms.size(); ++r) {
        const Room& room = scene.rooms[r];
        const int base = kStructureInstanceBase + 3 * static_cast<int>(r);
        SceneTriangle wall;
        wall.semantic = wall_id;
        wall.instance = base;
        wall.albedo = {0.8, 0.78, 0.74};
        const auto& c = room.corners;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Vec2 a = c[i];
            const Vec2 b = c[(i + 1) % c.size()];
            add_quad(tris, {a.x, 0.0, a.y}, {b.x, 0.0, b.y}, {b.x, room.height, b.y}, {a.x, room.height, a.y}, wall);
        }
        SceneTriangle floor;
        floor.semantic = floor_id;
        floor.instance = base + 1;
        floor.albedo = {0.55, 0.45, 0.35};
        SceneTriangle ceiling;
        ceiling.semantic = ceiling_id;
        ceiling.instance = base + 2;
        ceiling.albedo = {0.9, 0.9, 0.9};
        for (const auto& tri : triangulate(c)) {
            const Vec2 p0 = c[static_cast<std::size_t>(tri[0])];
            const Vec2 p1 = c[static_cast<std::size_t>(tri[1])];
            const Vec2 p2 = c[static_cast<std::size_t>(tri[2])];
            floor.a = {p0.x, 0.0, p0.y}, floor.b = {p1.x, 0.0, p1.y}, floor.c = {p2.x, 0.0, p2.y};
            tris.push_back(floor);
            ceiling.a = {p0.x, room.height, p0.y}, ceiling.b = {p2.x, room.height, p2.y},
            ceiling.c = {p1.x, room.height, p1.y};
            tris.push_back(ceiling);
        }
    }

    for (std::size_t i = 0; i < scene.entities.size(); ++i) {
        const Entity& e = scene.entities[i];
        const auto* xf = e.get<Transform>();
        if (const auto* mesh = e.get<MeshRef>(); mesh != nullptr && xf != nullptr) {
            const AssetRecord* asset = catalog.find_asset(mesh->asset_id);
            if (asset == nullptr) {
                throw Error(Errc::not_found, fmt::format("entity {} references unknown asset {}", e.entity_id,
                                                         mesh->asset_id));
            }
            SceneTriangle proto;
            const auto* label = e.get<SemanticLabel>();
            proto.semantic = label ? label->category_id : mesh->category_id;
            proto.instance = label ? label->instance_id : 60000 + static_cast<int>(i % 5000);
            if (const auto* mat = e.get<MaterialRef>()) {
                if (const Material* m = catalog.find_material(mat->material_id)) proto.albedo = m->base_color;
            }
            for (const auto& t : asset->geometry) {
                proto.a = transform_point(t.a, *xf);
                proto.b = transform_point(t.b, *xf);
                proto.c = transform_point(t.c, *xf);
                tris.push_back(proto);
            }
        }
        if (const auto* light = e.get<Light>(); light != nullptr && xf != nullptr) {
            out->lights.push_back({xf->position, light->intensity, temperature_tint(light->color_temperature)});
        }
    }
    out->bvh = Bvh(&out->triangles);
    return out;
}

std::array<double, 3> direct_light(const RenderScene& scene, Vec3 point, Vec3 normal) {
    std::array<double, 3> sum{0.0, 0.0, 0.0};
    for (const auto& light : scene.lights) {
        const Vec3 to = light.position - point;
        const double r = length(to);
        if (r < 1.0) continue;
        const Vec3 dir = to / r;
        const double cos_theta = dot(normal, dir);
        if (cos_theta <= 0.0) continue;
        const Ray shadow{point + normal * kShadowOffset, dir};
        if (scene.bvh.occluded(shadow, r - kShadowOffset)) continue;
        const double r_m = r / 1000.0;
        const double lux = light.intensity / (4.0 * kPi * r_m * r_m) * cos_theta;
        for (int c = 0; c < 3; ++c) sum[static_cast<std::size_t>(c)] += light.tint[static_cast<std::size_t>(c)] * lux / kReferenceLux;
    }
    return sum;
}

FrameSet render(const RenderScene& scene, const CameraView& view, const RenderConfig& config) {
    const int w = view.intrinsics.image_width;
    const int h = view.intrinsics.image_height;
    if (w < 1 || h < 1) throw Error(Errc::invalid_argument, "image dimensions must be >= 1");
    FrameSet f;
    f.color = Image(w, h, 3, 8);
    f.depth = Image(w, h, 1, 16);
    f.normal = Image(w, h, 3, 8);
    f.semantic = Image(w, h, 1, 16);
    f.instance = Image(w, h, 1, 16);
    std::atomic<bool> clamped{false};

    auto shade_pixel = [&](int x, int y) {
        const Ray ray = primary_ray(view, x, y);
        const auto hit = scene.bvh.intersect(ray);
        if (!hit) return;
        const SceneTriangle& tri = scene.triangles[static_cast<std::size_t>(hit->triangle)];
        Vec3 n = geometric_normal(tri);
        if (dot(n, ray.dir) > 0.0) n = -n;
        double depth = std::round(depth_along(view, ray, hit->t));
        if (depth > 65535.0) {
            depth = 65535.0;
            clamped = true;
        }
        f.depth.at(x, y) = static_cast<std::uint16_t>(std::max(1.0, depth));
        f.normal.at(x, y, 0) = encode_unit((n.x + 1.0) / 2.0);
        f.normal.at(x, y, 1) = encode_unit((n.y + 1.0) / 2.0);
        f.normal.at(x, y, 2) = encode_unit((n.z + 1.0) / 2.0);
        f.semantic.at(x, y) = static_cast<std::uint16_t>(std::clamp(tri.semantic, 0, 65535));
        f.instance.at(x, y) = static_cast<std::uint16_t>(std::clamp(tri.instance, 0, 65535));

        std::array<double, 3> color{0.0, 0.0, 0.0};
        if (config.mode == RenderMode::raycast) {
            const auto direct = direct_light(scene, ray.origin + ray.dir * hit->t, n);
            for (std::size_t c = 0; c < 3; ++c) color[c] = tri.albedo[c] * (kAmbient + direct[c]);
        } else {
            RngStream rng(SeedHasher(0x9A7).add(config.seed).add(static_cast<std::uint64_t>(y) * w + x).finish());
            const int spp = std::max(1, config.samples);
            for (int s = 0; s < spp; ++s) {
                const double jx = rng.uniform();
                const double jy = rng.uniform();
                Ray r = primary_ray(view, x, y, jx, jy);
                std::array<double, 3> throughput{1.0, 1.0, 1.0};
                for (int bounce = 0; bounce <= config.bounces; ++bounce) {
                    const auto bh = scene.bvh.intersect(r);
                    if (!bh) break;
                    const SceneTriangle& bt = scene.triangles[static_cast<std::size_t>(bh->triangle)];
                    Vec3 bn = geometric_normal(bt);
                    if (dot(bn, r.dir) > 0.0) bn = -bn;
                    const Vec3 p = r.origin + r.dir * bh->t;
                    const auto direct = direct_light(scene, p, bn);
                    for (std::size_t c = 0; c < 3; ++c) {
                        const double ambient = bounce == 0 ? kAmbient : 0.0;
                        color[c] += throughput[c] * bt.albedo[c] * (ambient + direct[c]) / spp;
                        throughput[c] *= bt.albedo[c];
                    }
                    if (bounce == config.bounces) break;
                    const double r1 = rng.uniform();
                    const double r2 = rng.uniform();
                    const double phi = 2.0 * kPi * r1;
                    const double sr = std::sqrt(r2);
                    Vec3 t, b;
                    onb(bn, t, b);
                    const Vec3 d = t * (std::cos(phi) * sr) + b * (std::sin(phi) * sr) + bn * std::sqrt(1.0 - r2);
                    r = Ray{p + bn * kShadowOffset, normalize(d)};
                }
            }
        }
        for (int c = 0; c < 3; ++c) f.color.at(x, y, c) = encode_unit(color[static_cast<std::size_t>(c)]);
    };

    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int y = next_row++; y < h; y = next_row++) {
            for (int x = 0; x < w; ++x) shade_pixel(x, y);
        }
    };
    const int threads = std::clamp(config.threads, 1, 64);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    f.depth_clamped = clamped;
    return f;
}

}  // namespace forge
