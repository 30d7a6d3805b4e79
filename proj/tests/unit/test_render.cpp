// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "forge/camera.hpp"
#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/render.hpp"

using namespace forge;

namespace {

SceneDocument empty_room(double w, double d) {
    SceneDocument s;
    s.scene_id = "room";
    s.rooms.push_back(test::rect_room("r0", w, d));
    return s;
}

CameraView camera_at(Vec3 pos, Vec3 target, CameraModelKind model, int w, int h) {
    Camera c;
    c.model = model;
    c.image_width = w;
    c.image_height = h;
    return {c, pose_look_at(pos, target)};
}

}  // namespace

TEST_CASE("axial depth of a facing wall is constant") {
    const auto scene = empty_room(10000, 10000);
    const auto rs = build_render_scene(scene, test::catalog());
    const auto view = camera_at({5000, 1400, 2000}, {5000, 1400, 3000}, CameraModelKind::perspective, 64, 64);
    const auto f = render(*rs, view, {});
    int wall_pixels = 0;
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            if (f.instance.at(x, y) != kStructureInstanceBase) continue;
            CHECK(f.depth.at(x, y) == 8000);
            ++wall_pixels;
        }
    }
    CHECK(wall_pixels > 1000);
    CHECK_FALSE(f.depth_clamped);
}

TEST_CASE("panoramic floor depth matches the ray-plane distance") {
    const auto scene = empty_room(20000, 20000);
    const auto rs = build_render_scene(scene, test::catalog());
    const auto view = camera_at({10000, 1400, 10000}, {10000, 1400, 11000}, CameraModelKind::panoramic, 128, 64);
    const auto f = render(*rs, view, {});
    int floor_pixels = 0;
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 128; ++x) {
            if (f.instance.at(x, y) != kStructureInstanceBase + 1) continue;
            const Ray r = primary_ray(view, x, y);
            const double analytic = 1400.0 / -r.dir.y;
            if (analytic > 65535.0) continue;
            CHECK(std::fabs(f.depth.at(x, y) - analytic) <= 0.5);
            ++floor_pixels;
        }
    }
    CHECK(floor_pixels > 500);
}

TEST_CASE("label channels agree with a brute-force intersector") {
    const auto& cat = test::catalog();
    for (int i = 0; i < 3; ++i) {
        const auto scene = generate_scene(51, i, cat);
        const auto rs = build_render_scene(scene, cat);
        for (const auto& e : scene.entities) {
            if (!e.has(ComponentKind::camera)) continue;
            Camera c = *e.get<Camera>();
            c.image_width = 48;
            c.image_height = 40;
            const CameraView view{c, pose_from_transform(*e.get<Transform>())};
            const auto f = render(*rs, view, {});
            for (int y = 0; y < 40; ++y) {
                for (int x = 0; x < 48; ++x) {
                    const Ray ray = primary_ray(view, x, y);
                    const auto hit = intersect_linear(rs->triangles, ray);
                    if (!hit) {
                        CHECK(f.depth.at(x, y) == 0);
                        CHECK(f.instance.at(x, y) == 0);
                        continue;
                    }
                    const auto& t = rs->triangles[static_cast<std::size_t>(hit->triangle)];
                    CHECK(f.semantic.at(x, y) == t.semantic);
                    CHECK(f.instance.at(x, y) == t.instance);
                    const double axial = dot(ray.dir * hit->t, view.pose.forward);
                    CHECK(std::fabs(f.depth.at(x, y) - axial) <= 0.5);
                }
            }
        }
    }
}

TEST_CASE("output does not depend on thread count") {
    const auto& cat = test::catalog();
    const auto scene = generate_scene(52, 0, cat);
    const auto rs = build_render_scene(scene, cat);
    const Entity* cam = nullptr;
    for (const auto& e : scene.entities) {
        if (e.has(ComponentKind::camera)) {
            cam = &e;
            break;
        }
    }
    REQUIRE(cam != nullptr);
    Camera c = *cam->get<Camera>();
    c.image_width = 40;
    c.image_height = 30;
    const CameraView view{c, pose_from_transform(*cam->get<Transform>())};
    for (auto mode : {RenderMode::raycast, RenderMode::pathtrace}) {
        RenderConfig one;
        one.mode = mode;
        one.seed = 77;
        RenderConfig many = one;
        many.threads = 3;
        const auto a = render(*rs, view, one);
        const auto b = render(*rs, view, many);
        CHECK(a.color == b.color);
        CHECK(a.depth == b.depth);
        CHECK(a.normal == b.normal);
        CHECK(a.semantic == b.semantic);
        CHECK(a.instance == b.instance);
    }
}

TEST_CASE("frame formats") {
    const auto scene = empty_room(4000, 4000);
    const auto rs = build_render_scene(scene, test::catalog());
    const auto f = render(*rs, camera_at({2000, 1400, 500}, {2000, 1400, 1500}, CameraModelKind::perspective, 16, 8), {});
    CHECK(f.color.channels == 3);
    CHECK(f.color.bit_depth == 8);
    CHECK(f.depth.bit_depth == 16);
    CHECK(f.normal.channels == 3);
    CHECK(f.semantic.bit_depth == 16);
    CHECK(f.instance.width == 16);
    CHECK(f.instance.height == 8);
    // the far wall faces the camera, so its normal is -z
    CHECK(f.normal.at(8, 4, 2) == 0);
}

TEST_CASE("colour temperature tint") {
    const auto warm = temperature_tint(2700);
    const auto cool = temperature_tint(10000);
    CHECK(warm[0] == 1.0);
    CHECK(warm[2] < warm[1]);
    CHECK(cool[2] == 1.0);
    CHECK(cool[0] < 1.0);
    const auto white = temperature_tint(6600);
    CHECK(white[0] > 0.95);
    CHECK(white[2] > 0.95);
}

TEST_CASE("direct light falls off with distance") {
    const auto scene = empty_room(4000, 4000);
    auto rs = build_render_scene(scene, test::catalog());
    rs->lights.push_back({{2000, 2000, 2000}, 1000.0, {1, 1, 1}});
    const auto near = direct_light(*rs, {2000, 0, 2000}, {0, 1, 0});
    const auto far = direct_light(*rs, {3500, 0, 3500}, {0, 1, 0});
    CHECK(near[0] > far[0]);
    CHECK(direct_light(*rs, {2000, 0, 2000}, {0, -1, 0})[0] == 0.0);
}

TEST_CASE("unknown assets are reported") {
    auto scene = empty_room(4000, 4000);
    auto e = test::mesh_entity("x", "r0", test::asset_of("sofa"), {2000, 0, 2000});
    e.get<MeshRef>()->asset_id = "missing";
    scene.entities.push_back(e);
    CHECK_THROWS_AS(build_render_scene(scene, test::catalog()), Error);
}
