// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "forge/camera.hpp"
#include "forge/rng.hpp"

using namespace forge;

namespace {

CameraView view_of(CameraModelKind model, int w, int h, Vec3 pos = {}, Vec3 target = {0, 0, 1000}) {
    Camera cam;
    cam.model = model;
    cam.image_width = w;
    cam.image_height = h;
    return {cam, pose_look_at(pos, target)};
}

}  // namespace

TEST_CASE("look-at basis is orthonormal and right-handed") {
    RngStream rng(2);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 target{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto p = pose_look_at({}, target);
        CHECK(length(p.forward) == doctest::Approx(1.0));
        CHECK(length(p.right) == doctest::Approx(1.0));
        CHECK(length(p.up) == doctest::Approx(1.0));
        CHECK(std::fabs(dot(p.forward, p.right)) < 1e-12);
        CHECK(std::fabs(dot(p.up, p.right)) < 1e-12);
        CHECK(length(cross(p.right, p.forward) - p.up) < 1e-12);
    }
    const auto down = pose_look_at({}, {0, -1, 0});
    CHECK(length(down.right) == doctest::Approx(1.0));
}

TEST_CASE("perspective centre ray is the forward axis") {
    const auto v = view_of(CameraModelKind::perspective, 64, 48);
    const Ray r = primary_ray(v, 32, 24, 0.0, 0.0);
    CHECK(length(r.dir - v.pose.forward) < 1e-12);
    // edge of the horizontal field of view at 60 degrees
    const Ray edge = primary_ray(v, 64, 24, 0.0, 0.0);
    CHECK(std::acos(dot(edge.dir, v.pose.forward)) == doctest::Approx(std::numbers::pi / 6));
    CHECK(dot(edge.dir, v.pose.right) > 0.0);
}

TEST_CASE("orthographic rays are parallel") {
    auto v = view_of(CameraModelKind::orthographic, 32, 32);
    const Ray a = primary_ray(v, 0, 0);
    const Ray b = primary_ray(v, 31, 17);
    CHECK(a.dir == b.dir);
    CHECK(a.origin != b.origin);
    CHECK(depth_along(v, a, 1234.0) == doctest::Approx(1234.0));
}

TEST_CASE("panoramic pixel mapping round trips") {
    const auto v = view_of(CameraModelKind::panoramic, 512, 256, {10, 20, 30}, {500, -300, 700});
    RngStream rng(7);
    for (int i = 0; i < 10000; ++i) {
        Vec3 d{rng.normal(), rng.normal(), rng.normal()};
        d = normalize(d);
        const Vec2 px = panoramic_raster(v, d);
        const int ix = std::min(511, static_cast<int>(std::floor(px.x)));
        const int iy = std::min(255, static_cast<int>(std::floor(px.y)));
        const Ray r = primary_ray(v, ix, iy, px.x - ix, px.y - iy);
        CHECK(std::fabs(r.dir.x - d.x) < 1e-9);
        CHECK(std::fabs(r.dir.y - d.y) < 1e-9);
        CHECK(std::fabs(r.dir.z - d.z) < 1e-9);
    }
}

TEST_CASE("depth conventions") {
    const auto persp = view_of(CameraModelKind::perspective, 64, 64);
    const Ray r = primary_ray(persp, 0, 0);
    CHECK(depth_along(persp, r, 1000.0) == doctest::Approx(1000.0 * dot(r.dir, persp.pose.forward)));
    const auto pano = view_of(CameraModelKind::panoramic, 64, 32);
    CHECK(depth_along(pano, primary_ray(pano, 3, 3), 1000.0) == 1000.0);
}
