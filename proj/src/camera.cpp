// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/camera.hpp"

#include <cmath>
#include <numbers>

namespace forge {

namespace {
constexpr double kPi = std::numbers::pi;
}

CameraPose pose_look_at(Vec3 position, Vec3 look_at, Vec3 world_up) {
    CameraPose p;
    p.position = position;
    Vec3 f = look_at - position;
    if (length(f) < 1e-12) f = {0.0, 0.0, 1.0};
    p.forward = normalize(f);
    Vec3 r = cross(p.forward, world_up);
    if (length(r) < 1e-9) r = cross(p.forward, Vec3{0.0, 0.0, 1.0});  // looking straight up or down
    p.right = normalize(r);
    p.up = cross(p.right, p.forward);
    return p;
}

CameraPose pose_from_transform(const Transform& xf) {
    return pose_look_at(xf.position, xf.position + forward_from(xf.rotation.x, xf.rotation.y));
}

Ray primary_ray(const CameraView& view, int px, int py, double jx, double jy) {
    const Camera& cam = view.intrinsics;
    const CameraPose& pose = view.pose;
    const double w = cam.image_width;
    const double h = cam.image_height;
    switch (cam.model) {
        case CameraModelKind::perspective: {
            const double x = 2.0 * (px + jx) / w - 1.0;
            const double y = 1.0 - 2.0 * (py + jy) / h;
            const double t = std::tan(cam.fov_deg * kPi / 360.0);
            const Vec3 d = pose.forward + pose.right * (x * t) + pose.up * (y * t * h / w);
            return {pose.position, normalize(d)};
        }
        case CameraModelKind::orthographic: {
            const double x = 2.0 * (px + jx) / w - 1.0;
            const double y = 1.0 - 2.0 * (py + jy) / h;
            const double hh = cam.ortho_half_height;
            const double hw = hh * w / h;
            return {pose.position + pose.right * (x * hw) + pose.up * (y * hh), pose.forward};
        }
        case CameraModelKind::panoramic: break;
    }
    const double u = (px + jx) / w;
    const double v = (py + jy) / h;
    const double theta = 2.0 * kPi * u - kPi;
    const double phi = kPi / 2.0 - kPi * v;
    const Vec3 d = pose.right * (std::cos(phi) * std::sin(theta)) + pose.up * std::sin(phi) +
                   pose.forward * (std::cos(phi) * std::cos(theta));
    return {pose.position, d};
}

Vec2 panoramic_raster(const CameraView& view, Vec3 dir) {
    const Vec3 d = normalize(dir);
    const double x = dot(d, view.pose.right);
    const double z = dot(d, view.pose.forward);
    const double theta = std::atan2(x, z);
    // atan2 rather than asin keeps precision near the poles
    const double phi = std::atan2(dot(d, view.pose.up), std::hypot(x, z));
    const double u = (theta + kPi) / (2.0 * kPi);
    const double v = (kPi / 2.0 - phi) / kPi;
    return {u * view.intrinsics.image_width, v * view.intrinsics.image_height};
}

double depth_along(const CameraView& view, const Ray& ray, double t) {
    if (view.intrinsics.model == CameraModelKind::panoramic) return t;
    return t * dot(ray.dir, view.pose.forward);
}

}  // namespace forge
