// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "forge/geometry.hpp"
#include "forge/scene.hpp"

namespace forge {

/// Right-handed, y-up camera basis: right = forward x world_up, up = right x forward.
struct CameraPose {
    Vec3 position;
    Vec3 forward{0.0, 0.0, 1.0};
    Vec3 right{-1.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
};

CameraPose pose_look_at(Vec3 position, Vec3 look_at, Vec3 world_up = {0.0, 1.0, 0.0});
/// Pose from an entity transform: forward from (yaw, pitch); roll is ignored.
CameraPose pose_from_transform(const Transform& xf);

struct CameraView {
    Camera intrinsics;
    CameraPose pose;
};

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit
};

/// Ray through raster position (px + jx, py + jy); jitter in [0, 1)^2, 0.5
/// is the pixel centre. Perspective fov is horizontal.
Ray primary_ray(const CameraView& view, int px, int py, double jx = 0.5, double jy = 0.5);

/// Continuous raster coordinates (x, y) = (u * W, v * H) of a world
/// direction under the equirectangular model.
Vec2 panoramic_raster(const CameraView& view, Vec3 dir);

/// Depth convention: axial (along forward) for perspective and orthographic,
/// radial (ray length) for panoramic.
double depth_along(const CameraView& view, const Ray& ray, double t);

}  // namespace forge
