// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/bvh.hpp"
#include "forge/camera.hpp"
#include "forge/catalog.hpp"
#include "forge/image.hpp"
#include "forge/scene.hpp"

namespace forge {

/// Instance ids of room structure: kStructureInstanceBase + 3 * room_index +
/// {0 wall, 1 floor, 2 ceiling}.
inline constexpr int kStructureInstanceBase = 65000;

struct PointLight {
    Vec3 position;
    double intensity = 0.0;  // lumens
    std::array<double, 3> tint{1.0, 1.0, 1.0};
};

/// Triangles, lights and acceleration structure of one scene.
struct RenderScene {
    std::vector<SceneTriangle> triangles;
    std::vector<PointLight> lights;
    Bvh bvh;

    RenderScene() = default;
    RenderScene(const RenderScene&) = delete;
    RenderScene& operator=(const RenderScene&) = delete;
};

/// Throws Error(not_found) for mesh entities whose asset is missing.
std::unique_ptr<RenderScene> build_render_scene(const SceneDocument& scene, const AssetCatalog& catalog);

/// Normalised RGB tint for a colour temperature (max channel 1).
std::array<double, 3> temperature_tint(double kelvin);

enum class RenderMode { raycast, pathtrace };

std::optional<RenderMode> parse_render_mode(std::string_view s);
std::string_view to_string(RenderMode m);

struct RenderConfig {
    RenderMode mode = RenderMode::raycast;
    int samples = 4;   // pathtrace samples per pixel
    int bounces = 2;   // pathtrace indirect bounces
    int threads = 1;   // pixel-row workers
    std::uint64_t seed = 0;
};

/// Ambient fraction and the irradiance (lux) that maps to full brightness.
inline constexpr double kAmbient = 0.2;
inline constexpr double kReferenceLux = 100.0;

struct FrameSet {
    Image color;     // 8-bit RGB
    Image depth;     // 16-bit, mm, 0 = no hit
    Image normal;    // 8-bit RGB, round((n + 1) / 2 * 255)
    Image semantic;  // 16-bit category ids
    Image instance;  // 16-bit instance ids, 0 = background
    bool depth_clamped = false;
};

/// File names of the channels, in output order.
inline constexpr std::string_view kChannelFiles[] = {"camera_color.png", "camera_depth.png", "camera_normal.png",
                                                     "camera_semantic.png", "camera_instance.png"};

FrameSet render(const RenderScene& scene, const CameraView& view, const RenderConfig& config);

/// Radiance of a surface point under the scene's point lights (raycast
/// model without ambient), per channel, before albedo.
std::array<double, 3> direct_light(const RenderScene& scene, Vec3 point, Vec3 normal);

}  // namespace forge
