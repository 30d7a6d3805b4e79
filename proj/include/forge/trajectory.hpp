// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/rng.hpp"
#include "forge/scene.hpp"

namespace forge {

struct Keyframe {
    double t = 0.0;
    Vec3 position;
    Vec3 look_at;
};

struct TrajectoryResult {
    std::string trajectory_id;
    std::string camera_id;
    double fps = 0.0;
    double duration = 0.0;
    std::vector<Keyframe> keyframes;
};

struct TrajectoryConfig {
    double drag = 2.0;       // 1/s
    double stiffness = 4.0;  // 1/s^2, vertical spring toward the target height
    int substeps = 10;       // integration steps per frame
    int max_start_samples = 1000;
};

/// Free space a camera may occupy: one room volume minus furniture boxes.
class ClearanceField {
  public:
    ClearanceField(const SceneDocument& scene, const Room& room, const AssetCatalog& catalog);
    /// Distance from p to the nearest wall, floor, ceiling or furniture box;
    /// negative outside the room.
    double clearance(Vec3 p) const;
    const Room& room() const { return room_; }
    const std::vector<Aabb3>& boxes() const { return boxes_; }

  private:
    Room room_;
    std::vector<Aabb3> boxes_;
};

/// Frame count for a duration: floor(fps * duration).
int keyframe_count(double fps, double duration);

/// Simulates (RANDOM) or interpolates (KEYPOINTS) a camera path inside the
/// camera's room. Throws Error(runtime) when no start position is free or a
/// keypoint path violates the padding.
TrajectoryResult generate_trajectory(const SceneDocument& scene, const AssetCatalog& catalog,
                                     const Entity& camera, const std::string& trajectory_id,
                                     const TrajectoryParams& params, RngStream& rng,
                                     const TrajectoryConfig& config = {});

}  // namespace forge
