// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "forge/camera.hpp"
#include "forge/geometry.hpp"

namespace forge {

/// Triangle with the labels the renderer needs at a hit.
struct SceneTriangle {
    Vec3 a;
    Vec3 b;
    Vec3 c;
    int semantic = 0;
    int instance = 0;
    std::array<double, 3> albedo{0.7, 0.7, 0.7};
};

struct Hit {
    double t = 0.0;
    int triangle = -1;
};

/// Intersection epsilon in mm; hits closer than this are ignored.
inline constexpr double kRayEpsilon = 1e-3;

/// Moller-Trumbore; nullopt on miss or t <= kRayEpsilon.
std::optional<double> intersect_triangle(const Ray& ray, const SceneTriangle& tri);

/// Reference closest hit over every triangle (ties go to the lowest index).
std::optional<Hit> intersect_linear(const std::vector<SceneTriangle>& tris, const Ray& ray,
                                    double t_max = std::numeric_limits<double>::infinity());

class Bvh {
  public:
    struct Node {
        Aabb3 box;
        int left = -1;   // interior: child indices
        int right = -1;
        int first = 0;   // leaf: range into order()
        int count = 0;
        bool leaf() const { return left < 0; }
    };

    static constexpr int kLeafSize = 4;

    Bvh() = default;
    /// Median split along the longest centroid axis.
    explicit Bvh(const std::vector<SceneTriangle>* tris);

    /// Closest hit with the same tie rule as intersect_linear, so both agree
    /// exactly.
    std::optional<Hit> intersect(const Ray& ray, double t_max = std::numeric_limits<double>::infinity()) const;
    /// Any hit with kRayEpsilon < t < t_max.
    bool occluded(const Ray& ray, double t_max) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    /// Triangle indices in leaf order.
    const std::vector<int>& order() const { return order_; }

  private:
    int build(int first, int count, int depth);

    const std::vector<SceneTriangle>* tris_ = nullptr;
    std::vector<Node> nodes_;
    std::vector<int> order_;
};

Aabb3 triangle_bounds(const SceneTriangle& t);
Vec3 geometric_normal(const SceneTriangle& t);

}  // namespace forge
