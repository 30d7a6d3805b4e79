// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/bvh.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

namespace {

// Slab test against a box. Boxes are padded at build time, so a triangle hit
// at t always lies within [tmin, tmax] of every ancestor box.
bool ray_box(const Ray& ray, const Aabb3& box, double t_max, double& t_enter) {
    double lo = 0.0;
    double hi = t_max;
    for (int a = 0; a < 3; ++a) {
        const double o = ray.origin[a];
        const double d = ray.dir[a];
        if (d == 0.0) {
            if (o < box.min[a] || o > box.max[a]) return false;
            continue;
        }
        const double inv = 1.0 / d;
        double t0 = (box.min[a] - o) * inv;
        double t1 = (box.max[a] - o) * inv;
        if (t0 > t1) std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        if (lo > hi) return false;
    }
    t_enter = lo;
    return true;
}

bool closer(double t, int id, const std::optional<Hit>& best) {
    return !best || t < best->t || (t == best->t && id < best->triangle);
}

}  // namespace

Aabb3 triangle_bounds(const SceneTriangle& t) {
    Aabb3 b;
    b.expand(t.a);
    b.expand(t.b);
    b.expand(t.c);
    return b;
}

Vec3 geometric_normal(const SceneTriangle& t) { return normalize(cross(t.b - t.a, t.c - t.a)); }

std::optional<double> intersect_triangle(const Ray& ray, const SceneTriangle& tri) {
    const Vec3 e1 = tri.b - tri.a;
    const Vec3 e2 = tri.c - tri.a;
    const Vec3 p = cross(ray.dir, e2);
    const double det = dot(e1, p);
    if (std::fabs(det) < 1e-12) return std::nullopt;
    const double inv = 1.0 / det;
    const Vec3 s = ray.origin - tri.a;
    const double u = dot(s, p) * inv;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 q = cross(s, e1);
    const double v = dot(ray.dir, q) * inv;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = dot(e2, q) * inv;
    if (!(t > kRayEpsilon)) return std::nullopt;
    return t;
}

std::optional<Hit> intersect_linear(const std::vector<SceneTriangle>& tris, const Ray& ray, double t_max) {
    std::optional<Hit> best;
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto t = intersect_triangle(ray, tris[i]);
        if (t && *t < t_max && closer(*t, static_cast<int>(i), best)) best = Hit{*t, static_cast<int>(i)};
    }
    return best;
}

Bvh::Bvh(const std::vector<SceneTriangle>* tris) : tris_(tris) {
    order_.resize(tris->size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    if (!order_.empty()) build(0, static_cast<int>(order_.size()), 0);
}

int Bvh::build(int first, int count, int depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Aabb3 box;
    Aabb3 centroids;
    for (int i = first; i < first + count; ++i) {
        const Aabb3 tb = triangle_bounds((*tris_)[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])]);
        box.expand(tb);
        centroids.expand(tb.center());
    }
    // Pad so rounding in the slab test can never cull a valid hit.
    const double pad = 1e-6 * (1.0 + std::max({std::fabs(box.min.x), std::fabs(box.min.y), std::fabs(box.min.z),
                                               std::fabs(box.max.x), std::fabs(box.max.y), std::fabs(box.max.z)}));
    box.min -= Vec3{pad, pad, pad};
    box.max += Vec3{pad, pad, pad};
    nodes_[static_cast<std::size_t>(index)].box = box;

    if (count <= kLeafSize || depth > 60) {
        nodes_[static_cast<std::size_t>(index)].first = first;
        nodes_[static_cast<std::size_t>(index)].count = count;
        return index;
    }
    const Vec3 ext = centroids.extent();
    const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
    auto begin = order_.begin() + first;
    auto end = begin + count;
    std::sort(begin, end, [&](int a, int b) {
        const double ca = triangle_bounds((*tris_)[static_cast<std::size_t>(a)]).center()[axis];
        const double cb = triangle_bounds((*tris_)[static_cast<std::size_t>(b)]).center()[axis];
        return ca < cb || (ca == cb && a < b);
    });
    const int half = count / 2;
    const int left = build(first, half, depth + 1);
    const int right = build(first + half, count - half, depth + 1);
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
}

std::optional<Hit> Bvh::intersect(const Ray& ray, double t_max) const {
    std::optional<Hit> best;
    if (nodes_.empty()) return best;
    int stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        double t_enter;
        const double limit = best ? best->t : t_max;
        if (!ray_box(ray, node.box, limit, t_enter)) continue;
        if (node.leaf()) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const int id = order_[static_cast<std::size_t>(i)];
                const auto t = intersect_triangle(ray, (*tris_)[static_cast<std::size_t>(id)]);
                if (t && *t < t_max && closer(*t, id, best)) best = Hit{*t, id};
            }
        } else {
            stack[top++] = node.right;
            stack[top++] = node.left;
        }
    }
    return best;
}

bool Bvh::occluded(const Ray& ray, double t_max) const {
    if (nodes_.empty()) return false;
    int stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        double t_enter;
        if (!ray_box(ray, node.box, t_max, t_enter)) continue;
        if (node.leaf()) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const auto t = intersect_triangle(ray, (*tris_)[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])]);
                if (t && *t < t_max) return true;
            }
        } else {
            stack[top++] = node.right;
            stack[top++] = node.left;
        }
    }
    return false;
}

}  // namespace forge
