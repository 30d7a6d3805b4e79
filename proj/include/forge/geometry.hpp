// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace forge {

// World frame: right-handed, y up, millimeters. Floor plans live in the
// (x, z) plane; a room corner (u, v) is the world point (u, 0, v).

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return a * s; }
    friend Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    Vec3& operator+=(Vec3 b) { x += b.x; y += b.y; z += b.z; return *this; }
    Vec3& operator-=(Vec3 b) { x -= b.x; y -= b.y; z -= b.z; return *this; }
    friend bool operator==(Vec3, Vec3) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalize(Vec3 a) {
    const double l = length(a);
    return l > 0.0 ? a / l : a;
}
inline Vec3 hadamard(Vec3 a, Vec3 b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

struct Aabb3 {
    Vec3 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    Vec3 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};

    bool empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
    void expand(Vec3 p) {
        min = {std::min(min.x, p.x), std::min(min.y, p.y), std::min(min.z, p.z)};
        max = {std::max(max.x, p.x), std::max(max.y, p.y), std::max(max.z, p.z)};
    }
    void expand(const Aabb3& b) {
        if (!b.empty()) {
            expand(b.min);
            expand(b.max);
        }
    }
    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extent() const { return max - min; }
    bool contains(Vec3 p, double slack = 0.0) const {
        return p.x >= min.x - slack && p.x <= max.x + slack && p.y >= min.y - slack &&
               p.y <= max.y + slack && p.z >= min.z - slack && p.z <= max.z + slack;
    }
    friend bool operator==(const Aabb3&, const Aabb3&) = default;
};

/// Euclidean distance from a point to a box (0 inside).
inline double distance(const Aabb3& box, Vec3 p) {
    const double dx = std::max({box.min.x - p.x, 0.0, p.x - box.max.x});
    const double dy = std::max({box.min.y - p.y, 0.0, p.y - box.max.y});
    const double dz = std::max({box.min.z - p.z, 0.0, p.z - box.max.z});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Axis-aligned rectangle in the floor plane.
struct Rect2 {
    Vec2 min;
    Vec2 max;

    double width() const { return max.x - min.x; }
    double depth() const { return max.y - min.y; }
    double area() const { return std::max(0.0, width()) * std::max(0.0, depth()); }
    Vec2 center() const { return (min + max) * 0.5; }
    Rect2 inflated(double m) const { return {{min.x - m, min.y - m}, {max.x + m, max.y + m}}; }
    Rect2 translated(Vec2 d) const { return {min + d, max + d}; }
    bool contains(Vec2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    friend bool operator==(const Rect2&, const Rect2&) = default;
};

inline double overlap_area(const Rect2& a, const Rect2& b) {
    const double w = std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x);
    const double d = std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y);
    return (w > 0.0 && d > 0.0) ? w * d : 0.0;
}

/// Rotation about +y by `yaw`; maps local +z to (sin yaw, 0, cos yaw).
inline Vec3 rotate_yaw(Vec3 p, double yaw) {
    const double c = std::cos(yaw);
    const double s = std::sin(yaw);
    return {c * p.x + s * p.z, p.y, -s * p.x + c * p.z};
}

/// Full yaw-pitch-roll rotation (roll about z, then pitch about x, then yaw
/// about y). Positive pitch tilts local +z upward, matching forward_from().
inline Vec3 rotate_ypr(Vec3 p, Vec3 ypr) {
    const double cr = std::cos(ypr.z), sr = std::sin(ypr.z);
    Vec3 q{cr * p.x - sr * p.y, sr * p.x + cr * p.y, p.z};
    const double cp = std::cos(ypr.y), sp = std::sin(ypr.y);
    q = {q.x, cp * q.y + sp * q.z, -sp * q.y + cp * q.z};
    return rotate_yaw(q, ypr.x);
}

/// Unit forward direction for a (yaw, pitch) pair.
inline Vec3 forward_from(double yaw, double pitch) {
    return {std::sin(yaw) * std::cos(pitch), std::sin(pitch), std::cos(yaw) * std::cos(pitch)};
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    a = std::fmod(a, two_pi);
    if (a <= -two_pi / 2) a += two_pi;
    if (a > two_pi / 2) a -= two_pi;
    return a;
}

// Polygon helpers over ordered corner lists (implicitly closed).

/// Signed shoelace area; positive for counter-clockwise corners.
double signed_area(std::span<const Vec2> poly);
bool is_simple(std::span<const Vec2> poly);
/// Point-in-polygon where points on the boundary count as inside.
bool contains_point(std::span<const Vec2> poly, Vec2 p);
/// True when `r` lies entirely within the closed polygon.
bool contains_rect(std::span<const Vec2> poly, const Rect2& r);
double distance_to_segment(Vec2 p, Vec2 a, Vec2 b);
/// Distance from a point to the polygon boundary.
double distance_to_boundary(std::span<const Vec2> poly, Vec2 p);
Rect2 bounds(std::span<const Vec2> poly);
/// Ear-clipping triangulation of a simple CCW polygon; returns index triples.
std::vector<std::array<int, 3>> triangulate(std::span<const Vec2> poly);

}  // namespace forge
