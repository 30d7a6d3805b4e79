// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "forge/geometry.hpp"
#include "forge/rng.hpp"

using namespace forge;

namespace {

std::vector<Vec2> l_shape() { return {{0, 0}, {4000, 0}, {4000, 2000}, {2000, 2000}, {2000, 4000}, {0, 4000}}; }

double tri_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

}  // namespace

TEST_CASE("signed area and orientation") {
    const std::vector<Vec2> sq{{0, 0}, {1000, 0}, {1000, 1000}, {0, 1000}};
    CHECK(signed_area(sq) == doctest::Approx(1e6));
    std::vector<Vec2> cw(sq.rbegin(), sq.rend());
    CHECK(signed_area(cw) == doctest::Approx(-1e6));
    CHECK(signed_area(l_shape()) == doctest::Approx(12e6));
}

TEST_CASE("simple polygon detection") {
    CHECK(is_simple(l_shape()));
    const std::vector<Vec2> bowtie{{0, 0}, {1000, 1000}, {1000, 0}, {0, 1000}};
    CHECK_FALSE(is_simple(bowtie));
    const std::vector<Vec2> two{{0, 0}, {1, 1}};
    CHECK_FALSE(is_simple(two));
}

TEST_CASE("point containment in an L-shaped room") {
    const auto poly = l_shape();
    CHECK(contains_point(poly, {1000, 1000}));
    CHECK(contains_point(poly, {3000, 1000}));
    CHECK_FALSE(contains_point(poly, {3000, 3000}));
    CHECK_FALSE(contains_point(poly, {-1, 500}));
    CHECK(contains_rect(poly, {{100, 100}, {3900, 1900}}));
    CHECK_FALSE(contains_rect(poly, {{1500, 1500}, {2500, 2500}}));
}

TEST_CASE("distance to boundary") {
    const auto poly = l_shape();
    CHECK(distance_to_boundary(poly, {1000, 1000}) == doctest::Approx(1000));
    CHECK(distance_to_boundary(poly, {3000, 1500}) == doctest::Approx(500));
    CHECK(distance_to_segment({5, 5}, {0, 0}, {10, 0}) == doctest::Approx(5));
    CHECK(distance_to_segment({-3, 4}, {0, 0}, {10, 0}) == doctest::Approx(5));
}

TEST_CASE("triangulation covers the polygon exactly") {
    RngStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        // star-shaped polygon with random radii
        const int n = 3 + static_cast<int>(rng.below(12));
        std::vector<Vec2> poly;
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * std::numbers::pi * i / n;
            const double r = rng.uniform(500.0, 3000.0);
            poly.push_back({r * std::cos(a), r * std::sin(a)});
        }
        const auto tris = triangulate(poly);
        REQUIRE(tris.size() == static_cast<std::size_t>(n - 2));
        double sum = 0.0;
        for (const auto& t : tris) {
            const double a = tri_area(poly[static_cast<std::size_t>(t[0])], poly[static_cast<std::size_t>(t[1])],
                                      poly[static_cast<std::size_t>(t[2])]);
            CHECK(a > 0.0);
            sum += a;
        }
        CHECK(sum == doctest::Approx(signed_area(poly)).epsilon(1e-9));
    }
}

TEST_CASE("yaw rotation turns +z toward +x") {
    const Vec3 p = rotate_yaw({0, 0, 1}, std::numbers::pi / 2);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.z == doctest::Approx(0.0));
    const Vec3 f = forward_from(std::numbers::pi / 2, 0.0);
    CHECK(f.x == doctest::Approx(p.x));
    CHECK(f.z == doctest::Approx(p.z));
    const Vec3 q = rotate_ypr({1, 2, 3}, {0.3, 0.0, 0.0});
    const Vec3 r = rotate_yaw({1, 2, 3}, 0.3);
    CHECK(q.x == doctest::Approx(r.x));
    CHECK(q.z == doctest::Approx(r.z));
}

TEST_CASE("wrap_angle lands in (-pi, pi]") {
    RngStream rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double a = rng.uniform(-50.0, 50.0);
        const double w = wrap_angle(a);
        REQUIRE(w > -std::numbers::pi);
        REQUIRE(w <= std::numbers::pi);
        CHECK(std::sin(w) == doctest::Approx(std::sin(a)).epsilon(1e-9));
        CHECK(std::cos(w) == doctest::Approx(std::cos(a)).epsilon(1e-9));
    }
}

TEST_CASE("rect overlap") {
    const Rect2 a{{0, 0}, {2000, 1000}};
    const Rect2 b{{1000, 0}, {3000, 1000}};
    CHECK(overlap_area(a, b) == doctest::Approx(1e6));
    CHECK(overlap_area(a, a.translated({5000, 0})) == 0.0);
    CHECK(a.inflated(100).area() == doctest::Approx(2200.0 * 1200.0));
}
