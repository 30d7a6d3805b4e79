// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/geometry.hpp"

namespace forge {

namespace {

// Orientation of c relative to the directed line a->b.
double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (orient(a, b, p) != 0.0) {
        return false;
    }
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
           p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = sign(orient(a, b, c));
    const int o2 = sign(orient(a, b, d));
    const int o3 = sign(orient(c, d, a));
    const int o4 = sign(orient(c, d, b));
    if (o1 != o2 && o3 != o4) {
        return true;
    }
    return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
           (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

}  // namespace

double signed_area(std::span<const Vec2> poly) {
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(poly[i], poly[(i + 1) % n]);
    }
    return 0.5 * twice;
}

bool is_simple(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3 || signed_area(poly) == 0.0) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if (a == b) {
            return false;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 c = poly[j];
            const Vec2 d = poly[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Adjacent edges share one endpoint; they must not fold back.
                const Vec2 shared = (j == i + 1) ? b : a;
                const Vec2 p = (j == i + 1) ? a : b;
                const Vec2 q = (j == i + 1) ? d : c;
                if (orient(p, shared, q) == 0.0 && dot(p - shared, q - shared) > 0.0) {
                    return false;
                }
                continue;
            }
            if (segments_intersect(a, b, c, d)) {
                return false;
            }
        }
    }
    return true;
}

bool contains_point(std::span<const Vec2> poly, Vec2 p) {
    const std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[j];
        const Vec2 b = poly[i];
        if (on_segment(p, a, b)) {
            return true;
        }
        if ((b.y > p.y) != (a.y > p.y)) {
            const double x = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < x) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool contains_rect(std::span<const Vec2> poly, const Rect2& r) {
    const Vec2 corners[4] = {r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}};
    for (const Vec2 c : corners) {
        if (!contains_point(poly, c)) {
            return false;
        }
    }
    // No boundary edge may pass through the open interior of the rectangle.
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 d = poly[(i + 1) % n] - a;
        double t0 = 0.0;
        double t1 = 1.0;
        const double p[4] = {-d.x, d.x, -d.y, d.y};
        const double q[4] = {a.x - r.min.x, r.max.x - a.x, a.y - r.min.y, r.max.y - a.y};
        bool outside = false;
        for (int k = 0; k < 4 && !outside; ++k) {
            if (p[k] == 0.0) {
                outside = q[k] < 0.0;
            } else {
                const double t = q[k] / p[k];
                if (p[k] < 0.0) {
                    t0 = std::max(t0, t);
                } else {
                    t1 = std::min(t1, t);
                }
                outside = t0 > t1;
            }
        }
        if (outside || t1 - t0 <= 0.0) {
            continue;
        }
        const Vec2 mid = a + d * (0.5 * (t0 + t1));
        if (mid.x > r.min.x && mid.x < r.max.x && mid.y > r.min.y && mid.y < r.max.y) {
            return false;
        }
    }
    return true;
}

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return length(p - (a + ab * t));
}

double distance_to_boundary(std::span<const Vec2> poly, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]));
    }
    return best;
}

Rect2 bounds(std::span<const Vec2> poly) {
    Rect2 r{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
            {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const Vec2 p : poly) {
        r.min = {std::min(r.min.x, p.x), std::min(r.min.y, p.y)};
        r.max = {std::max(r.max.x, p.x), std::max(r.max.y, p.y)};
    }
    return r;
}

std::vector<std::array<int, 3>> triangulate(std::span<const Vec2> poly) {
    std::vector<std::array<int, 3>> out;
    std::vector<int> idx(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        idx[i] = static_cast<int>(i);
    }
    if (signed_area(poly) < 0.0) {
        std::reverse(idx.begin(), idx.end());
    }
    std::size_t guard = 0;
    while (idx.size() > 3 && guard++ < poly.size() * poly.size() + 8) {
        bool clipped = false;
        const std::size_t n = idx.size();
        for (std::size_t i = 0; i < n; ++i) {
            const int ia = idx[(i + n - 1) % n];
            const int ib = idx[i];
            const int ic = idx[(i + 1) % n];
            const Vec2 a = poly[ia], b = poly[ib], c = poly[ic];
            const double o = orient(a, b, c);
            if (o < 0.0) {
                continue;  // reflex
            }
            if (o == 0.0) {
                // Collinear vertex: drop it without emitting a triangle.
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
                clipped = true;
                break;
            }
            bool ear = true;
            for (const int k : idx) {
                if (k == ia || k == ib || k == ic) {
                    continue;
                }
                const Vec2 p = poly[k];
                if (orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0) {
                    ear = false;
                    break;
                }
            }
            if (ear) {
                out.push_back({ia, ib, ic});
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
                clipped = true;
                break;
            }
        }
        if (!clipped) {
            break;
        }
    }
    if (idx.size() == 3 && orient(poly[idx[0]], poly[idx[1]], poly[idx[2]]) != 0.0) {
        out.push_back({idx[0], idx[1], idx[2]});
    }
    return out;
}

}  // namespace forge
