// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/trajectory.hpp"

#include <cmath>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/placement.hpp"

namespace forge {

namespace {

// Safety margin so recomputed distances never dip below the padding.
constexpr double kPadEps = 1e-6;

const Room& camera_room(const SceneDocument& scene, const Entity& camera) {
    if (camera.room_id) {
        if (const Room* r = scene.find_room(*camera.room_id)) return *r;
    }
    const auto* xf = camera.get<Transform>();
    if (xf != nullptr) {
        if (const Room* r = room_containing(scene, {xf->position.x, xf->position.z})) return *r;
    }
    throw Error(Errc::runtime, fmt::format("camera {} is not inside any room", camera.entity_id));
}

double room_volume_clearance(const Room& room, Vec3 p) {
    const Vec2 q{p.x, p.z};
    const double wall = distance_to_boundary(room.corners, q);
    if (!contains_point(room.corners, q)) return -wall;
    return std::min({wall, p.y, room.height - p.y});
}

struct Body {
    Vec3 p;
    Vec3 v;
};

}  // namespace

ClearanceField::ClearanceField(const SceneDocument& scene, const Room& room, const AssetCatalog& catalog)
    : room_(room) {
    for (const auto& e : scene.entities) {
        if (auto box = entity_world_aabb(e, catalog)) boxes_.push_back(*box);
    }
}

double ClearanceField::clearance(Vec3 p) const {
    double d = room_volume_clearance(room_, p);
    if (d < 0.0) return d;
    for (const auto& b : boxes_) d = std::min(d, distance(b, p));
    return d;
}

int keyframe_count(double fps, double duration) {
    if (!(fps > 0.0) || !(duration > 0.0)) return 0;
    return static_cast<int>(std::floor(fps * duration + 1e-9));
}

TrajectoryResult generate_trajectory(const SceneDocument& scene, const AssetCatalog& catalog,
                                     const Entity& camera, const std::string& trajectory_id,
                                     const TrajectoryParams& params, RngStream& rng,
                                     const TrajectoryConfig& config) {
    if (!(params.fps > 0.0) || !(params.speed > 0.0) || params.collision_padding < 0.0) {
        throw Error(Errc::invalid_argument, "trajectory needs fps > 0, speed > 0, padding >= 0");
    }
    const auto* cam_xf = camera.get<Transform>();
    if (cam_xf == nullptr || !camera.has(ComponentKind::camera)) {
        throw Error(Errc::invalid_argument, fmt::format("{} is not a camera entity", camera.entity_id));
    }
    const Room& room = camera_room(scene, camera);
    const ClearanceField field(scene, room, catalog);
    const double pad = params.collision_padding + kPadEps;

    TrajectoryResult out;
    out.trajectory_id = trajectory_id;
    out.camera_id = camera.entity_id;
    out.fps = params.fps;

    if (params.kind == TrajectoryKind::keypoints) {
        const auto& pts = params.keypoints;
        if (pts.empty()) throw Error(Errc::invalid_argument, "KEYPOINTS trajectory without keypoints");
        std::vector<double> cum{0.0};
        for (std::size_t i = 1; i < pts.size(); ++i) cum.push_back(cum.back() + length(pts[i] - pts[i - 1]));
        const double total = cum.back();
        out.duration = params.duration > 0.0 ? params.duration : total / params.speed;
        const int n = keyframe_count(params.fps, out.duration);

        auto locate = [&](double s, Vec3* tangent) {
            s = std::clamp(s, 0.0, total);
            std::size_t seg = 0;
            while (seg + 2 < pts.size() && cum[seg + 1] < s) ++seg;
            if (pts.size() == 1) {
                *tangent = forward_from(cam_xf->rotation.x, 0.0);
                return pts[0];
            }
            const double len = cum[seg + 1] - cum[seg];
            const Vec3 d = pts[seg + 1] - pts[seg];
            *tangent = len > 0.0 ? d / len : forward_from(cam_xf->rotation.x, 0.0);
            const double u = len > 0.0 ? (s - cum[seg]) / len : 0.0;
            return pts[seg] + d * u;
        };
        // Whole path must respect the padding, not only the sampled frames.
        for (double s = 0.0;; s += 50.0) {
            Vec3 tangent;
            const Vec3 p = locate(std::min(s, total), &tangent);
            if (field.clearance(p) < pad) {
                throw Error(Errc::runtime,
                            fmt::format("keypoint path of {} comes within {:.1f} mm of geometry (padding {})",
                                        trajectory_id, field.clearance(p), params.collision_padding));
            }
            if (s >= total) break;
        }
        for (int i = 0; i < n; ++i) {
            Keyframe k;
            k.t = i / params.fps;
            Vec3 tangent;
            k.position = locate(params.speed * k.t, &tangent);
            k.look_at = k.position + tangent * 1000.0;
            out.keyframes.push_back(k);
        }
        return out;
    }

    out.duration = params.duration;
    const int n = keyframe_count(params.fps, params.duration);

    Body pos{{cam_xf->position.x, params.height, cam_xf->position.z}, {}};
    if (field.clearance(pos.p) < pad) {
        const Rect2 b = bounds(room.corners);
        bool found = false;
        for (int i = 0; i < config.max_start_samples && !found; ++i) {
            const Vec3 p{rng.uniform(b.min.x, b.max.x), params.height, rng.uniform(b.min.y, b.max.y)};
            if (field.clearance(p) >= pad) {
                pos.p = p;
                found = true;
            }
        }
        if (!found) {
            throw Error(Errc::runtime,
                        fmt::format("no collision-free start for {} after {} samples", trajectory_id,
                                    config.max_start_samples));
        }
    }
    // The look-at body only has to stay inside the room volume.
    constexpr double kLookMargin = 100.0;
    Body look{pos.p, {}};
    {
        const Vec3 ahead = forward_from(cam_xf->rotation.x, 0.0) * 1000.0;
        double lo = 0.0;
        double hi = 1.0;
        if (room_volume_clearance(room, pos.p + ahead) >= kLookMargin) {
            lo = 1.0;
        } else {
            for (int i = 0; i < 30; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (room_volume_clearance(room, pos.p + ahead * mid) >= kLookMargin) lo = mid; else hi = mid;
            }
        }
        look.p = pos.p + ahead * lo;
    }

    const double dt = 1.0 / (config.substeps * params.fps);
    const double force = config.drag * params.speed;
    const double vmax = params.speed * (1.0 - 1e-9);

    auto step = [&](Body& body, auto&& valid) {
        const Vec3 f{rng.uniform(-force, force), rng.uniform(-force, force), rng.uniform(-force, force)};
        const Vec3 spring{0.0, -config.stiffness * (body.p.y - params.height), 0.0};
        body.v += (f + spring - body.v * config.drag) * dt;
        const double speed = length(body.v);
        if (speed > vmax) body.v = body.v * (vmax / speed);
        const Vec3 next = body.p + body.v * dt;
        if (valid(next)) {
            body.p = next;
            return;
        }
        for (int axis = 0; axis < 3; ++axis) {
            Vec3 probe = body.p;
            probe[axis] += body.v[axis] * dt;
            if (!valid(probe)) body.v[axis] = -0.5 * body.v[axis];
        }
        const Vec3 bounced = body.p + body.v * dt;
        if (valid(bounced)) body.p = bounced;
    };
    auto pos_valid = [&](Vec3 p) { return field.clearance(p) >= pad; };
    auto look_valid = [&](Vec3 p) { return room_volume_clearance(room, p) >= kLookMargin; };

    for (int i = 0; i < n; ++i) {
        out.keyframes.push_back({i / params.fps, pos.p, look.p});
        if (i + 1 == n) break;
        for (int s = 0; s < config.substeps; ++s) {
            step(pos, pos_valid);
            step(look, look_valid);
        }
    }
    return out;
}

}  // namespace forge
