// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/layout.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/placement.hpp"

namespace forge {

namespace {

constexpr double kPi = std::numbers::pi;

struct GroupRule {
    std::vector<std::string> anchors;
    std::vector<std::string> members;
    double distance;
};

const std::vector<GroupRule>& group_rules() {
    static const std::vector<GroupRule> rules = {
        {{"table", "dining_table", "desk"}, {"chair", "office_chair", "stool"}, 800.0},
        {{"bed"}, {"nightstand"}, 1200.0},
        {{"sofa"}, {"coffee_table"}, 1200.0},
    };
    return rules;
}

bool one_of(const std::string& s, const std::vector<std::string>& set) {
    return std::find(set.begin(), set.end(), s) != set.end();
}

double diagonal(const std::vector<Vec2>& room) {
    const Rect2 b = bounds(room);
    return std::max(1.0, std::hypot(b.width(), b.depth()));
}

double population_variance(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

// Inward unit normal of edge i of a counter-clockwise polygon.
Vec2 inward_normal(const std::vector<Vec2>& poly, std::size_t i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double l = length(e);
    return l > 0.0 ? Vec2{-e.y / l, e.x / l} : Vec2{0.0, 0.0};
}

std::size_t nearest_edge(const std::vector<Vec2>& poly, Vec2 p) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double d = distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Vec2 center_of(const LayoutItem& item) { return footprint(item).center(); }

}  // namespace

Rect2 footprint(const LayoutItem& item) {
    Transform xf;
    xf.position = {item.position.x, 0.0, item.position.y};
    xf.rotation = {item.yaw, 0.0, 0.0};
    return footprint_of(transform_box(item.local, xf));
}

bool inside_room(const LayoutState& state, const LayoutItem& item) {
    return contains_rect(state.room, footprint(item));
}

Vec2 default_door(const std::vector<Vec2>& room) {
    std::size_t best = 0;
    double best_len = -1.0;
    for (std::size_t i = 0; i < room.size(); ++i) {
        const double l = length(room[(i + 1) % room.size()] - room[i]);
        if (l > best_len) {
            best_len = l;
            best = i;
        }
    }
    return (room[best] + room[(best + 1) % room.size()]) * 0.5;
}

double clearance_term(const LayoutState& s, double margin) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.items.size(); ++i) {
        const Rect2 a = footprint(s.items[i]).inflated(margin);
        for (std::size_t j = i + 1; j < s.items.size(); ++j) {
            sum += overlap_area(a, footprint(s.items[j]).inflated(margin));
        }
    }
    return sum / 1e6;
}

double circulation_term(const LayoutState& s, double grid) {
    if (s.room.size() < 3 || grid <= 0.0) return 0.0;
    const Rect2 b = bounds(s.room);
    const int nx = std::max(1, static_cast<int>(std::ceil(b.width() / grid)));
    const int nz = std::max(1, static_cast<int>(std::ceil(b.depth() / grid)));
    std::vector<Rect2> fps;
    for (const auto& it : s.items) fps.push_back(footprint(it));
    std::vector<char> free(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz), 0);
    int free_count = 0;
    for (int j = 0; j < nz; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Vec2 c{b.min.x + (i + 0.5) * grid, b.min.y + (j + 0.5) * grid};
            if (!contains_point(s.room, c)) continue;
            bool blocked = false;
            for (const auto& r : fps) {
                if (r.contains(c)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                free[static_cast<std::size_t>(j) * nx + i] = 1;
                ++free_count;
            }
        }
    }
    if (free_count == 0) return 1.0;

    const Vec2 n = inward_normal(s.room, nearest_edge(s.room, s.door));
    const Vec2 door = s.door + n * (grid / 2.0);
    const int di = std::clamp(static_cast<int>(std::floor((door.x - b.min.x) / grid)), 0, nx - 1);
    const int dj = std::clamp(static_cast<int>(std::floor((door.y - b.min.y) / grid)), 0, nz - 1);
    if (!free[static_cast<std::size_t>(dj) * nx + di]) return 1.0;

    std::vector<char> seen(free.size(), 0);
    std::deque<std::pair<int, int>> queue{{di, dj}};
    seen[static_cast<std::size_t>(dj) * nx + di] = 1;
    int reached = 0;
    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        ++reached;
        static constexpr int kDx[] = {1, -1, 0, 0};
        static constexpr int kDz[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int ni = i + kDx[k];
            const int nj = j + kDz[k];
            if (ni < 0 || nj < 0 || ni >= nx || nj >= nz) continue;
            const std::size_t idx = static_cast<std::size_t>(nj) * nx + ni;
            if (free[idx] && !seen[idx]) {
                seen[idx] = 1;
                queue.emplace_back(ni, nj);
            }
        }
    }
    return static_cast<double>(free_count - reached) / free_count;
}

double group_term(const LayoutState& s) {
    double sum = 0.0;
    for (const auto& rule : group_rules()) {
        for (const auto& member : s.items) {
            if (!one_of(member.category, rule.members)) continue;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& anchor : s.items) {
                if (one_of(anchor.category, rule.anchors)) {
                    best = std::min(best, length(center_of(anchor) - center_of(member)));
                }
            }
            if (std::isfinite(best)) {
                const double excess = std::max(0.0, best - rule.distance);
                sum += excess * excess / 1e6;
            }
        }
    }
    return sum;
}

double alignment_term(const LayoutState& s) {
    if (s.room.size() < 3) return 0.0;
    double sum = 0.0;
    for (const auto& item : s.items) {
        const Vec2 n = inward_normal(s.room, nearest_edge(s.room, center_of(item)));
        const double wall_yaw = std::atan2(n.x, n.y);
        const double dev = std::remainder(item.yaw - wall_yaw, kPi / 2.0);
        sum += dev * dev;
    }
    return sum;
}

double distribution_term(const LayoutState& s) {
    if (s.items.size() < 2) return 0.0;
    const double diag = diagonal(s.room);
    std::vector<Vec2> c;
    for (const auto& it : s.items) c.push_back(center_of(it));
    std::vector<double> nn;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (i != j) best = std::min(best, length(c[i] - c[j]));
        }
        nn.push_back(best / diag);
    }
    return population_variance(nn);
}

double rhythm_term(const LayoutState& s) {
    const double diag = diagonal(s.room);
    const Rect2 b = bounds(s.room);
    const bool along_x = b.width() >= b.depth();
    std::map<std::string, std::vector<double>> coords;
    for (const auto& it : s.items) {
        const Vec2 c = center_of(it);
        coords[it.category].push_back(along_x ? c.x : c.y);
    }
    double sum = 0.0;
    for (auto& [category, v] : coords) {
        if (v.size() < 3) continue;
        std::sort(v.begin(), v.end());
        std::vector<double> gaps;
        for (std::size_t i = 1; i < v.size(); ++i) gaps.push_back((v[i] - v[i - 1]) / diag);
        sum += population_variance(gaps);
    }
    return sum;
}

CostBreakdown layout_cost(const LayoutState& s, const LayoutConfig& config) {
    for (const auto& it : s.items) {
        if (!inside_room(s, it)) {
            throw Error(Errc::validation, fmt::format("footprint of {} leaves the room", it.entity_id));
        }
    }
    CostBreakdown c;
    c.clearance = clearance_term(s, config.margin);
    c.circulation = circulation_term(s, config.grid);
    c.group = group_term(s);
    c.alignment = alignment_term(s);
    c.distribution = distribution_term(s);
    c.rhythm = rhythm_term(s);
    const auto& w = config.weights;
    c.total = w.clearance * c.clearance + w.circulation * c.circulation + w.group * c.group +
              w.alignment * c.alignment + w.distribution * c.distribution + w.rhythm * c.rhythm;
    return c;
}

LayoutState propose_move(const LayoutState& s, RngStream& rng, const LayoutConfig& config,
                         std::size_t* moved) {
    LayoutState out = s;
    if (out.items.empty()) return out;
    const std::size_t i = rng.below(out.items.size());
    if (moved != nullptr) *moved = i;
    LayoutItem& item = out.items[i];

    const Vec2 delta{rng.normal(0.0, config.move_sigma), rng.normal(0.0, config.move_sigma)};
    double dyaw;
    if (rng.uniform() < config.snap_probability) {
        dyaw = rng.below(2) == 0 ? kPi / 2.0 : -kPi / 2.0;
    } else {
        dyaw = rng.uniform(-config.yaw_range, config.yaw_range);
    }
    const Vec2 old_pos = item.position;
    const double old_yaw = item.yaw;
    const double new_yaw = dyaw == 0.0 ? old_yaw : wrap_angle(old_yaw + dyaw);

    item.position = old_pos + delta;
    item.yaw = new_yaw;
    if (inside_room(out, item)) return out;

    // Keep the rotation if it fits in place, then pull the translation back
    // toward the (valid) starting point.
    item.position = old_pos;
    if (!inside_room(out, item)) item.yaw = old_yaw;
    double lo = 0.0;
    double hi = 1.0;
    for (int step = 0; step < 30; ++step) {
        const double mid = 0.5 * (lo + hi);
        item.position = old_pos + delta * mid;
        if (inside_room(out, item)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    item.position = lo == 0.0 ? old_pos : old_pos + delta * lo;
    return out;
}

AnnealResult anneal_layout(const LayoutState& initial, RngStream& rng, const LayoutConfig& config,
                           std::optional<int> iterations) {
    AnnealResult r;
    r.best = initial;
    r.initial_cost = layout_cost(initial, config);
    r.best_cost = r.initial_cost;
    r.accepted_totals.push_back(r.initial_cost.total);
    const int n = iterations.value_or(config.iters_per_furniture * static_cast<int>(initial.items.size()));
    if (initial.items.empty() || n <= 0) return r;

    const double t0 = config.t0 >= 0.0 ? config.t0 : (r.initial_cost.total > 0.0 ? r.initial_cost.total : 1.0);
    LayoutState current = initial;
    CostBreakdown current_cost = r.initial_cost;
    double temperature = t0;
    for (int k = 0; k < n; ++k) {
        LayoutState candidate = propose_move(current, rng, config);
        const CostBreakdown cost = layout_cost(candidate, config);
        const double delta = cost.total - current_cost.total;
        bool accept = delta <= 0.0;
        if (!accept && temperature > 0.0) accept = rng.uniform() < std::exp(-delta / temperature);
        if (accept) {
            current = std::move(candidate);
            current_cost = cost;
            r.accepted_totals.push_back(cost.total);
            if (cost.total < r.best_cost.total) {
                r.best = current;
                r.best_cost = cost;
            }
        }
        temperature *= config.alpha;
        ++r.iterations;
    }
    return r;
}

LayoutState extract_layout(const SceneDocument& scene, const std::string& room_id,
                           const AssetCatalog& catalog) {
    const Room* room = scene.find_room(room_id);
    if (room == nullptr) throw Error(Errc::not_found, fmt::format("room '{}' not in scene", room_id));
    LayoutState s;
    s.room = room->corners;
    s.door = default_door(s.room);
    for (const auto& e : scene.entities) {
        if (e.room_id != room_id) continue;
        const auto box = entity_world_aabb(e, catalog);
        if (!box || std::fabs(box->min.y) > 5.0) continue;
        const auto* xf = e.get<Transform>();
        const auto* mesh = e.get<MeshRef>();
        Transform scale_only;
        scale_only.scale = xf->scale;
        LayoutItem item;
        item.entity_id = e.entity_id;
        item.category = catalog.category_name(mesh->category_id);
        item.local = transform_box(catalog.asset(mesh->asset_id).aabb, scale_only);
        item.position = {xf->position.x, xf->position.z};
        item.yaw = xf->rotation.x;
        // Pieces already poking through a wall stay where they are.
        if (inside_room(s, item)) s.items.push_back(std::move(item));
    }
    return s;
}

void apply_layout(SceneDocument& scene, const LayoutState& state, const AssetCatalog& catalog) {
    struct Move {
        std::string id;
        Vec3 old_pos;
        double old_yaw;
        Vec3 new_pos;
        double new_yaw;
        std::vector<std::string> children;
    };
    std::vector<Move> moves;
    for (const auto& item : state.items) {
        const Entity* e = scene.find_entity(item.entity_id);
        if (e == nullptr) continue;
        const auto* xf = e->get<Transform>();
        Move m{item.entity_id, xf->position, xf->rotation.x,
               {item.position.x, xf->position.y, item.position.y}, item.yaw,
               supported_children(scene, item.entity_id, catalog)};
        moves.push_back(std::move(m));
    }
    for (const auto& m : moves) {
        scene.find_entity(m.id)->get<Transform>()->position = m.new_pos;
        scene.find_entity(m.id)->get<Transform>()->rotation.x = m.new_yaw;
        for (const auto& child_id : m.children) {
            Entity* child = scene.find_entity(child_id);
            Transform* cx = child->get<Transform>();
            const Vec3 offset = rotate_yaw(cx->position - m.old_pos, -m.old_yaw);
            cx->position = m.new_pos + rotate_yaw(offset, m.new_yaw);
            if (m.new_yaw != m.old_yaw) cx->rotation.x = wrap_angle(cx->rotation.x + (m.new_yaw - m.old_yaw));
        }
    }
}

AnnealResult randomize_layout(SceneDocument& scene, const std::string& room_id,
                              const AssetCatalog& catalog, RngStream& rng, const LayoutConfig& config,
                              std::optional<int> iterations) {
    const LayoutState initial = extract_layout(scene, room_id, catalog);
    AnnealResult r = anneal_layout(initial, rng, config, iterations);
    apply_layout(scene, r.best, catalog);
    return r;
}

}  // namespace forge
