// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/corpus.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "forge/error.hpp"
#include "forge/placement.hpp"

namespace forge {

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<RoomType, std::vector<std::string>>& furniture_by_room() {
    static const std::map<RoomType, std::vector<std::string>> m = {
        {RoomType::bedroom,
         {"bed", "nightstand", "nightstand", "wardrobe", "dresser", "lamp", "chair", "desk", "plant",
          "floor_lamp"}},
        {RoomType::living,
         {"sofa", "armchair", "coffee_table", "tv_stand", "bookshelf", "side_table", "floor_lamp",
          "plant", "lamp", "vase", "ottoman", "sideboard"}},
        {RoomType::kitchen,
         {"dining_table", "chair", "chair", "chair", "cabinet", "sideboard", "vase", "plant", "stool"}},
        {RoomType::bath, {"cabinet", "plant", "stool", "side_table"}},
        {RoomType::other,
         {"desk", "office_chair", "bookshelf", "table", "chair", "bench", "cabinet", "lamp"}},
    };
    return m;
}

bool is_surface_item(const std::string& category) { return category == "lamp" || category == "vase"; }

bool is_support_category(const std::string& category) {
    return category == "table" || category == "dining_table" || category == "coffee_table" ||
           category == "side_table" || category == "desk" || category == "nightstand" ||
           category == "dresser" || category == "sideboard" || category == "tv_stand" ||
           category == "cabinet";
}

double round_to(double v, double step) { return std::round(v / step) * step; }

struct Placed {
    std::string entity_id;
    std::string category;
    Aabb3 box;
};

class SceneBuilder {
  public:
    SceneBuilder(const AssetCatalog& catalog, RngStream& rng) : catalog_(catalog), rng_(rng) {
        for (const auto& a : catalog.assets()) by_category_[catalog.category_name(a.category_id)].push_back(&a);
    }

    std::vector<Vec2> make_polygon(double x0, double w, double d) {
        const double z0 = 0.0;
        const double x1 = x0 + w;
        const double z1 = z0 + d;
        if (rng_.uniform() < 0.3) {
            const double nw = round_to(rng_.uniform(0.3, 0.5) * w, 100.0);
            const double nd = round_to(rng_.uniform(0.3, 0.5) * d, 100.0);
            return {{x0, z0}, {x1, z0}, {x1, z1 - nd}, {x1 - nw, z1 - nd}, {x1 - nw, z1}, {x0, z1}};
        }
        return {{x0, z0}, {x1, z0}, {x1, z1}, {x0, z1}};
    }

    // Places one piece of `category` in `room`; returns false when no spot fits.
    bool place(SceneDocument& scene, const Room& room, const std::string& category) {
        auto it = by_category_.find(category);
        if (it == by_category_.end() || it->second.empty()) return false;
        const AssetRecord& asset = *it->second[rng_.below(it->second.size())];
        const double yaw = wrap_angle(static_cast<double>(rng_.below(4)) * kPi / 2.0);
        Transform xf;
        xf.rotation = {yaw, 0.0, 0.0};

        if (is_surface_item(category)) {
            std::vector<const Placed*> supports;
            for (const auto& p : placed_[room.room_id]) {
                if (is_support_category(p.category)) supports.push_back(&p);
            }
            if (supports.empty()) return false;
            const Placed& sup = *supports[rng_.below(supports.size())];
            const Aabb3 local = transform_box(asset.aabb, xf);
            const Rect2 top = footprint_of(sup.box);
            const double sx = std::max(0.0, top.width() / 2 - (local.max.x - local.min.x) / 2);
            const double sz = std::max(0.0, top.depth() / 2 - (local.max.z - local.min.z) / 2);
            const Vec2 c = top.center();
            const double px = round_to(c.x + rng_.uniform(-sx, sx), 1.0);
            const double pz = round_to(c.y + rng_.uniform(-sz, sz), 1.0);
            xf.position = {px - (local.min.x + local.max.x) / 2, sup.box.max.y - local.min.y,
                           pz - (local.min.z + local.max.z) / 2};
            const Aabb3 world = transform_box(asset.aabb, xf);
            if (!top.contains(footprint_of(world).center())) return false;
            if (world.max.y > room.height - 50.0) return false;
            for (const auto& p : placed_[room.room_id]) {
                if (is_surface_item(p.category) && overlap_area(footprint_of(p.box), footprint_of(world)) > 0.0) {
                    return false;
                }
            }
            add(scene, room, asset, xf, category, world);
            return true;
        }

        const Rect2 bb = bounds(room.corners);
        const Aabb3 local = transform_box(asset.aabb, xf);
        for (int attempt = 0; attempt < 40; ++attempt) {
            const double px = round_to(rng_.uniform(bb.min.x, bb.max.x), 10.0);
            const double pz = round_to(rng_.uniform(bb.min.y, bb.max.y), 10.0);
            xf.position = {px - (local.min.x + local.max.x) / 2, -local.min.y,
                           pz - (local.min.z + local.max.z) / 2};
            const Aabb3 world = transform_box(asset.aabb, xf);
            const Rect2 fp = footprint_of(world);
            if (!contains_rect(room.corners, fp.inflated(50.0))) continue;
            if (world.max.y > room.height - 50.0) continue;
            bool clash = false;
            for (const auto& p : placed_[room.room_id]) {
                if (!is_surface_item(p.category) && overlap_area(footprint_of(p.box), fp) > 0.0) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;
            add(scene, room, asset, xf, category, world);
            return true;
        }
        return false;
    }

    void add_light(SceneDocument& scene, const Room& room) {
        const Rect2 bb = bounds(room.corners);
        Entity e;
        e.entity_id = fmt::format("light_{}", room.room_id);
        e.room_id = room.room_id;
        Transform xf;
        xf.position = {round_to(bb.min.x + 0.4 * bb.width(), 1.0), room.height - 300.0,
                       round_to(bb.min.y + 0.4 * bb.depth(), 1.0)};
        e.set(xf);
        Light light;
        light.intensity = round_to(rng_.uniform(400.0, 1200.0), 10.0);
        light.color_temperature = round_to(rng_.uniform(2700.0, 6500.0), 100.0);
        e.set(light);
        scene.entities.push_back(std::move(e));
    }

    void add_camera(SceneDocument& scene, const Room& room, int index) {
        const Rect2 bb = bounds(room.corners);
        Vec2 best = bb.center();
        double best_clearance = -1.0;
        for (int attempt = 0; attempt < 200 && best_clearance < 400.0; ++attempt) {
            const Vec2 p{round_to(rng_.uniform(bb.min.x, bb.max.x), 10.0),
                         round_to(rng_.uniform(bb.min.y, bb.max.y), 10.0)};
            if (!contains_point(room.corners, p)) continue;
            double clearance = distance_to_boundary(room.corners, p);
            for (const auto& placed : placed_[room.room_id]) {
                const Aabb3 b = placed.box;
                if (b.max.y < 1000.0) continue;  // camera sits above low furniture
                clearance = std::min(clearance, distance(b, {p.x, 1400.0, p.y}));
            }
            if (clearance > best_clearance) {
                best_clearance = clearance;
                best = p;
            }
        }
        const Vec2 target = bb.center();
        const Vec2 dir = target - best;
        const double yaw = length(dir) > 1.0 ? std::atan2(dir.x, dir.y) : rng_.uniform(-kPi, kPi);
        Entity e;
        e.entity_id = fmt::format("cam_{}", index);
        e.room_id = room.room_id;
        Transform xf;
        xf.position = {best.x, 1400.0, best.y};
        xf.rotation = {yaw, -0.1, 0.0};
        e.set(xf);
        e.set(Camera{});
        scene.entities.push_back(std::move(e));
    }

    int furniture_count() const { return next_instance_ - 1; }

  private:
    void add(SceneDocument& scene, const Room& room, const AssetRecord& asset, const Transform& xf,
             const std::string& category, const Aabb3& world) {
        Entity e;
        e.entity_id = fmt::format("inst_{:03}", next_instance_);
        e.room_id = room.room_id;
        e.set(xf);
        e.set(MeshRef{asset.asset_id, asset.category_id});
        if (catalog_.has_series(asset.category_id)) {
            const std::string mat = catalog_.sample_material(asset.category_id, rng_);
            e.set(MaterialRef{mat, catalog_.series_of(mat)});
        }
        e.set(SemanticLabel{asset.category_id, next_instance_});
        ++next_instance_;
        placed_[room.room_id].push_back({e.entity_id, category, world});
        scene.entities.push_back(std::move(e));
    }

    const AssetCatalog& catalog_;
    RngStream& rng_;
    std::map<std::string, std::vector<const AssetRecord*>> by_category_;
    std::map<std::string, std::vector<Placed>> placed_;
    int next_instance_ = 1;
};

}  // namespace

std::string corpus_scene_id(std::uint64_t seed, int index) { return fmt::format("s{}_{:05}", seed, index); }

SceneDocument generate_scene(std::uint64_t seed, int index, const AssetCatalog& catalog) {
    if (catalog.empty()) throw Error(Errc::invalid_argument, "cannot generate scenes from an empty catalog");
    RngStream rng(SeedHasher(0xC0A905).add(seed).add(static_cast<std::uint64_t>(index)).finish());
    SceneBuilder builder(catalog, rng);

    SceneDocument scene;
    scene.scene_id = corpus_scene_id(seed, index);
    scene.meta = {{"generator", "forge-corpus"},
                  {"seed", std::to_string(seed)},
                  {"index", std::to_string(index)}};

    static constexpr RoomType kTypes[] = {RoomType::bedroom, RoomType::living, RoomType::kitchen,
                                          RoomType::bath, RoomType::other};
    const int room_count = 1 + static_cast<int>(rng.below(5));
    double x = 0.0;
    for (int r = 0; r < room_count; ++r) {
        const double w = round_to(rng.uniform(2500.0, 6500.0), 100.0);
        const double d = round_to(rng.uniform(2500.0, 6500.0), 100.0);
        const double h = round_to(rng.uniform(2600.0, 3200.0), 100.0);
        const RoomType type = kTypes[rng.below(5)];
        scene.rooms.push_back(Room::make(fmt::format("room_{}", r), builder.make_polygon(x, w, d), h, type));
        x += w + 200.0;
    }

    const int target = 3 + static_cast<int>(rng.below(23));
    for (int k = 0; k < target; ++k) {
        const Room& room = scene.rooms[static_cast<std::size_t>(k % room_count)];
        const auto& options = furniture_by_room().at(room.room_type);
        builder.place(scene, room, options[rng.below(options.size())]);
    }
    static const std::vector<std::string> kSmall = {"stool", "plant", "side_table"};
    for (int attempt = 0; builder.furniture_count() < 3 && attempt < 300; ++attempt) {
        const Room& room = scene.rooms[static_cast<std::size_t>(attempt % room_count)];
        builder.place(scene, room, kSmall[rng.below(kSmall.size())]);
    }
    if (builder.furniture_count() < 3) {
        throw Error(Errc::runtime, fmt::format("could not furnish scene {}", scene.scene_id));
    }

    for (const auto& room : scene.rooms) builder.add_light(scene, room);
    for (int r = 0; r < std::min(room_count, 2); ++r) {
        builder.add_camera(scene, scene.rooms[static_cast<std::size_t>(r)], r);
    }
    return scene;
}

std::vector<SceneDocument> generate_corpus(int n, std::uint64_t seed, const AssetCatalog& catalog) {
    if (n < 1) throw Error(Errc::invalid_argument, "corpus size must be >= 1");
    if (catalog.empty()) throw Error(Errc::invalid_argument, "cannot generate scenes from an empty catalog");
    std::vector<SceneDocument> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(generate_scene(seed, i, catalog));
    return out;
}

}  // namespace forge
