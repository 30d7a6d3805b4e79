// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <numbers>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/layout.hpp"
#include "forge/placement.hpp"

using namespace forge;

namespace {

LayoutItem box_item(std::string id, std::string category, double hw, double hd, Vec2 pos, double yaw = 0.0) {
    return {std::move(id), std::move(category), Aabb3{{-hw, 0, -hd}, {hw, 800, hd}}, pos, yaw};
}

LayoutState room_4x2() {
    LayoutState s;
    s.room = {{0, 0}, {4000, 0}, {4000, 2000}, {0, 2000}};
    s.door = default_door(s.room);
    return s;
}

LayoutState crowded(RngStream& rng) {
    LayoutState s;
    s.room = {{0, 0}, {6000, 0}, {6000, 5000}, {0, 5000}};
    s.door = default_door(s.room);
    const char* cats[] = {"sofa", "table", "chair", "chair", "bed", "nightstand", "desk"};
    for (int i = 0; i < 7; ++i) {
        s.items.push_back(box_item("e" + std::to_string(i), cats[i], 400, 300,
                                   {2800 + rng.uniform(-300, 300), 2400 + rng.uniform(-300, 300)}));
    }
    return s;
}

}  // namespace

TEST_CASE("clearance is pairwise inflated overlap in square meters") {
    auto s = room_4x2();
    s.items.push_back(box_item("a", "sofa", 500, 500, {1000, 1000}));
    s.items.push_back(box_item("b", "table", 500, 500, {1000, 1000}));
    CHECK(clearance_term(s, 0.0) == doctest::Approx(1.0));
    // side by side with a 200 mm gap: inflated by 200 they overlap by 200 x 1400
    s.items[1].position = {2200, 1000};
    CHECK(clearance_term(s, 0.0) == 0.0);
    CHECK(clearance_term(s, 200.0) == doctest::Approx(0.2 * 1.4));
}

TEST_CASE("circulation counts floor cells cut off from the door") {
    auto s = room_4x2();
    CHECK(s.door == Vec2{2000, 0});
    CHECK(circulation_term(s, 100.0) == 0.0);
    // full-depth barrier covering the cell columns centred at x = 2950 and 3050
    s.items.push_back(box_item("wall", "shelf", 100, 999, {3000, 1000}));
    CHECK(circulation_term(s, 100.0) == doctest::Approx(180.0 / 760.0));
    // an item sitting on the door cell blocks everything
    s.items.push_back(box_item("plug", "shelf", 300, 300, {2000, 350}));
    CHECK(circulation_term(s, 100.0) == 1.0);
}

TEST_CASE("group term penalizes members beyond the rule distance") {
    auto s = room_4x2();
    s.room = {{0, 0}, {8000, 0}, {8000, 2000}, {0, 2000}};
    s.items.push_back(box_item("t", "table", 300, 300, {1000, 1000}));
    s.items.push_back(box_item("c", "chair", 200, 200, {1700, 1000}));
    CHECK(group_term(s) == 0.0);
    s.items[1].position = {3800, 1000};
    CHECK(group_term(s) == doctest::Approx(2.0 * 2.0));
}

TEST_CASE("alignment is zero for axis-aligned items") {
    auto s = room_4x2();
    s.items.push_back(box_item("a", "sofa", 300, 300, {1000, 1000}, std::numbers::pi / 2));
    s.items.push_back(box_item("b", "sofa", 300, 300, {3000, 1000}, 0.0));
    CHECK(alignment_term(s) == doctest::Approx(0.0).epsilon(1e-12));
    s.items[1].yaw = 0.2;
    CHECK(alignment_term(s) == doctest::Approx(0.04));
}

TEST_CASE("layout_cost rejects footprints outside the room") {
    auto s = room_4x2();
    s.items.push_back(box_item("a", "sofa", 500, 500, {100, 1000}));
    CHECK_THROWS_AS(layout_cost(s), Error);
}

TEST_CASE("proposals keep every footprint inside the room") {
    RngStream rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = crowded(rng);
        for (int i = 0; i < 200; ++i) {
            std::size_t moved = 99;
            s = propose_move(s, rng, {}, &moved);
            REQUIRE(moved < s.items.size());
            for (const auto& it : s.items) REQUIRE(inside_room(s, it));
        }
    }
}

TEST_CASE("greedy annealing never accepts an uphill move") {
    LayoutConfig cfg;
    cfg.t0 = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RngStream init(seed);
        const auto s = crowded(init);
        RngStream rng(seed + 100);
        const auto r = anneal_layout(s, rng, cfg);
        CHECK(r.iterations == 140);
        for (std::size_t i = 1; i < r.accepted_totals.size(); ++i) {
            CHECK(r.accepted_totals[i] <= r.accepted_totals[i - 1]);
        }
        CHECK(r.best_cost.total <= r.initial_cost.total);
        CHECK(r.best_cost.clearance <= r.initial_cost.clearance);
        CHECK(r.best_cost.total < r.initial_cost.total);
    }
}

TEST_CASE("annealing is deterministic for a seed") {
    RngStream init(5);
    const auto s = crowded(init);
    RngStream a(9), b(9);
    const auto ra = anneal_layout(s, a, {});
    const auto rb = anneal_layout(s, b, {});
    CHECK(ra.best == rb.best);
    CHECK(ra.accepted_totals == rb.accepted_totals);
    CHECK(ra.best_cost.total <= ra.initial_cost.total);
}

TEST_CASE("extract and apply round trip a corpus room") {
    const auto& cat = test::catalog();
    for (int i = 0; i < 6; ++i) {
        auto scene = generate_scene(21, i, cat);
        const auto before = scene;
        for (const auto& room : scene.rooms) {
            const auto st = extract_layout(scene, room.room_id, cat);
            apply_layout(scene, st, cat);
        }
        CHECK(scene == before);
    }
}

TEST_CASE("randomize_layout moves supported children with their supporter") {
    const auto& cat = test::catalog();
    SceneDocument scene;
    scene.scene_id = "s";
    scene.rooms.push_back(test::rect_room("r0", 6000, 5000));
    const auto& table = test::asset_of("table");
    scene.entities.push_back(test::mesh_entity("table", "r0", table, {3000, 0, 2500}, 0.0, 1));
    const auto& lamp = test::asset_of("lamp");
    scene.entities.push_back(test::mesh_entity("lamp", "r0", lamp, {3000, table.aabb.max.y, 2500}, 0.0, 2));
    scene.entities.push_back(test::mesh_entity("sofa", "r0", test::asset_of("sofa"), {3100, 0, 2600}, 0.0, 3));
    REQUIRE(supported_children(scene, "table", cat) == std::vector<std::string>{"lamp"});

    RngStream rng(3);
    const auto r = randomize_layout(scene, "r0", cat, rng);
    CHECK(r.best.items.size() == 2);
    CHECK(supported_children(scene, "table", cat) == std::vector<std::string>{"lamp"});
    const auto* lx = scene.find_entity("lamp")->get<Transform>();
    CHECK(lx->position.y == doctest::Approx(table.aabb.max.y));
    CHECK(validate_scene(scene).empty());
}
