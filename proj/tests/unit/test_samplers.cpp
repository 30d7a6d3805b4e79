// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/placement.hpp"
#include "forge/samplers.hpp"

using namespace forge;

TEST_CASE("light tuning stays in the mode's range") {
    RngStream rng(1);
    for (auto mode : {LightMode::day, LightMode::night, LightMode::free}) {
        const auto r = light_range(mode);
        for (int i = 0; i < 2000; ++i) {
            const Light l = tune_light(Light{}, mode, rng);
            REQUIRE(l.intensity >= r.intensity_lo);
            REQUIRE(l.intensity <= r.intensity_hi);
            REQUIRE(l.color_temperature >= r.temperature_lo);
            REQUIRE(l.color_temperature <= r.temperature_hi);
        }
    }
    const Light base{123.0, 4567.0, LightType::area};
    const Light t = tune_light(base, LightMode::day, rng, {true, false});
    CHECK(t.intensity == 123.0);
    CHECK(t.light_type == LightType::area);
    CHECK(parse_light_mode("night") == LightMode::night);
    CHECK_FALSE(parse_light_mode("dusk"));
}

TEST_CASE("replace_material draws from the series") {
    const auto& cat = test::catalog();
    const auto e = test::mesh_entity("s", "r", test::asset_of("sofa"), {});
    RngStream rng(2);
    for (int i = 0; i < 100; ++i) {
        const Entity out = replace_material(e, cat, rng);
        const auto* m = out.get<MaterialRef>();
        REQUIRE(m != nullptr);
        CHECK(cat.series_of(m->material_id) == m->series_id);
        bool in_category = false;
        for (const auto& s : cat.series()) in_category |= s.series_id == m->series_id && s.category_id == e.get<MeshRef>()->category_id;
        CHECK(in_category);
    }
}

TEST_CASE("replace_model keeps category and floor contact") {
    const auto& cat = test::catalog();
    for (int i = 0; i < 20; ++i) {
        auto scene = generate_scene(31, i, cat);
        RngStream rng(static_cast<std::uint64_t>(i));
        for (std::size_t j = 0; j < scene.entities.size(); ++j) {
            const Entity before = scene.entities[j];
            if (!before.has(ComponentKind::mesh_ref)) continue;
            std::string supporter;
            const double support = support_height(scene, before, cat, &supporter);
            if (!supporter.empty()) continue;
            replace_model(scene, before.entity_id, cat, rng, 8);
            const Entity& after = scene.entities[j];
            CHECK(after.get<MeshRef>()->category_id == before.get<MeshRef>()->category_id);
            const auto box = entity_world_aabb(after, cat);
            CHECK(std::fabs(box->min.y - support) < 1e-6);
            CHECK(after.get<Transform>()->rotation == before.get<Transform>()->rotation);
        }
        CHECK(validate_scene(scene).empty());
    }
}

TEST_CASE("replace_model lifts supported children to the new top") {
    const auto& cat = test::catalog();
    SceneDocument scene;
    scene.scene_id = "s";
    scene.rooms.push_back(test::rect_room("r0", 6000, 5000));
    const auto& table = test::asset_of("table");
    scene.entities.push_back(test::mesh_entity("table", "r0", table, {3000, 0, 2500}, 0.0, 1));
    scene.entities.push_back(test::mesh_entity("vase", "r0", test::asset_of("vase"), {3000, table.aabb.max.y, 2500}, 0.0, 2));
    RngStream rng(8);
    const auto changed = replace_model(scene, "table", cat, rng, 20);
    CHECK(changed == std::vector<std::string>{"table", "vase"});
    const auto top = entity_world_aabb(*scene.find_entity("table"), cat)->max.y;
    const auto vase_bottom = entity_world_aabb(*scene.find_entity("vase"), cat)->min.y;
    CHECK(vase_bottom == doctest::Approx(top));
}

TEST_CASE("similarity descriptor overrides k") {
    const auto& cat = test::catalog();
    SceneDocument scene;
    scene.scene_id = "s";
    scene.rooms.push_back(test::rect_room("r0", 6000, 5000));
    auto e = test::mesh_entity("chair", "r0", test::asset_of("chair"), {3000, 0, 2500});
    e = attach_distribution(e, ComponentKind::mesh_ref, "asset_id", SimilarityDist{1});
    scene.entities.push_back(e);
    const auto nearest = cat.nearest_models(test::asset_of("chair").asset_id, 1);
    RngStream rng(1);
    if (cat.asset(nearest[0]).category_id == e.get<MeshRef>()->category_id) {
        replace_model(scene, "chair", cat, rng, 50);
        CHECK(scene.entities[0].get<MeshRef>()->asset_id == nearest[0]);
    } else {
        CHECK_THROWS_AS(replace_model(scene, "chair", cat, rng, 50), Error);
    }
}

TEST_CASE("sample_transform keeps room-bound meshes inside") {
    const auto& cat = test::catalog();
    SceneDocument scene;
    scene.scene_id = "s";
    scene.rooms.push_back(test::rect_room("r0", 4000, 4000));
    const auto e = test::mesh_entity("sofa", "r0", test::asset_of("sofa"), {2000, 0, 2000});
    scene.entities.push_back(e);
    RngStream rng(5);
    const GaussianDist g{{0.0}, {3000.0}};
    for (int i = 0; i < 500; ++i) {
        const Entity out = sample_transform(scene, e, "position", g, cat, rng);
        const auto box = entity_world_aabb(out, cat);
        CHECK(contains_rect(scene.rooms[0].corners, footprint_of(*box)));
    }
    CHECK_THROWS_AS(sample_transform(scene, e, "scale", g, cat, rng), Error);
    CHECK_THROWS_AS(sample_transform(scene, e, "position", UniformDist{{0, 0}, {1, 1}}, cat, rng), Error);
}

TEST_CASE("camera attributes validate their values") {
    Entity cam;
    cam.entity_id = "cam";
    cam.set(Camera{});
    cam = set_camera_attr(cam, "imageWidth", 640.0);
    cam = set_camera_attr(cam, "model", std::string("panoramic"));
    CHECK(cam.get<Camera>()->image_width == 640);
    CHECK(cam.get<Camera>()->model == CameraModelKind::panoramic);
    CHECK_THROWS_AS(set_camera_attr(cam, "imageWidth", 0.5), Error);
    CHECK_THROWS_AS(set_camera_attr(cam, "fov", 180.0), Error);
    CHECK_THROWS_AS(set_camera_attr(cam, "model", std::string("fisheye")), Error);
    try {
        set_camera_attr(cam, "zoom", 1.0);
        FAIL("expected invalid_argument");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_argument);
    }
}

TEST_CASE("pick records need type and id") {
    PickSink sink;
    sink.add({{"type", "camera"}, {"id", "cam_0"}});
    sink.add({{"type", "corners"}, {"id", 3}});
    CHECK_THROWS_AS(sink.add({{"id", "x"}}), Error);
    CHECK_THROWS_AS(sink.add({{"type", "x"}, {"id", nullptr}}), Error);
    CHECK_THROWS_AS(sink.add(nlohmann::json::array()), Error);
    CHECK(sink.records().size() == 2);
    CHECK(nlohmann::json::parse(sink.serialize())[1]["id"] == 3);
}
