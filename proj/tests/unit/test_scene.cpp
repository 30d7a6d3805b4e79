// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/scene_json.hpp"

using namespace forge;

namespace {

bool has_violation(const SceneDocument& s, ViolationKind k) {
    const auto v = validate_scene(s);
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

SceneDocument small_scene() {
    SceneDocument s;
    s.scene_id = "s0";
    s.rooms.push_back(test::rect_room("r0", 5000, 4000));
    s.entities.push_back(test::mesh_entity("sofa_0", "r0", test::asset_of("sofa"), {2000, 0, 2000}));
    Entity light;
    light.entity_id = "light_0";
    light.room_id = "r0";
    light.set(Transform{{2500, 2600, 2000}, {}, {1, 1, 1}});
    light.set(Light{});
    s.entities.push_back(light);
    return s;
}

}  // namespace

TEST_CASE("room area derives from corners") {
    const Room r = test::rect_room("r", 5000, 4000);
    CHECK(r.area == doctest::Approx(20.0));
}

TEST_CASE("valid scene has no violations") {
    CHECK(validate_scene(small_scene()).empty());
}

TEST_CASE("validation catches each invariant") {
    auto s = small_scene();
    s.entities.push_back(s.entities[0]);
    CHECK(has_violation(s, ViolationKind::duplicate_id));

    s = small_scene();
    s.rooms.push_back(s.rooms[0]);
    CHECK(has_violation(s, ViolationKind::duplicate_room_id));

    s = small_scene();
    s.entities[0].room_id = "nowhere";
    CHECK(has_violation(s, ViolationKind::unknown_room));

    s = small_scene();
    s.rooms[0].area = 99.0;
    CHECK(has_violation(s, ViolationKind::area_mismatch));

    s = small_scene();
    s.rooms[0].corners = {{0, 0}, {1000, 1000}, {1000, 0}, {0, 1000}};
    CHECK(has_violation(s, ViolationKind::invalid_polygon));

    s = small_scene();
    s.entities[0].components.erase(ComponentKind::transform);
    CHECK(has_violation(s, ViolationKind::missing_transform));

    s = small_scene();
    auto dup = test::mesh_entity("sofa_1", "r0", test::asset_of("sofa"), {4000, 0, 2000});
    s.entities.push_back(dup);
    CHECK(has_violation(s, ViolationKind::duplicate_instance));

    s = small_scene();
    s.entities[1].get<Light>()->color_temperature = 50.0;
    CHECK(has_violation(s, ViolationKind::invalid_component));
}

TEST_CASE("attach_distribution checks compatibility") {
    const auto s = small_scene();
    const Entity& sofa = s.entities[0];
    const Entity& light = s.entities[1];

    CHECK_THROWS_AS(attach_distribution(sofa, ComponentKind::light, "intensity", UniformDist{{1}, {2}}), Error);
    try {
        attach_distribution(light, ComponentKind::light, "intensity", SimilarityDist{3});
        FAIL("expected incompatible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::incompatible);
    }
    // position takes 1 (broadcast) or 3 values
    CHECK_THROWS_AS(attach_distribution(sofa, ComponentKind::transform, "position", UniformDist{{0, 0}, {1, 1}}), Error);
    // lo > hi
    CHECK_THROWS_AS(attach_distribution(light, ComponentKind::light, "intensity", UniformDist{{5}, {1}}), Error);

    const Entity ok = attach_distribution(light, ComponentKind::light, "intensity", UniformDist{{100}, {200}});
    CHECK(ok.distributions.size() == 1);
}

TEST_CASE("sampled values stay within descriptor support") {
    const auto s = small_scene();
    Entity light = attach_distribution(s.entities[1], ComponentKind::light, "intensity", UniformDist{{100}, {200}});
    light = attach_distribution(light, ComponentKind::light, "color_temperature",
                                DiscreteDist{{{DiscreteValue{3000.0}, 1.0}, {DiscreteValue{5000.0}, 3.0}}});
    RngStream rng(8);
    int warm = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto c = sample_component(light, ComponentKind::light, rng);
        const auto& l = std::get<Light>(c);
        REQUIRE(l.intensity >= 100.0);
        REQUIRE(l.intensity <= 200.0);
        REQUIRE((l.color_temperature == 3000.0 || l.color_temperature == 5000.0));
        warm += l.color_temperature == 3000.0;
        CHECK(l.light_type == LightType::point);
    }
    CHECK(static_cast<double>(warm) / n == doctest::Approx(0.25).epsilon(0.05));
    CHECK_THROWS_AS(sample_component(s.entities[0], ComponentKind::transform, rng), Error);
}

TEST_CASE("scene JSON round trip is byte stable") {
    const auto docs = generate_corpus(8, 5, test::catalog());
    for (const auto& d : docs) {
        CHECK(validate_scene(d).empty());
        const std::string text = serialize_scene(d);
        const SceneDocument back = parse_scene(text);
        CHECK(back == d);
        CHECK(serialize_scene(back) == text);
    }
}

TEST_CASE("scene JSON rejects schema violations") {
    auto j = to_json(small_scene());
    j["entities"][0]["components"][0]["kind"] = "Bogus";
    CHECK_THROWS_AS(scene_from_json(j), Error);
    CHECK_THROWS_AS(parse_scene("{not json"), Error);
}

TEST_CASE("corpus scenes depend only on seed and index") {
    const auto a = generate_scene(9, 3, test::catalog());
    const auto b = generate_corpus(5, 9, test::catalog());
    CHECK(a == b[3]);
    CHECK(a.scene_id == corpus_scene_id(9, 3));
}
