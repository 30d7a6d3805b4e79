// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/dsl/checker.hpp"
#include "forge/dsl/interpreter.hpp"
#include "forge/dsl/parser.hpp"
#include "forge/error.hpp"

using namespace forge;
using namespace forge::dsl;

namespace {

Script compile(std::string_view src) {
    auto r = parse(src);
    INFO(src);
    REQUIRE(r.ok());
    const auto d = check(r.script);
    if (!d.empty()) FAIL(d[0].format());
    return std::move(r.script);
}

Script golden(const std::string& name) {
    return compile(test::read_file(test::source_dir() / "scripts" / name));
}

struct Harness {
    SceneDocument scene;
    RngStream rng{1};
    PickSink picks;
    std::vector<TrajectoryResult> trajectories;
    ViewImages images;

    StageContext context(StageKind k) {
        StageContext ctx;
        ctx.catalog = &test::catalog();
        ctx.rng = &rng;
        if (k != StageKind::pixel) ctx.scene = &scene;
        if (k == StageKind::entity) {
            ctx.picks = &picks;
            ctx.trajectories = &trajectories;
        }
        if (k == StageKind::pixel) ctx.images = &images;
        return ctx;
    }
    StageOutcome run(const Script& s, StageKind k) {
        auto ctx = context(k);
        return execute_stage(s, k, ctx);
    }
};

SceneDocument rooms_scene(std::vector<double> widths) {
    SceneDocument s;
    s.scene_id = "rooms";
    double x = 0.0;
    int i = 0;
    for (double w : widths) {
        s.rooms.push_back(test::rect_room("r" + std::to_string(i++), w, 4000, x));
        x += w;
    }
    return s;
}

std::string failure(Harness& h, std::string_view src, StageKind k = StageKind::scene) {
    const auto out = h.run(compile(src), k);
    REQUIRE(out.status == StageStatus::failed);
    REQUIRE(out.diagnostic);
    return out.diagnostic->format();
}

}  // namespace

TEST_CASE("filter golden") {
    const Script s = golden("scene_filter.mvs");
    Harness one;
    one.scene = rooms_scene({6000});
    CHECK(one.run(s, StageKind::scene).status == StageStatus::filtered);

    Harness small;
    small.scene = rooms_scene({6000, 4000});  // second room is 16 m^2
    CHECK(small.run(s, StageKind::scene).status == StageStatus::filtered);

    Harness keep;
    keep.scene = rooms_scene({6000, 5000, 7000});
    const auto before = keep.scene;
    CHECK(keep.run(s, StageKind::scene).status == StageStatus::completed);
    CHECK(keep.scene == before);
    CHECK(kFilteredCode == 7);
}

TEST_CASE("layout golden keeps the scene valid") {
    const Script s = golden("layout_sampler.mvs");
    for (int i = 0; i < 4; ++i) {
        Harness h;
        h.scene = generate_scene(61, i, test::catalog());
        REQUIRE(h.run(s, StageKind::scene).status == StageStatus::completed);
        CHECK(validate_scene(h.scene).empty());
    }
}

TEST_CASE("entity golden swaps only sofas and tables") {
    const Script s = golden("entity_sampler.mvs");
    const auto& cat = test::catalog();
    int swapped = 0;
    for (int i = 0; i < 8; ++i) {
        Harness h;
        h.scene = generate_scene(62, i, cat);
        const auto before = h.scene;
        REQUIRE(h.run(s, StageKind::entity).status == StageStatus::completed);
        for (std::size_t j = 0; j < before.entities.size(); ++j) {
            const Entity& a = before.entities[j];
            const Entity& b = h.scene.entities[j];
            if (const auto* m = a.get<MeshRef>()) {
                const std::string name = cat.category_name(m->category_id);
                if (name == "sofa" || name == "table") {
                    CHECK(b.get<MaterialRef>() != nullptr);
                    CHECK(b.get<MeshRef>()->category_id == m->category_id);
                    ++swapped;
                } else {
                    CHECK(b.get<MeshRef>()->asset_id == m->asset_id);
                    REQUIRE((b.get<MaterialRef>() == nullptr) == (a.get<MaterialRef>() == nullptr));
                    if (a.get<MaterialRef>() != nullptr) CHECK(*b.get<MaterialRef>() == *a.get<MaterialRef>());
                }
            }
            if (const auto* l = b.get<Light>()) {
                CHECK(l->intensity >= 10.0);
                CHECK(l->color_temperature >= kMinColorTemperature);
                CHECK(l->color_temperature <= kMaxColorTemperature);
            }
        }
        CHECK(validate_scene(h.scene).empty());
    }
    CHECK(swapped > 0);
}

TEST_CASE("custom output golden writes corner and camera records") {
    Harness h;
    h.scene = generate_scene(63, 1, test::catalog());
    REQUIRE(h.run(golden("custom_output.mvs"), StageKind::entity).status == StageStatus::completed);
    int corners = 0, cameras = 0;
    for (const auto& r : h.picks.records()) {
        if (r["type"] == "corners") {
            ++corners;
            const Room* room = h.scene.find_room(r["id"].get<std::string>());
            REQUIRE(room != nullptr);
            REQUIRE(r["corners"].size() == room->corners.size());
            CHECK(r["corners"][0]["x"].get<double>() == room->corners[0].x);
            CHECK(r["corners"][0]["z"].get<double>() == room->corners[0].y);
        } else {
            CHECK(r["type"] == "camera");
            CHECK(r["position"].contains("y"));
            ++cameras;
        }
    }
    CHECK(corners == static_cast<int>(h.scene.rooms.size()));
    CHECK(cameras > 0);
}

TEST_CASE("trajectory golden") {
    Harness h;
    h.scene = generate_scene(64, 0, test::catalog());
    REQUIRE(h.run(golden("trajectory.mvs"), StageKind::entity).status == StageStatus::completed);
    REQUIRE_FALSE(h.trajectories.empty());
    for (const auto& t : h.trajectories) {
        CHECK(t.keyframes.size() == 15);
        CHECK(t.trajectory_id == "traj_" + t.camera_id);
        const auto* cam = h.scene.find_entity(t.camera_id)->get<Camera>();
        CHECK(cam->image_width == 640);
        CHECK(cam->image_height == 480);
    }
}

TEST_CASE("depth noise golden") {
    Harness h;
    Image depth(8, 4, 1, 16);
    Image normal(8, 4, 3, 8);
    for (std::size_t i = 0; i < depth.data.size(); ++i) depth.data[i] = static_cast<std::uint16_t>(i % 3 == 0 ? 0 : 2000);
    for (std::size_t i = 0; i < normal.data.size(); ++i) normal.data[i] = static_cast<std::uint16_t>(i % 256);
    h.images["cam_0"] = {{"camera_depth.png", depth}, {"camera_normal.png", normal}};
    REQUIRE(h.run(golden("depth_noise.mvs"), StageKind::pixel).status == StageStatus::completed);
    const auto& files = h.images["cam_0"];
    REQUIRE(files.contains("camera_depth_noisy.png"));
    CHECK(files.at("camera_depth.png") == depth);
    const Image& noisy = files.at("camera_depth_noisy.png");
    for (std::size_t i = 0; i < depth.data.size(); ++i) CHECK((noisy.data[i] == 0) == (depth.data[i] == 0));
    // saved under the loaded name, replacing the original normal map
    const Image& inv = files.at("camera_normal.png");
    for (std::size_t i = 0; i < normal.data.size(); ++i) CHECK(inv.data[i] == 255 - normal.data[i]);
}

TEST_CASE("arithmetic and control flow") {
    Harness h;
    h.scene = rooms_scene({5000});
    const Script s = compile(R"(
stage entity {
    let total = 0
    for i in [1, 2, 3, 4] {
        if i == 2 { total = total + 10 } else if i > 3 { total = total + 100 } else { total = total + 1 }
    }
    let rec = {a: {b: 1}}
    rec.a.b = rec.a.b + total
    let names = ["x"] + ["y"]
    world.pick(type: "result", id: "r", total: total, rec: rec, names: names, s: "a" + "b", neg: -total)
}
)");
    REQUIRE(h.run(s, StageKind::entity).status == StageStatus::completed);
    const auto& r = h.picks.records().at(0);
    CHECK(r["total"] == 112);
    CHECK(r["rec"]["a"]["b"] == 113);
    CHECK(r["names"] == nlohmann::json::array({"x", "y"}));
    CHECK(r["s"] == "ab");
    CHECK(r["neg"] == -112);
}

TEST_CASE("loops iterate a snapshot") {
    Harness h;
    h.scene = rooms_scene({5000});
    const Script s = compile(R"(
stage entity {
    let xs = [1, 2]
    let n = 0
    for x in xs {
        xs = xs + [x]
        n = n + 1
    }
    world.pick(type: "n", id: 0, n: n, len: count(xs))
}
)");
    REQUIRE(h.run(s, StageKind::entity).status == StageStatus::completed);
    CHECK(h.picks.records()[0]["n"] == 2);
    CHECK(h.picks.records()[0]["len"] == 4);
}

TEST_CASE("runtime errors carry positions") {
    Harness h;
    h.scene = rooms_scene({5000});
    CHECK(failure(h, "stage scene {\n  let a = 1 / 0\n}") == "2:13: division by zero");
    CHECK(failure(h, "stage scene { if 1 { } }").find("1:18") == 0);
    CHECK(failure(h, "stage scene { let a = 1 + \"x\" }").find("1:25") == 0);
    CHECK(failure(h, "stage scene { for r in world.rooms { let z = r.nonexistent } }").find("nonexistent") !=
          std::string::npos);
    CHECK(failure(h, "stage entity { world.replace_model(id: \"ghost\") }", StageKind::entity) ==
          "1:40: unknown entity 'ghost'");
}

TEST_CASE("step budget stops runaway scripts") {
    Harness h;
    h.scene = rooms_scene({5000});
    auto ctx = h.context(StageKind::scene);
    ctx.step_limit = 1000;
    const Script s = compile("stage scene { let xs = [1,2,3,4,5,6,7,8,9,10]\n for a in xs { for b in xs { for c in xs { let d = a } } } }");
    const auto out = execute_stage(s, StageKind::scene, ctx);
    CHECK(out.status == StageStatus::failed);
}

TEST_CASE("entity fields can be assigned within range") {
    Harness h;
    h.scene = generate_scene(65, 0, test::catalog());
    const Script ok = compile(R"(
stage entity {
    for l in world.lights { l.intensity = 250
        l.color_temperature = 3000 }
    for c in world.cameras { c.fov = 75 }
}
)");
    REQUIRE(h.run(ok, StageKind::entity).status == StageStatus::completed);
    for (const auto& e : h.scene.entities) {
        if (const auto* l = e.get<Light>()) {
            CHECK(l->intensity == 250);
            CHECK(l->color_temperature == 3000);
        }
        if (const auto* c = e.get<Camera>()) CHECK(c->fov_deg == 75);
    }
    CHECK(failure(h, "stage entity { for l in world.lights { l.color_temperature = 50 } }", StageKind::entity)
              .find("color_temperature") != std::string::npos);
}

TEST_CASE("distributions attach and sample through the script") {
    Harness h;
    h.scene = generate_scene(66, 0, test::catalog());
    const Script s = compile(R"(
stage entity {
    for l in world.lights {
        world.attach_distribution(id: l.id, component: "Light", field: "intensity", kind: "uniform", lo: 100, hi: 200)
        world.sample_component(id: l.id, component: "Light")
    }
}
)");
    REQUIRE(h.run(s, StageKind::entity).status == StageStatus::completed);
    for (const auto& e : h.scene.entities) {
        if (const auto* l = e.get<Light>()) {
            CHECK(l->intensity >= 100);
            CHECK(l->intensity <= 200);
        }
    }
}

TEST_CASE("stage context must match the stage") {
    Harness h;
    const Script s = compile("stage pixel { }");
    auto ctx = h.context(StageKind::scene);
    CHECK_THROWS_AS(execute_stage(s, StageKind::pixel, ctx), Error);
    ctx.scene = nullptr;
    CHECK_THROWS_AS(execute_stage(compile("stage scene { }"), StageKind::scene, ctx), Error);
}

TEST_CASE("missing stage completes trivially") {
    Harness h;
    h.scene = rooms_scene({5000});
    CHECK(h.run(compile("stage pixel { }"), StageKind::scene).status == StageStatus::completed);
}
