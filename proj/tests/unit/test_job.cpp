// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/job.hpp"

using namespace forge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Fixture {
    test::TempDir dir;
    std::vector<SceneDocument> docs;

    explicit Fixture(int scenes, const std::string& script) {
        test::catalog().save(dir.path() / "catalog.json");
        docs = generate_corpus(scenes, 71, test::catalog());
        SceneStore store(dir.path() / "store");
        store.ingest_many(docs);
        std::ofstream(dir.path() / "job.mvs") << script;
    }

    JobSpec spec(int workers, const std::string& out = "out") const {
        json j = {{"store_root", "store"},     {"catalog_path", "catalog.json"},
                  {"script_path", "job.mvs"},  {"output_root", out},
                  {"master_seed", 42},         {"workers", workers},
                  {"render", {{"resolution", {24, 16}}}}};
        return JobSpec::from_json(j, dir.path());
    }
};

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().filename() != "manifest.json") {
            out[fs::relative(e.path(), root).string()] = test::read_file(e.path());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("stream seeds separate scenes, stages and slots") {
    std::set<std::uint64_t> seen;
    for (const char* scene : {"a", "b"}) {
        for (auto st : {SeedStage::scene, SeedStage::entity, SeedStage::render, SeedStage::pixel}) {
            for (std::uint64_t slot = 0; slot < 3; ++slot) seen.insert(seed_for(1, scene, st, slot));
        }
    }
    CHECK(seen.size() == 24);
    CHECK(seed_for(1, "a", SeedStage::scene, 0) == seed_for(1, "a", SeedStage::scene, 0));
    CHECK(seed_for(1, "a", SeedStage::scene, 0) != seed_for(2, "a", SeedStage::scene, 0));
    CHECK(hex_seed(255) == "0x00000000000000ff");
}

TEST_CASE("job spec parsing") {
    const json base = {{"store_root", "s"}, {"catalog_path", "/abs/c.json"}, {"script_path", "x.mvs"},
                       {"output_root", "o"}};
    const auto spec = JobSpec::from_json(base, "/base");
    CHECK(spec.store_root == fs::path("/base/s"));
    CHECK(spec.catalog_path == fs::path("/abs/c.json"));
    CHECK(spec.workers == 1);

    json j = base;
    j["master_seed"] = "0x2a";
    CHECK(JobSpec::from_json(j, "/").master_seed == 42);
    j = base;
    j["bogus"] = 1;
    CHECK_THROWS_AS(JobSpec::from_json(j, "/"), Error);
    j = base;
    j["config"] = {{"layout", {{"nope", 1}}}};
    CHECK_THROWS_AS(JobSpec::from_json(j, "/"), Error);
    j = base;
    j["render"] = {{"mode", "rasterize"}};
    CHECK_THROWS_AS(JobSpec::from_json(j, "/"), Error);
    j = base;
    j["workers"] = 0;
    CHECK_THROWS_AS(JobSpec::from_json(j, "/"), Error);
    j = base;
    j.erase("store_root");
    CHECK_THROWS_AS(JobSpec::from_json(j, "/"), Error);
    j = base;
    j["query"] = {{"min_rooms", 2}, {"room_types", {"kitchen"}}};
    const auto q = JobSpec::from_json(j, "/").query;
    CHECK(q.min_rooms == 2);
    CHECK(q.required_room_types->contains(RoomType::kitchen));
}

TEST_CASE("filtered and failing scenes are isolated") {
    const std::string crash_id = corpus_scene_id(71, 1);
    const std::string skip_id = corpus_scene_id(71, 2);
    Fixture fx(4, "stage scene {\n"
                  "    if world.scene_id == \"" + skip_id + "\" { skip }\n"
                  "    if world.scene_id == \"" + crash_id + "\" { let x = 1 / 0 }\n"
                  "}\n");
    const auto spec = fx.spec(2);
    const auto report = run_job(spec);
    REQUIRE(report.scenes.size() == 4);
    const auto& m = report.manifest;
    CHECK(m["totals"]["completed"] == 2);
    CHECK(m["totals"]["filtered"] == 1);
    CHECK(m["totals"]["errors"] == 1);
    CHECK(m["rng_algorithm"] == "philox4x32-10");
    for (const auto& s : m["scenes"]) {
        const std::string id = s["scene_id"];
        if (id == crash_id) {
            CHECK(s["status"] == "error");
            CHECK(s["code"] == 1);
            CHECK(s["error"]["stage"] == "scene");
            CHECK(s["error"]["diagnostic"]["line"] == 3);
            CHECK_FALSE(fs::exists(spec.output_root / id));
        } else if (id == skip_id) {
            CHECK(s["status"] == "filtered");
            CHECK(s["code"] == 7);
            CHECK_FALSE(fs::exists(spec.output_root / id));
        } else {
            CHECK(s["status"] == "completed");
            CHECK(s["code"] == 0);
            REQUIRE(s["views"].size() > 0);
            for (const auto& v : s["views"]) {
                for (const auto& f : v["files"]) CHECK(fs::exists(spec.output_root / id / v["view"].get<std::string>() / f.get<std::string>()));
            }
        }
    }
    CHECK(fs::exists(spec.output_root / "manifest.json"));
    CHECK(json::parse(test::read_file(spec.output_root / "manifest.json")) == m);
    for (const auto& e : fs::directory_iterator(spec.output_root)) {
        CHECK(e.path().filename().string().rfind(".tmp", 0) != 0);
    }
}

TEST_CASE("outputs do not depend on the worker count") {
    Fixture fx(5, test::read_file(test::source_dir() / "scripts" / "entity_sampler.mvs") + "\n" +
                      test::read_file(test::source_dir() / "scripts" / "depth_noise.mvs"));
    const auto a = run_job(fx.spec(1, "one"));
    const auto b = run_job(fx.spec(3, "three"));
    CHECK(deterministic_part(a.manifest) == deterministic_part(b.manifest));
    CHECK(a.manifest["totals"]["completed"] == 5);
    const auto ta = tree(fx.dir.path() / "one");
    const auto tb = tree(fx.dir.path() / "three");
    CHECK(ta.size() > 20);
    CHECK(ta == tb);
}

TEST_CASE("empty query writes an empty manifest") {
    Fixture fx(2, "stage scene { }");
    auto spec = fx.spec(1);
    spec.query.min_rooms = 99;
    const auto r = run_job(spec);
    CHECK(r.scenes.empty());
    CHECK(r.manifest["totals"]["scenes"] == 0);
    CHECK(fs::exists(spec.output_root / "manifest.json"));
}

TEST_CASE("bad scripts are rejected before any scene runs") {
    Fixture fx(2, "stage scene { gen_depth(noise: 1) }");
    const auto spec = fx.spec(1);
    CHECK_THROWS_AS(run_job(spec), Error);
    CHECK_FALSE(fs::exists(spec.output_root / "manifest.json"));
}

TEST_CASE("trajectory frames become views") {
    Fixture fx(1, test::read_file(test::source_dir() / "scripts" / "trajectory.mvs"));
    auto spec = fx.spec(1);
    spec.render.resolution.reset();
    const auto r = run_job(spec);
    REQUIRE(r.scenes.size() == 1);
    const auto& s = r.manifest["scenes"][0];
    REQUIRE(s["status"] == "completed");
    int frames = 0;
    for (const auto& v : s["views"]) frames += v.contains("trajectory_id");
    CHECK(frames % 15 == 0);
    CHECK(frames > 0);
    CHECK(fs::exists(spec.output_root / s["scene_id"].get<std::string>() / "trajectory.json"));
}
