// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <thread>

#include "doctest.h"
#include "support.hpp"

#include "forge/corpus.hpp"
#include "forge/error.hpp"
#include "forge/store.hpp"

using namespace forge;

namespace {

std::vector<std::string> scan(const std::vector<SceneDocument>& docs, const SceneQuery& q) {
    std::vector<std::string> ids;
    for (const auto& d : docs) {
        const int n = static_cast<int>(d.rooms.size());
        if (q.min_rooms && n < *q.min_rooms) continue;
        if (q.max_rooms && n > *q.max_rooms) continue;
        if (q.min_area_m2 &&
            std::any_of(d.rooms.begin(), d.rooms.end(), [&](const Room& r) { return r.area < *q.min_area_m2; }))
            continue;
        if (q.required_room_types) {
            bool all = true;
            for (RoomType t : *q.required_room_types) {
                all &= std::any_of(d.rooms.begin(), d.rooms.end(), [&](const Room& r) { return r.room_type == t; });
            }
            if (!all) continue;
        }
        ids.push_back(d.scene_id);
    }
    std::sort(ids.begin(), ids.end());
    if (q.limit && static_cast<int>(ids.size()) > *q.limit) ids.resize(static_cast<std::size_t>(*q.limit));
    return ids;
}

}  // namespace

TEST_CASE("query matches a brute-force scan") {
    test::TempDir dir;
    const auto docs = generate_corpus(60, 2, test::catalog());
    SceneStore store(dir.path());
    store.ingest_many(docs);
    CHECK(store.size() == 60);

    RngStream rng(3);
    for (int i = 0; i < 300; ++i) {
        SceneQuery q;
        if (rng.uniform() < 0.5) q.min_rooms = 1 + static_cast<int>(rng.below(4));
        if (rng.uniform() < 0.5) q.max_rooms = (q.min_rooms ? *q.min_rooms : 1) + static_cast<int>(rng.below(4));
        if (rng.uniform() < 0.5) q.min_area_m2 = rng.uniform(5.0, 30.0);
        if (rng.uniform() < 0.3) q.required_room_types = std::set<RoomType>{static_cast<RoomType>(rng.below(5))};
        if (rng.uniform() < 0.2) q.limit = 1 + static_cast<int>(rng.below(10));
        CHECK(store.query(q) == scan(docs, q));
    }
}

TEST_CASE("store persists and reloads") {
    test::TempDir dir;
    const auto docs = generate_corpus(5, 4, test::catalog());
    {
        SceneStore store(dir.path());
        for (const auto& d : docs) store.ingest(d);
    }
    SceneStore reopened(dir.path());
    CHECK(reopened.size() == 5);
    for (const auto& d : docs) {
        CHECK(reopened.contains(d.scene_id));
        CHECK(reopened.load(d.scene_id) == d);
    }
    CHECK_THROWS_AS(reopened.load("missing"), Error);
}

TEST_CASE("re-ingest replaces the document and its summary") {
    test::TempDir dir;
    SceneStore store(dir.path());
    auto d = generate_scene(4, 0, test::catalog());
    store.ingest(d);
    d.rooms.resize(1);
    d.entities.erase(std::remove_if(d.entities.begin(), d.entities.end(),
                                    [&](const Entity& e) { return e.room_id && *e.room_id != d.rooms[0].room_id; }),
                     d.entities.end());
    store.ingest(d);
    CHECK(store.size() == 1);
    CHECK(store.index()[0].room_count == 1);
    CHECK(store.load(d.scene_id).rooms.size() == 1);
}

TEST_CASE("invalid documents and ids are rejected") {
    test::TempDir dir;
    SceneStore store(dir.path());
    auto d = generate_scene(4, 1, test::catalog());
    d.rooms[0].area += 5.0;
    CHECK_THROWS_AS(store.ingest(d), Error);
    CHECK(store.size() == 0);
    CHECK_FALSE(SceneStore::valid_scene_id("../etc"));
    CHECK_FALSE(SceneStore::valid_scene_id(""));
    CHECK(SceneStore::valid_scene_id("scene_001"));

    SceneQuery q;
    q.min_rooms = 3;
    q.max_rooms = 2;
    CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("concurrent readers see a consistent index") {
    test::TempDir dir;
    const auto docs = generate_corpus(20, 6, test::catalog());
    SceneStore store(dir.path());
    store.ingest_many(docs);
    std::vector<std::thread> readers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&] {
            for (int i = 0; i < 50; ++i) {
                if (store.query({}).size() != 20) ++mismatches;
            }
        });
    }
    for (int i = 0; i < 5; ++i) store.ingest(docs[static_cast<std::size_t>(i)]);
    for (auto& t : readers) t.join();
    CHECK(mismatches == 0);
}
