// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the unit tests.

#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "forge/catalog.hpp"
#include "forge/scene.hpp"

namespace forge::test {

inline const AssetCatalog& catalog() {
    static const AssetCatalog c = generate_catalog(1);
    return c;
}

inline std::filesystem::path source_dir() { return FORGE_SOURCE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("forge_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline Room rect_room(std::string id, double w, double d, double x0 = 0.0, RoomType type = RoomType::living) {
    return Room::make(std::move(id), {{x0, 0.0}, {x0 + w, 0.0}, {x0 + w, d}, {x0, d}}, 2800.0, type);
}

inline Entity mesh_entity(std::string id, std::string room, const AssetRecord& asset, Vec3 position,
                          double yaw = 0.0, int instance = 1) {
    Entity e;
    e.entity_id = std::move(id);
    e.room_id = std::move(room);
    e.set(Transform{position, {yaw, 0.0, 0.0}, {1.0, 1.0, 1.0}});
    e.set(MeshRef{asset.asset_id, asset.category_id});
    e.set(SemanticLabel{asset.category_id, instance});
    return e;
}

/// First asset of a named category in the test catalog.
inline const AssetRecord& asset_of(const std::string& category) {
    const int id = *catalog().category_id(category);
    for (const auto& a : catalog().assets()) {
        if (a.category_id == id) return a;
    }
    throw std::runtime_error("no asset for " + category);
}

}  // namespace forge::test
