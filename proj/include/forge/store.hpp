// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "forge/scene.hpp"

namespace forge {

struct SceneQuery {
    std::optional<int> min_rooms;
    std::optional<int> max_rooms;
    /// Every room of the scene must reach this area.
    std::optional<double> min_area_m2;
    std::optional<std::set<RoomType>> required_room_types;
    std::optional<int> limit;

    /// Throws Error(invalid_argument) when min > max or limit < 1.
    void validate() const;
};

struct SceneSummary {
    std::string scene_id;
    int room_count = 0;
    std::vector<double> room_areas;
    std::vector<RoomType> room_types;
    friend bool operator==(const SceneSummary&, const SceneSummary&) = default;
};

SceneSummary summarize(const SceneDocument& scene);
bool matches(const SceneSummary& summary, const SceneQuery& query);

/// File-backed scene database:
///   <root>/scenes/<scene_id>.json  one document per scene
///   <root>/index.json              summaries sorted by scene_id
/// Writers take an exclusive lock on <root>/.lock and publish files with
/// write-temp-then-rename, so readers never observe a torn index.
class SceneStore {
  public:
    explicit SceneStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    /// Validates and persists the document; re-ingesting an id replaces it.
    std::string ingest(const SceneDocument& document);
    /// Batch ingest with a single index publication. All documents are
    /// validated before anything is written.
    std::vector<std::string> ingest_many(std::span<const SceneDocument> documents);

    std::vector<std::string> query(const SceneQuery& q) const;
    SceneDocument load(const std::string& scene_id) const;
    bool contains(const std::string& scene_id) const;

    std::vector<SceneSummary> index() const;
    std::size_t size() const;
    /// Re-reads index.json (picks up writes by other processes).
    void refresh();

    static bool valid_scene_id(const std::string& id);

  private:
    std::filesystem::path scene_path(const std::string& id) const;
    void write_index_locked(const std::vector<SceneSummary>& index) const;
    std::vector<SceneSummary> read_index_file() const;

    std::filesystem::path root_;
    mutable std::shared_mutex mutex_;
    std::vector<SceneSummary> index_;
};

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename).
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace forge
