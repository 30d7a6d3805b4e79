// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "forge/dsl/interpreter.hpp"
#include "forge/layout.hpp"
#include "forge/pixel.hpp"
#include "forge/render.hpp"
#include "forge/rng.hpp"
#include "forge/store.hpp"
#include "forge/trajectory.hpp"

namespace forge {

enum class SeedStage { scene, entity, render, pixel };

std::string_view to_string(SeedStage s);

/// Seed of the stream for one (scene, stage, slot) tuple. Independent of
/// scheduling, so outputs do not depend on the worker count.
std::uint64_t seed_for(std::uint64_t master_seed, std::string_view scene_id, SeedStage stage,
                       std::uint64_t slot);
RngStream stream_for(std::uint64_t master_seed, std::string_view scene_id, SeedStage stage, std::uint64_t slot);

std::string hex_seed(std::uint64_t seed);

struct RenderSettings {
    RenderMode mode = RenderMode::raycast;
    int samples = 4;
    int bounces = 2;
    std::optional<std::pair<int, int>> resolution;  // applied to every camera before the scene stage
};

struct JobSpec {
    std::filesystem::path store_root;
    std::filesystem::path catalog_path;
    std::filesystem::path script_path;
    std::filesystem::path output_root;
    SceneQuery query;
    RenderSettings render;
    std::uint64_t master_seed = 0;
    int workers = 1;

    LayoutConfig layout;
    std::optional<int> layout_iterations;
    TrajectoryConfig trajectory;
    NoiseParams noise;
    int replace_k = 8;

    /// Relative paths resolve against `base_dir`. Throws Error(invalid_argument)
    /// for unknown keys or bad values.
    static JobSpec from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
    /// Reads a job file; FORGE_WORKERS in the environment overrides `workers`.
    static JobSpec load(const std::filesystem::path& path);

    /// Every setting that influences outputs (paths excluded).
    nlohmann::json config_echo() const;
};

SceneQuery query_from_json(const nlohmann::json& j);

struct SceneResult {
    std::string scene_id;
    dsl::StageStatus status = dsl::StageStatus::completed;
    std::string error_stage;
    std::optional<dsl::Diagnostic> diagnostic;
    nlohmann::json seeds;
    nlohmann::json views = nlohmann::json::array();  // [{view, files: [...]}, ...]
    std::vector<std::string> files;                  // scene-level files (picks.json, trajectory.json)
    bool depth_clamped = false;
    int renders = 0;
    nlohmann::json timing = nlohmann::json::object();  // seconds per stage
};

struct JobReport {
    std::vector<SceneResult> scenes;  // ordered by scene id
    nlohmann::json manifest;
    double wall_seconds = 0.0;
};

/// Loads the catalog and script, checks the script, queries the store, runs
/// every scene and writes output_root/manifest.json. Throws Error on
/// pre-flight failure (unreadable inputs, script diagnostics); per-scene
/// failures are recorded in the manifest instead.
JobReport run_job(const JobSpec& spec);

/// Runs one scene end to end and writes its outputs under
/// output_root/<scene_id>/. Exposed for replay and debugging.
SceneResult run_scene(const JobSpec& spec, const SceneDocument& scene, const AssetCatalog& catalog,
                      const dsl::Script& script);

/// output_root/manifest.json via write-temp-then-rename.
void write_manifest(const nlohmann::json& manifest, const std::filesystem::path& output_root);

/// Manifest without the "execution" section (timings, worker count), for
/// comparing runs.
nlohmann::json deterministic_part(const nlohmann::json& manifest);

/// Parses and checks a script file; throws Error(validation) listing every
/// diagnostic as "path:line:col: message".
dsl::Script load_script(const std::filesystem::path& path);

}  // namespace forge
