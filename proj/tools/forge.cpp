// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

// forge: command-line front end for jobs, scripts, the scene store and
// single-view debug renders.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "forge/catalog.hpp"
#include "forge/corpus.hpp"
#include "forge/dsl/checker.hpp"
#include "forge/dsl/parser.hpp"
#include "forge/error.hpp"
#include "forge/image.hpp"
#include "forge/job.hpp"
#include "forge/render.hpp"
#include "forge/camera.hpp"
#include "forge/scene_json.hpp"
#include "forge/store.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw forge::Error(forge::Errc::io, fmt::format("cannot read {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_run(const std::string& spec_path) {
    const forge::JobSpec spec = forge::JobSpec::load(spec_path);
    const auto report = forge::run_job(spec);
    const auto& t = report.manifest.at("totals");
    fmt::print("{} scenes: {} completed, {} filtered, {} errors, {} renders in {:.2f}s\n", t.at("scenes").get<int>(),
               t.at("completed").get<int>(), t.at("filtered").get<int>(), t.at("errors").get<int>(),
               t.at("renders").get<int>(), report.wall_seconds);
    for (const auto& s : report.scenes) {
        if (s.status == forge::dsl::StageStatus::failed) {
            fmt::print(stderr, "{}: {} stage: {}\n", s.scene_id, s.error_stage, s.diagnostic->format());
        }
    }
    fmt::print("manifest: {}\n", (spec.output_root / "manifest.json").string());
    return 0;
}

int cmd_check(const std::string& path, bool print_canonical) {
    const std::string source = read_text(path);
    auto parsed = forge::dsl::parse(source);
    auto diags = parsed.diagnostics;
    if (diags.empty()) diags = forge::dsl::check(parsed.script);
    for (const auto& d : diags) {
        fmt::print(stderr, "{}:{}\n", path, d.format());
        if (!d.expected.empty()) fmt::print(stderr, "  expected one of: {}\n", fmt::join(d.expected, ", "));
    }
    if (!diags.empty()) return 1;
    if (print_canonical) fmt::print("{}", forge::dsl::print(parsed.script));
    return 0;
}

int cmd_catalog_gen(const std::string& out, std::uint64_t seed, int per_category, int dim) {
    forge::CatalogOptions opts;
    opts.assets_per_category = per_category;
    opts.feature_dim = dim;
    const auto catalog = forge::generate_catalog(seed, opts);
    catalog.save(out);
    fmt::print("wrote {} assets to {}\n", catalog.assets().size(), out);
    return 0;
}

int cmd_store_gen(const std::string& root, const std::string& catalog_path, int count, std::uint64_t seed) {
    const auto catalog = forge::AssetCatalog::load(catalog_path);
    const auto docs = forge::generate_corpus(count, seed, catalog);
    forge::SceneStore store(root);
    store.ingest_many(docs);
    fmt::print("ingested {} scenes into {}\n", docs.size(), root);
    return 0;
}

int cmd_store_ingest(const std::string& root, const std::vector<std::string>& files) {
    std::vector<forge::SceneDocument> docs;
    for (const auto& f : files) docs.push_back(forge::read_scene_file(f));
    forge::SceneStore store(root);
    for (const auto& id : store.ingest_many(docs)) fmt::print("{}\n", id);
    return 0;
}

int cmd_store_query(const std::string& root, const std::string& query_json) {
    const forge::SceneStore store(root);
    const forge::SceneQuery q = forge::query_from_json(query_json.empty() ? json::object() : json::parse(query_json));
    for (const auto& id : store.query(q)) fmt::print("{}\n", id);
    return 0;
}

int cmd_render_one(const std::string& root, const std::string& catalog_path, const std::string& scene_id,
                   const std::string& camera_id, const std::string& out_dir, const std::string& mode_name) {
    const forge::SceneStore store(root);
    const auto doc = store.load(scene_id);
    const auto catalog = forge::AssetCatalog::load(catalog_path);
    const forge::Entity* cam = doc.find_entity(camera_id);
    if (cam == nullptr || !cam->has(forge::ComponentKind::camera) || !cam->has(forge::ComponentKind::transform)) {
        throw forge::Error(forge::Errc::not_found, fmt::format("no camera '{}' in {}", camera_id, scene_id));
    }
    const auto mode = forge::parse_render_mode(mode_name);
    if (!mode) throw forge::Error(forge::Errc::invalid_argument, "mode must be raycast or pathtrace");
    forge::RenderConfig rc;
    rc.mode = *mode;
    rc.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto rs = forge::build_render_scene(doc, catalog);
    const forge::CameraView view{*cam->get<forge::Camera>(), forge::pose_from_transform(*cam->get<forge::Transform>())};
    const auto frames = forge::render(*rs, view, rc);
    fs::create_directories(out_dir);
    forge::write_png(fs::path(out_dir) / "camera_color.png", frames.color);
    forge::write_png(fs::path(out_dir) / "camera_depth.png", frames.depth);
    forge::write_png(fs::path(out_dir) / "camera_normal.png", frames.normal);
    forge::write_png(fs::path(out_dir) / "camera_semantic.png", frames.semantic);
    forge::write_png(fs::path(out_dir) / "camera_instance.png", frames.instance);
    fmt::print("wrote 5 channels to {}{}\n", out_dir, frames.depth_clamped ? " (depth clamped)" : "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: indoor scene data synthesis"};
    app.require_subcommand(1);

    std::string spec_path;
    auto* run = app.add_subcommand("run", "Execute a job spec");
    run->add_option("--spec", spec_path, "Job JSON file")->required()->check(CLI::ExistingFile);

    std::string script_path;
    bool print_canonical = false;
    auto* check = app.add_subcommand("check", "Parse and check a pipeline script");
    check->add_option("script", script_path, "Script file")->required()->check(CLI::ExistingFile);
    check->add_flag("--print", print_canonical, "Print the canonical form when clean");

    auto* catalog = app.add_subcommand("catalog", "Asset catalog tools");
    catalog->require_subcommand(1);
    std::string catalog_out;
    std::uint64_t catalog_seed = 1;
    int per_category = 8;
    int feature_dim = 64;
    auto* catalog_gen = catalog->add_subcommand("gen", "Write a procedural catalog");
    catalog_gen->add_option("--out", catalog_out, "Catalog JSON path")->required();
    catalog_gen->add_option("--seed", catalog_seed, "Generator seed");
    catalog_gen->add_option("--per-category", per_category, "Assets per furniture category")->check(CLI::Range(1, 1000));
    catalog_gen->add_option("--dim", feature_dim, "Feature dimension")->check(CLI::Range(1, 4096));

    auto* store = app.add_subcommand("store", "Scene store tools");
    store->require_subcommand(1);
    std::string store_root;
    store->add_option("--root", store_root, "Store directory")->required();
    std::string store_catalog;
    int gen_count = 10;
    std::uint64_t gen_seed = 1;
    auto* store_gen = store->add_subcommand("gen", "Generate and ingest a synthetic corpus");
    store_gen->add_option("--catalog", store_catalog, "Catalog JSON")->required()->check(CLI::ExistingFile);
    store_gen->add_option("--count", gen_count, "Number of scenes")->check(CLI::Range(1, 1000000));
    store_gen->add_option("--seed", gen_seed, "Corpus seed");
    std::vector<std::string> ingest_files;
    auto* store_ingest = store->add_subcommand("ingest", "Ingest scene documents");
    store_ingest->add_option("files", ingest_files, "Scene JSON files")->required()->check(CLI::ExistingFile);
    std::string query_json;
    auto* store_query = store->add_subcommand("query", "List scene ids matching a query");
    store_query->add_option("--json", query_json, "Query object, e.g. '{\"min_rooms\": 2}'");

    std::string r_root, r_catalog, r_scene, r_camera, r_out = "render_out", r_mode = "raycast";
    auto* render_one = app.add_subcommand("render-one", "Render one camera of one stored scene");
    render_one->add_option("--store", r_root, "Store directory")->required();
    render_one->add_option("--catalog", r_catalog, "Catalog JSON")->required()->check(CLI::ExistingFile);
    render_one->add_option("--scene", r_scene, "Scene id")->required();
    render_one->add_option("--camera", r_camera, "Camera entity id")->required();
    render_one->add_option("--out", r_out, "Output directory");
    render_one->add_option("--mode", r_mode, "raycast or pathtrace");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(spec_path);
        if (check->parsed()) return cmd_check(script_path, print_canonical);
        if (catalog_gen->parsed()) return cmd_catalog_gen(catalog_out, catalog_seed, per_category, feature_dim);
        if (store_gen->parsed()) return cmd_store_gen(store_root, store_catalog, gen_count, gen_seed);
        if (store_ingest->parsed()) return cmd_store_ingest(store_root, ingest_files);
        if (store_query->parsed()) return cmd_store_query(store_root, query_json);
        if (render_one->parsed()) return cmd_render_one(r_root, r_catalog, r_scene, r_camera, r_out, r_mode);
    } catch (const std::exception& e) {
        fmt::print(stderr, "forge: {}\n", e.what());
        return 2;
    }
    return 0;
}
