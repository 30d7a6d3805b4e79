// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/job.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <fmt/format.h>

#include "forge/camera.hpp"
#include "forge/dsl/checker.hpp"
#include "forge/dsl/parser.hpp"
#include "forge/error.hpp"
#include "forge/image.hpp"

namespace forge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, fmt::format("cannot read {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::uint64_t parse_seed(const json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(s, &used, 0);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
    }
    throw Error(Errc::invalid_argument, "master_seed must be a non-negative integer or an integer string");
}

// Copies known keys out of a config object, rejecting unknown ones.
class ConfigReader {
  public:
    ConfigReader(const json& j, std::string section) : j_(j), section_(std::move(section)) {
        if (!j.is_object()) throw Error(Errc::invalid_argument, fmt::format("'{}' must be an object", section_));
    }
    ConfigReader& num(const char* key, double& out) {
        seen_.insert(key);
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number()) throw Error(Errc::invalid_argument, fmt::format("{}.{} must be a number", section_, key));
            out = it->get<double>();
        }
        return *this;
    }
    ConfigReader& integer(const char* key, int& out) {
        seen_.insert(key);
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number_integer()) {
                throw Error(Errc::invalid_argument, fmt::format("{}.{} must be an integer", section_, key));
            }
            out = it->get<int>();
        }
        return *this;
    }
    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) throw Error(Errc::invalid_argument, fmt::format("unknown key '{}.{}'", section_, k));
        }
    }

  private:
    const json& j_;
    std::string section_;
    std::set<std::string> seen_;
};

json diagnostic_json(const dsl::Diagnostic& d) {
    return {{"line", d.pos.line}, {"col", d.pos.col}, {"message", d.message}};
}

std::string status_name(dsl::StageStatus s) {
    switch (s) {
        case dsl::StageStatus::completed: return "completed";
        case dsl::StageStatus::filtered: return "filtered";
        case dsl::StageStatus::failed: return "error";
    }
    return "error";
}

json trajectories_json(const std::vector<TrajectoryResult>& trajs) {
    json arr = json::array();
    for (const auto& t : trajs) {
        json frames = json::array();
        for (const auto& k : t.keyframes) {
            frames.push_back({{"t", k.t},
                              {"position", {k.position.x, k.position.y, k.position.z}},
                              {"look_at", {k.look_at.x, k.look_at.y, k.look_at.z}}});
        }
        arr.push_back({{"id", t.trajectory_id},
                       {"camera_id", t.camera_id},
                       {"fps", t.fps},
                       {"duration", t.duration},
                       {"keyframes", std::move(frames)}});
    }
    return json{{"trajectories", std::move(arr)}};
}

struct View {
    std::string name;
    std::string camera_id;
    std::string trajectory_id;
    int frame = -1;
    CameraView camera;
};

}  // namespace

std::string_view to_string(SeedStage s) {
    switch (s) {
        case SeedStage::scene: return "scene";
        case SeedStage::entity: return "entity";
        case SeedStage::render: return "render";
        case SeedStage::pixel: return "pixel";
    }
    return "scene";
}

std::uint64_t seed_for(std::uint64_t master_seed, std::string_view scene_id, SeedStage stage, std::uint64_t slot) {
    return SeedHasher(0x5EEDF00Dull).add(master_seed).add(scene_id).add(to_string(stage)).add(slot).finish();
}

RngStream stream_for(std::uint64_t master_seed, std::string_view scene_id, SeedStage stage, std::uint64_t slot) {
    return RngStream(seed_for(master_seed, scene_id, stage, slot));
}

std::string hex_seed(std::uint64_t seed) { return fmt::format("0x{:016x}", seed); }

SceneQuery query_from_json(const json& j) {
    if (!j.is_object()) throw Error(Errc::invalid_argument, "query must be an object");
    SceneQuery q;
    for (const auto& [k, v] : j.items()) {
        if (k == "min_rooms" || k == "max_rooms" || k == "limit") {
            if (!v.is_number_integer()) throw Error(Errc::invalid_argument, fmt::format("query.{} must be an integer", k));
            (k == "min_rooms" ? q.min_rooms : k == "max_rooms" ? q.max_rooms : q.limit) = v.get<int>();
        } else if (k == "min_area_m2") {
            if (!v.is_number()) throw Error(Errc::invalid_argument, "query.min_area_m2 must be a number");
            q.min_area_m2 = v.get<double>();
        } else if (k == "room_types") {
            if (!v.is_array()) throw Error(Errc::invalid_argument, "query.room_types must be an array");
            std::set<RoomType> types;
            for (const auto& t : v) {
                const auto parsed = t.is_string() ? parse_room_type(t.get<std::string>()) : std::nullopt;
                if (!parsed) throw Error(Errc::invalid_argument, fmt::format("unknown room type {}", t.dump()));
                types.insert(*parsed);
            }
            q.required_room_types = std::move(types);
        } else {
            throw Error(Errc::invalid_argument, fmt::format("unknown query key '{}'", k));
        }
    }
    q.validate();
    return q;
}

JobSpec JobSpec::from_json(const json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw Error(Errc::invalid_argument, "job spec must be a JSON object");
    JobSpec s;
    auto path_of = [&](const char* key) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string()) {
            throw Error(Errc::invalid_argument, fmt::format("job spec needs string '{}'", key));
        }
        return resolve(base_dir, it->get<std::string>());
    };
    s.store_root = path_of("store_root");
    s.catalog_path = path_of("catalog_path");
    s.script_path = path_of("script_path");
    s.output_root = path_of("output_root");
    static const std::set<std::string> known{"store_root", "catalog_path", "script_path", "output_root", "query",
                                             "render",     "master_seed",  "workers",     "config"};
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw Error(Errc::invalid_argument, fmt::format("unknown job key '{}'", k));
    }
    if (auto it = j.find("query"); it != j.end()) s.query = query_from_json(*it);
    if (auto it = j.find("master_seed"); it != j.end()) s.master_seed = parse_seed(*it);
    if (auto it = j.find("workers"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() < 1) throw Error(Errc::invalid_argument, "workers must be >= 1");
        s.workers = it->get<int>();
    }
    if (auto it = j.find("render"); it != j.end()) {
        if (!it->is_object()) throw Error(Errc::invalid_argument, "render must be an object");
        for (const auto& [k, v] : it->items()) {
            if (k == "mode") {
                const auto mode = v.is_string() ? parse_render_mode(v.get<std::string>()) : std::nullopt;
                if (!mode) throw Error(Errc::invalid_argument, "render.mode must be \"raycast\" or \"pathtrace\"");
                s.render.mode = *mode;
            } else if (k == "samples" || k == "bounces") {
                if (!v.is_number_integer() || v.get<int>() < (k == "samples" ? 1 : 0) || v.get<int>() > 4096) {
                    throw Error(Errc::invalid_argument, fmt::format("render.{} out of range", k));
                }
                (k == "samples" ? s.render.samples : s.render.bounces) = v.get<int>();
            } else if (k == "resolution") {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer() ||
                    v[0].get<int>() < 1 || v[1].get<int>() < 1 || v[0].get<int>() > 16384 || v[1].get<int>() > 16384) {
                    throw Error(Errc::invalid_argument, "render.resolution must be [width, height] in 1..16384");
                }
                s.render.resolution = std::make_pair(v[0].get<int>(), v[1].get<int>());
            } else {
                throw Error(Errc::invalid_argument, fmt::format("unknown key 'render.{}'", k));
            }
        }
    }
    if (auto it = j.find("config"); it != j.end()) {
        if (!it->is_object()) throw Error(Errc::invalid_argument, "config must be an object");
        for (const auto& [k, v] : it->items()) {
            if (k == "layout") {
                int iterations = -1;
                ConfigReader(v, "layout")
                    .num("margin", s.layout.margin)
                    .num("grid", s.layout.grid)
                    .num("move_sigma", s.layout.move_sigma)
                    .num("yaw_range", s.layout.yaw_range)
                    .num("snap_probability", s.layout.snap_probability)
                    .num("t0", s.layout.t0)
                    .num("alpha", s.layout.alpha)
                    .integer("iters_per_furniture", s.layout.iters_per_furniture)
                    .integer("iterations", iterations)
                    .num("w_clearance", s.layout.weights.clearance)
                    .num("w_circulation", s.layout.weights.circulation)
                    .num("w_group", s.layout.weights.group)
                    .num("w_alignment", s.layout.weights.alignment)
                    .num("w_distribution", s.layout.weights.distribution)
                    .num("w_rhythm", s.layout.weights.rhythm)
                    .finish();
                if (v.contains("iterations")) {
                    if (iterations < 0) throw Error(Errc::invalid_argument, "layout.iterations must be >= 0");
                    s.layout_iterations = iterations;
                }
                if (!(s.layout.grid > 0.0) || !(s.layout.alpha > 0.0 && s.layout.alpha <= 1.0)) {
                    throw Error(Errc::invalid_argument, "layout.grid must be > 0 and layout.alpha in (0, 1]");
                }
            } else if (k == "trajectory") {
                ConfigReader(v, "trajectory")
                    .num("drag", s.trajectory.drag)
                    .num("stiffness", s.trajectory.stiffness)
                    .integer("substeps", s.trajectory.substeps)
                    .integer("max_start_samples", s.trajectory.max_start_samples)
                    .finish();
                if (s.trajectory.substeps < 1 || s.trajectory.max_start_samples < 1) {
                    throw Error(Errc::invalid_argument, "trajectory.substeps and max_start_samples must be >= 1");
                }
            } else if (k == "noise") {
                ConfigReader(v, "noise")
                    .num("gaussian_sigma", s.noise.gaussian_sigma)
                    .num("poisson_scale", s.noise.poisson_scale)
                    .num("salt_pepper_p", s.noise.salt_pepper_p)
                    .num("kinect_sigma_disparity", s.noise.kinect_sigma_disparity)
                    .num("kinect_sigma_shift", s.noise.kinect_sigma_shift)
                    .finish();
                s.noise.validate();
            } else if (k == "replace_k") {
                if (!v.is_number_integer() || v.get<int>() < 1) throw Error(Errc::invalid_argument, "replace_k must be >= 1");
                s.replace_k = v.get<int>();
            } else {
                throw Error(Errc::invalid_argument, fmt::format("unknown key 'config.{}'", k));
            }
        }
    }
    return s;
}

JobSpec JobSpec::load(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw Error(Errc::invalid_argument, fmt::format("{}: {}", path.string(), e.what()));
    }
    JobSpec s = from_json(j, fs::absolute(path).parent_path());
    if (const char* env = std::getenv("FORGE_WORKERS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long w = std::strtol(env, &end, 10);
        if (*end != '\0' || w < 1 || w > 1024) throw Error(Errc::invalid_argument, "FORGE_WORKERS must be an integer >= 1");
        s.workers = static_cast<int>(w);
    }
    return s;
}

json JobSpec::config_echo() const {
    json q = json::object();
    if (query.min_rooms) q["min_rooms"] = *query.min_rooms;
    if (query.max_rooms) q["max_rooms"] = *query.max_rooms;
    if (query.min_area_m2) q["min_area_m2"] = *query.min_area_m2;
    if (query.limit) q["limit"] = *query.limit;
    if (query.required_room_types) {
        json types = json::array();
        for (auto t : *query.required_room_types) types.push_back(std::string(to_string(t)));
        q["room_types"] = std::move(types);
    }
    json render_j{{"mode", std::string(to_string(render.mode))},
                  {"samples", render.samples},
                  {"bounces", render.bounces}};
    if (render.resolution) render_j["resolution"] = {render.resolution->first, render.resolution->second};
    json layout_j{{"margin", layout.margin},
                  {"grid", layout.grid},
                  {"move_sigma", layout.move_sigma},
                  {"yaw_range", layout.yaw_range},
                  {"snap_probability", layout.snap_probability},
                  {"t0", layout.t0},
                  {"alpha", layout.alpha},
                  {"iters_per_furniture", layout.iters_per_furniture},
                  {"weights",
                   {layout.weights.clearance, layout.weights.circulation, layout.weights.group,
                    layout.weights.alignment, layout.weights.distribution, layout.weights.rhythm}}};
    if (layout_iterations) layout_j["iterations"] = *layout_iterations;
    return json{{"query", std::move(q)},
                {"render", std::move(render_j)},
                {"layout", std::move(layout_j)},
                {"trajectory",
                 {{"drag", trajectory.drag},
                  {"stiffness", trajectory.stiffness},
                  {"substeps", trajectory.substeps},
                  {"max_start_samples", trajectory.max_start_samples}}},
                {"noise",
                 {{"gaussian_sigma", noise.gaussian_sigma},
                  {"poisson_scale", noise.poisson_scale},
                  {"salt_pepper_p", noise.salt_pepper_p},
                  {"kinect_sigma_disparity", noise.kinect_sigma_disparity},
                  {"kinect_sigma_shift", noise.kinect_sigma_shift}}},
                {"replace_k", replace_k}};
}

dsl::Script load_script(const fs::path& path) {
    const std::string source = read_text(path);
    auto parsed = dsl::parse(source);
    auto diags = std::move(parsed.diagnostics);
    if (diags.empty()) diags = dsl::check(parsed.script);
    if (!diags.empty()) {
        std::string msg = fmt::format("{} has {} diagnostic(s)", path.string(), diags.size());
        for (const auto& d : diags) msg += fmt::format("\n{}:{}", path.string(), d.format());
        throw Error(Errc::validation, msg);
    }
    return std::move(parsed.script);
}

SceneResult run_scene(const JobSpec& spec, const SceneDocument& input, const AssetCatalog& catalog,
                      const dsl::Script& script) {
    SceneResult res;
    res.scene_id = input.scene_id;
    const std::string& id = input.scene_id;
    const std::uint64_t scene_seed = seed_for(spec.master_seed, id, SeedStage::scene, 0);
    const std::uint64_t entity_seed = seed_for(spec.master_seed, id, SeedStage::entity, 0);
    const std::uint64_t pixel_seed = seed_for(spec.master_seed, id, SeedStage::pixel, 0);
    res.seeds = {{"scene", hex_seed(scene_seed)}, {"entity", hex_seed(entity_seed)}, {"pixel", hex_seed(pixel_seed)}};

    const fs::path scene_dir = spec.output_root / id;
    std::string stage_name = "scene";
    auto fail = [&](std::string stage, dsl::Diagnostic d) {
        res.status = dsl::StageStatus::failed;
        res.error_stage = std::move(stage);
        res.diagnostic = std::move(d);
        res.views = json::array();
        res.files.clear();
        std::error_code ec;
        fs::remove_all(scene_dir, ec);
        return res;
    };
    auto stage_ctx = [&](SceneDocument* doc, RngStream* rng) {
        dsl::StageContext ctx;
        ctx.scene = doc;
        ctx.catalog = &catalog;
        ctx.rng = rng;
        ctx.layout = spec.layout;
        ctx.layout_iterations = spec.layout_iterations;
        ctx.trajectory = spec.trajectory;
        ctx.noise = spec.noise;
        ctx.replace_k = spec.replace_k;
        return ctx;
    };
    auto finish = [&](const dsl::StageOutcome& outcome, const char* stage) -> bool {
        if (outcome.status == dsl::StageStatus::completed) return true;
        if (outcome.status == dsl::StageStatus::filtered) {
            res.status = dsl::StageStatus::filtered;
            std::error_code ec;
            fs::remove_all(scene_dir, ec);
        } else {
            fail(stage, *outcome.diagnostic);
        }
        return false;
    };

    try {
        SceneDocument doc = input;
        if (spec.render.resolution) {
            for (auto& e : doc.entities) {
                if (auto* cam = e.get<Camera>()) {
                    cam->image_width = spec.render.resolution->first;
                    cam->image_height = spec.render.resolution->second;
                }
            }
        }

        auto t0 = Clock::now();
        RngStream scene_rng(scene_seed);
        auto ctx = stage_ctx(&doc, &scene_rng);
        if (!finish(dsl::execute_stage(script, dsl::StageKind::scene, ctx), "scene")) return res;
        res.timing["scene"] = seconds_since(t0);

        t0 = Clock::now();
        stage_name = "entity";
        RngStream entity_rng(entity_seed);
        PickSink picks;
        std::vector<TrajectoryResult> trajectories;
        ctx = stage_ctx(&doc, &entity_rng);
        ctx.picks = &picks;
        ctx.trajectories = &trajectories;
        if (!finish(dsl::execute_stage(script, dsl::StageKind::entity, ctx), "entity")) return res;
        if (const auto violations = validate_scene(doc); !violations.empty()) {
            return fail("entity", {{0, 0},
                                   fmt::format("scene is invalid after the entity stage: {} ({})",
                                               violations.front().message, violations.front().subject),
                                   {},
                                   {}});
        }
        res.timing["entity"] = seconds_since(t0);

        t0 = Clock::now();
        stage_name = "render";
        std::vector<View> views;
        std::vector<const Entity*> cameras;
        for (const auto& e : doc.entities) {
            if (e.has(ComponentKind::camera) && e.has(ComponentKind::transform)) cameras.push_back(&e);
        }
        std::sort(cameras.begin(), cameras.end(),
                  [](const Entity* a, const Entity* b) { return a->entity_id < b->entity_id; });
        for (const Entity* cam : cameras) {
            views.push_back({cam->entity_id, cam->entity_id, "", -1,
                             {*cam->get<Camera>(), pose_from_transform(*cam->get<Transform>())}});
        }
        std::sort(trajectories.begin(), trajectories.end(),
                  [](const auto& a, const auto& b) { return a.trajectory_id < b.trajectory_id; });
        for (const auto& traj : trajectories) {
            const Entity* cam = doc.find_entity(traj.camera_id);
            for (std::size_t f = 0; f < traj.keyframes.size(); ++f) {
                const Keyframe& k = traj.keyframes[f];
                views.push_back({fmt::format("{}/{:04}", traj.trajectory_id, f), traj.camera_id, traj.trajectory_id,
                                 static_cast<int>(f), {*cam->get<Camera>(), pose_look_at(k.position, k.look_at)}});
            }
        }
        dsl::ViewImages images;
        std::map<std::string, bool> clamped;
        if (!views.empty()) {
            const auto render_scene = build_render_scene(doc, catalog);
            json render_seeds = json::array();
            for (std::size_t v = 0; v < views.size(); ++v) {
                RenderConfig rc;
                rc.mode = spec.render.mode;
                rc.samples = spec.render.samples;
                rc.bounces = spec.render.bounces;
                rc.threads = 1;
                rc.seed = seed_for(spec.master_seed, id, SeedStage::render, v);
                render_seeds.push_back(hex_seed(rc.seed));
                FrameSet frames = render(*render_scene, views[v].camera, rc);
                auto& files = images[views[v].name];
                files.emplace("camera_color.png", std::move(frames.color));
                files.emplace("camera_depth.png", std::move(frames.depth));
                files.emplace("camera_normal.png", std::move(frames.normal));
                files.emplace("camera_semantic.png", std::move(frames.semantic));
                files.emplace("camera_instance.png", std::move(frames.instance));
                clamped[views[v].name] = frames.depth_clamped;
                res.depth_clamped = res.depth_clamped || frames.depth_clamped;
                ++res.renders;
            }
            res.seeds["render"] = std::move(render_seeds);
        }
        res.timing["render"] = seconds_since(t0);

        t0 = Clock::now();
        stage_name = "pixel";
        RngStream pixel_rng(pixel_seed);
        ctx = stage_ctx(nullptr, &pixel_rng);
        ctx.images = &images;
        if (!finish(dsl::execute_stage(script, dsl::StageKind::pixel, ctx), "pixel")) return res;
        res.timing["pixel"] = seconds_since(t0);

        t0 = Clock::now();
        stage_name = "write";
        const fs::path tmp_dir = spec.output_root / fmt::format(".tmp.{}.{}", id, static_cast<long>(::getpid()));
        std::error_code ec;
        fs::remove_all(tmp_dir, ec);
        fs::create_directories(tmp_dir);
        for (const auto& view : views) {
            const fs::path dir = tmp_dir / view.name;
            fs::create_directories(dir);
            json entry{{"view", view.name}, {"camera_id", view.camera_id}};
            if (!view.trajectory_id.empty()) {
                entry["trajectory_id"] = view.trajectory_id;
                entry["frame"] = view.frame;
            }
            json files = json::array();
            for (const auto& [name, img] : images.at(view.name)) {
                write_png(dir / name, img);
                files.push_back(name);
            }
            entry["files"] = std::move(files);
            entry["depth_clamped"] = clamped[view.name];
            res.views.push_back(std::move(entry));
        }
        if (!picks.empty()) {
            write_file_atomic(tmp_dir / "picks.json", picks.serialize());
            res.files.push_back("picks.json");
        }
        if (!trajectories.empty()) {
            write_file_atomic(tmp_dir / "trajectory.json", trajectories_json(trajectories).dump(2) + "\n");
            res.files.push_back("trajectory.json");
        }
        fs::remove_all(scene_dir, ec);
        fs::rename(tmp_dir, scene_dir);
        res.timing["write"] = seconds_since(t0);
    } catch (const std::exception& e) {
        return fail(stage_name, {{0, 0}, e.what(), {}, {}});
    }
    return res;
}

json deterministic_part(const json& manifest) {
    json out = manifest;
    out.erase("execution");
    return out;
}

void write_manifest(const json& manifest, const fs::path& output_root) {
    fs::create_directories(output_root);
    write_file_atomic(output_root / "manifest.json", manifest.dump(2) + "\n");
}

JobReport run_job(const JobSpec& spec) {
    const auto start = Clock::now();
    if (spec.workers < 1) throw Error(Errc::invalid_argument, "workers must be >= 1");
    for (const auto& [what, path] : {std::pair{"store", spec.store_root}, std::pair{"catalog", spec.catalog_path},
                                     std::pair{"script", spec.script_path}}) {
        if (!fs::exists(path)) throw Error(Errc::not_found, fmt::format("{} path {} does not exist", what, path.string()));
    }
    const AssetCatalog catalog = AssetCatalog::load(spec.catalog_path);
    const dsl::Script script = load_script(spec.script_path);
    const SceneStore store(spec.store_root);
    std::vector<std::string> ids = store.query(spec.query);
    std::sort(ids.begin(), ids.end());
    fs::create_directories(spec.output_root);

    JobReport report;
    report.scenes.resize(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ids.size(); i = next++) {
            const auto t0 = Clock::now();
            try {
                const SceneDocument doc = store.load(ids[i]);
                report.scenes[i] = run_scene(spec, doc, catalog, script);
            } catch (const std::exception& e) {
                SceneResult r;
                r.scene_id = ids[i];
                r.status = dsl::StageStatus::failed;
                r.error_stage = "load";
                r.diagnostic = dsl::Diagnostic{{0, 0}, e.what(), {}, {}};
                report.scenes[i] = std::move(r);
            }
            report.scenes[i].timing["total"] = seconds_since(t0);
        }
    };
    const int threads = std::max(1, std::min<int>(spec.workers, static_cast<int>(ids.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    json scenes = json::array();
    json timing = json::object();
    int completed = 0, filtered = 0, failed = 0, renders = 0;
    for (const auto& r : report.scenes) {
        json entry{{"scene_id", r.scene_id}, {"status", status_name(r.status)}, {"seeds", r.seeds}};
        switch (r.status) {
            case dsl::StageStatus::completed:
                ++completed;
                entry["code"] = 0;
                entry["views"] = r.views;
                entry["files"] = r.files;
                entry["depth_clamped"] = r.depth_clamped;
                break;
            case dsl::StageStatus::filtered:
                ++filtered;
                entry["code"] = dsl::kFilteredCode;
                break;
            case dsl::StageStatus::failed:
                ++failed;
                entry["code"] = 1;
                entry["error"] = {{"stage", r.error_stage}, {"diagnostic", diagnostic_json(*r.diagnostic)}};
                break;
        }
        renders += r.renders;
        scenes.push_back(std::move(entry));
        timing[r.scene_id] = r.timing;
    }
    report.wall_seconds = seconds_since(start);
    report.manifest = json{
        {"version", 1},
        {"rng_algorithm", kRngAlgorithm},
        {"master_seed", hex_seed(spec.master_seed)},
        {"config", spec.config_echo()},
        {"scenes", std::move(scenes)},
        {"totals",
         {{"scenes", report.scenes.size()},
          {"completed", completed},
          {"filtered", filtered},
          {"errors", failed},
          {"renders", renders}}},
        {"execution", {{"workers", spec.workers}, {"wall_seconds", report.wall_seconds}, {"timing", std::move(timing)}}},
    };
    write_manifest(report.manifest, spec.output_root);
    return report;
}

}  // namespace forge
