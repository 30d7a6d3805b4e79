// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "forge/error.hpp"

namespace forge {

using nlohmann::json;

void append_box(std::vector<Triangle>& out, const Aabb3& b) {
    const Vec3 p[8] = {
        {b.min.x, b.min.y, b.min.z}, {b.max.x, b.min.y, b.min.z}, {b.max.x, b.max.y, b.min.z},
        {b.min.x, b.max.y, b.min.z}, {b.min.x, b.min.y, b.max.z}, {b.max.x, b.min.y, b.max.z},
        {b.max.x, b.max.y, b.max.z}, {b.min.x, b.max.y, b.max.z},
    };
    static constexpr int faces[6][4] = {
        {0, 3, 2, 1},  // -z
        {4, 5, 6, 7},  // +z
        {0, 4, 7, 3},  // -x
        {1, 2, 6, 5},  // +x
        {0, 1, 5, 4},  // -y
        {3, 7, 6, 2},  // +y
    };
    for (const auto& f : faces) {
        out.push_back({p[f[0]], p[f[1]], p[f[2]]});
        out.push_back({p[f[0]], p[f[2]], p[f[3]]});
    }
}

void AssetRecord::rebuild_geometry() {
    geometry.clear();
    aabb = Aabb3{};
    for (const auto& part : parts) {
        append_box(geometry, part);
        aabb.expand(part);
    }
}

AssetCatalog::AssetCatalog(std::vector<AssetRecord> assets, std::vector<MaterialSeries> series,
                           LabelTaxonomy taxonomy, int feature_dim)
    : assets_(std::move(assets)),
      series_(std::move(series)),
      taxonomy_(std::move(taxonomy)),
      feature_dim_(feature_dim) {
    std::sort(assets_.begin(), assets_.end(),
              [](const AssetRecord& a, const AssetRecord& b) { return a.asset_id < b.asset_id; });
    for (std::size_t i = 0; i < assets_.size(); ++i) {
        if (!asset_index_.emplace(assets_[i].asset_id, i).second) {
            throw Error(Errc::validation, fmt::format("duplicate asset id {}", assets_[i].asset_id));
        }
    }
    for (std::size_t s = 0; s < series_.size(); ++s) {
        for (std::size_t m = 0; m < series_[s].materials.size(); ++m) {
            const auto& id = series_[s].materials[m].material_id;
            if (!material_index_.emplace(id, std::make_pair(s, m)).second) {
                throw Error(Errc::validation, fmt::format("duplicate material id {}", id));
            }
            materials_by_category_[series_[s].category_id].emplace_back(s, m);
        }
    }
    for (const auto& [id, name] : taxonomy_.categories) {
        category_by_name_.emplace(name, id);
    }
}

const AssetRecord* AssetCatalog::find_asset(const std::string& asset_id) const {
    auto it = asset_index_.find(asset_id);
    return it == asset_index_.end() ? nullptr : &assets_[it->second];
}

const AssetRecord& AssetCatalog::asset(const std::string& asset_id) const {
    if (const auto* a = find_asset(asset_id)) return *a;
    throw Error(Errc::not_found, fmt::format("unknown asset '{}'", asset_id));
}

const Material* AssetCatalog::find_material(const std::string& material_id) const {
    auto it = material_index_.find(material_id);
    if (it == material_index_.end()) return nullptr;
    return &series_[it->second.first].materials[it->second.second];
}

std::string AssetCatalog::series_of(const std::string& material_id) const {
    auto it = material_index_.find(material_id);
    return it == material_index_.end() ? std::string{} : series_[it->second.first].series_id;
}

std::optional<int> AssetCatalog::category_id(const std::string& name) const {
    auto it = category_by_name_.find(name);
    if (it == category_by_name_.end()) return std::nullopt;
    return it->second;
}

std::string AssetCatalog::category_name(int category_id) const {
    auto it = taxonomy_.categories.find(category_id);
    return it == taxonomy_.categories.end() ? std::string{} : it->second;
}

double AssetCatalog::feature_distance(const std::string& a, const std::string& b) const {
    const auto& fa = asset(a).feature;
    const auto& fb = asset(b).feature;
    double d2 = 0.0;
    for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
        const double d = fa[i] - fb[i];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

std::vector<std::string> AssetCatalog::nearest_models(const std::string& asset_id, int k) const {
    const AssetRecord& query = asset(asset_id);
    if (k < 1 || static_cast<std::size_t>(k) > assets_.size() - 1) {
        throw Error(Errc::invalid_argument,
                    fmt::format("k={} outside [1, {}]", k, assets_.size() - 1));
    }
    // Exact linear scan; assets_ is sorted by id so a stable partial order on
    // distance alone already breaks ties by ascending id.
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(assets_.size() - 1);
    for (std::size_t i = 0; i < assets_.size(); ++i) {
        if (assets_[i].asset_id == query.asset_id) continue;
        double d2 = 0.0;
        const auto& f = assets_[i].feature;
        for (std::size_t j = 0; j < f.size() && j < query.feature.size(); ++j) {
            const double d = f[j] - query.feature[j];
            d2 += d * d;
        }
        scored.emplace_back(d2, i);
    }
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end());
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out.push_back(assets_[scored[static_cast<std::size_t>(i)].second].asset_id);
    return out;
}

bool AssetCatalog::has_series(int category_id) const {
    return materials_by_category_.contains(category_id);
}

std::string AssetCatalog::sample_material(int category_id, RngStream& rng) const {
    auto it = materials_by_category_.find(category_id);
    if (it == materials_by_category_.end() || it->second.empty()) {
        throw Error(Errc::not_found,
                    fmt::format("no material series for category {}", category_id));
    }
    const auto [s, m] = it->second[rng.below(it->second.size())];
    return series_[s].materials[m].material_id;
}

int AssetCatalog::map_label(const std::string& mapping_name, int category_id) const {
    auto it = taxonomy_.mappings.find(mapping_name);
    if (it == taxonomy_.mappings.end()) {
        throw Error(Errc::not_found, fmt::format("unknown label mapping '{}'", mapping_name));
    }
    const LabelMapping& m = it->second;
    if (m.identity) return category_id;
    auto row = m.table.find(category_id);
    return row == m.table.end() ? m.other_id : row->second.first;
}

std::vector<std::string> AssetCatalog::validate() const {
    std::vector<std::string> problems;
    for (const auto& a : assets_) {
        if (a.aabb.min.x > a.aabb.max.x || a.aabb.min.y > a.aabb.max.y || a.aabb.min.z > a.aabb.max.z) {
            problems.push_back(fmt::format("{}: aabb min > max", a.asset_id));
        }
        double n2 = 0.0;
        for (double v : a.feature) n2 += v * v;
        if (std::fabs(std::sqrt(n2) - 1.0) > 1e-6) {
            problems.push_back(fmt::format("{}: feature not unit norm", a.asset_id));
        }
        if (static_cast<int>(a.feature.size()) != feature_dim_) {
            problems.push_back(fmt::format("{}: feature dimension {}", a.asset_id, a.feature.size()));
        }
        if (a.geometry.empty()) {
            problems.push_back(fmt::format("{}: empty geometry", a.asset_id));
        }
        for (const auto& t : a.geometry) {
            for (const Vec3 p : {t.a, t.b, t.c}) {
                if (!a.aabb.contains(p, 1.0)) {
                    problems.push_back(fmt::format("{}: geometry outside aabb", a.asset_id));
                    break;
                }
            }
        }
        if (!taxonomy_.categories.contains(a.category_id)) {
            problems.push_back(fmt::format("{}: unknown category {}", a.asset_id, a.category_id));
        }
    }
    for (const auto& s : series_) {
        if (s.materials.empty()) problems.push_back(fmt::format("{}: empty series", s.series_id));
        for (const auto& m : s.materials) {
            for (double c : m.base_color) {
                if (c < 0.0 || c > 1.0) problems.push_back(fmt::format("{}: color out of range", m.material_id));
            }
            if (m.roughness < 0.0 || m.roughness > 1.0 || m.metallic < 0.0 || m.metallic > 1.0) {
                problems.push_back(fmt::format("{}: pbr parameter out of range", m.material_id));
            }
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json box_json(const Aabb3& b) {
    return json::array({b.min.x, b.min.y, b.min.z, b.max.x, b.max.y, b.max.z});
}

Aabb3 box_from(const json& j) {
    if (!j.is_array() || j.size() != 6) throw Error(Errc::validation, "box must have 6 numbers");
    return Aabb3{{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()},
                 {j[3].get<double>(), j[4].get<double>(), j[5].get<double>()}};
}

std::map<int, std::pair<int, std::string>> read_mapping_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, fmt::format("cannot open mapping table {}", path.string()));
    std::map<int, std::pair<int, std::string>> table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (line_no == 1 && line.rfind("category_id", 0) == 0)) continue;
        std::istringstream row(line);
        std::string a, b, name;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) {
            throw Error(Errc::validation, fmt::format("{}:{}: malformed row", path.string(), line_no));
        }
        std::getline(row, name);
        try {
            table[std::stoi(a)] = {std::stoi(b), name};
        } catch (const std::exception&) {
            throw Error(Errc::validation, fmt::format("{}:{}: malformed row", path.string(), line_no));
        }
    }
    return table;
}

}  // namespace

AssetCatalog AssetCatalog::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, fmt::format("cannot open catalog {}", path.string()));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw Error(Errc::validation, fmt::format("catalog JSON: {}", ex.what()));
    }
    try {
        const int dim = j.value("feature_dim", 64);
        LabelTaxonomy tax;
        for (const auto& c : j.at("categories")) {
            tax.categories[c.at("id").get<int>()] = c.at("name").get<std::string>();
        }
        for (const auto& m : j.at("mappings")) {
            LabelMapping lm;
            lm.name = m.at("name").get<std::string>();
            lm.identity = m.value("identity", false);
            if (!lm.identity) {
                lm.other_id = m.at("other_id").get<int>();
                lm.other_name = m.value("other_name", std::string("other"));
                lm.table = read_mapping_csv(path.parent_path() / m.at("file").get<std::string>());
            }
            tax.mappings.emplace(lm.name, std::move(lm));
        }
        std::vector<AssetRecord> assets;
        for (const auto& a : j.at("assets")) {
            AssetRecord r;
            r.asset_id = a.at("asset_id").get<std::string>();
            r.category_id = a.at("category_id").get<int>();
            r.feature = a.at("feature").get<std::vector<double>>();
            for (const auto& p : a.at("parts")) r.parts.push_back(box_from(p));
            r.rebuild_geometry();
            if (a.contains("aabb")) r.aabb = box_from(a["aabb"]);
            assets.push_back(std::move(r));
        }
        std::vector<MaterialSeries> series;
        for (const auto& s : j.at("material_series")) {
            MaterialSeries ms;
            ms.series_id = s.at("series_id").get<std::string>();
            ms.category_id = s.at("category_id").get<int>();
            for (const auto& m : s.at("materials")) {
                Material mat;
                mat.material_id = m.at("material_id").get<std::string>();
                const auto c = m.at("base_color").get<std::vector<double>>();
                if (c.size() != 3) throw Error(Errc::validation, "base_color must have 3 channels");
                mat.base_color = {c[0], c[1], c[2]};
                mat.roughness = m.value("roughness", 0.5);
                mat.metallic = m.value("metallic", 0.0);
                ms.materials.push_back(std::move(mat));
            }
            series.push_back(std::move(ms));
        }
        return AssetCatalog(std::move(assets), std::move(series), std::move(tax), dim);
    } catch (const json::exception& ex) {
        throw Error(Errc::validation, fmt::format("catalog JSON: {}", ex.what()));
    }
}

void AssetCatalog::save(const std::filesystem::path& path) const {
    json j;
    j["version"] = 1;
    j["feature_dim"] = feature_dim_;
    json cats = json::array();
    for (const auto& [id, name] : taxonomy_.categories) cats.push_back({{"id", id}, {"name", name}});
    j["categories"] = std::move(cats);
    json maps = json::array();
    for (const auto& [name, m] : taxonomy_.mappings) {
        if (m.identity) {
            maps.push_back({{"name", name}, {"identity", true}});
            continue;
        }
        const std::string file = "mappings/" + name + ".csv";
        maps.push_back({{"name", name}, {"file", file}, {"other_id", m.other_id},
                        {"other_name", m.other_name}});
        std::filesystem::create_directories(path.parent_path() / "mappings");
        std::ofstream csv(path.parent_path() / file, std::ios::binary);
        csv << "category_id,target_id,target_name\n";
        for (const auto& [cat, target] : m.table) {
            csv << cat << ',' << target.first << ',' << target.second << '\n';
        }
        if (!csv) throw Error(Errc::io, fmt::format("cannot write {}", file));
    }
    j["mappings"] = std::move(maps);
    json assets = json::array();
    for (const auto& a : assets_) {
        json parts = json::array();
        for (const auto& p : a.parts) parts.push_back(box_json(p));
        assets.push_back({{"asset_id", a.asset_id},
                          {"category_id", a.category_id},
                          {"aabb", box_json(a.aabb)},
                          {"parts", std::move(parts)},
                          {"feature", a.feature}});
    }
    j["assets"] = std::move(assets);
    json series = json::array();
    for (const auto& s : series_) {
        json mats = json::array();
        for (const auto& m : s.materials) {
            mats.push_back({{"material_id", m.material_id},
                            {"base_color", {m.base_color[0], m.base_color[1], m.base_color[2]}},
                            {"roughness", m.roughness},
                            {"metallic", m.metallic}});
        }
        series.push_back({{"series_id", s.series_id}, {"category_id", s.category_id},
                          {"materials", std::move(mats)}});
    }
    j["material_series"] = std::move(series);
    std::ofstream out(path, std::ios::binary);
    out << j.dump(1) << '\n';
    if (!out) throw Error(Errc::io, fmt::format("cannot write {}", path.string()));
}

// ---------------------------------------------------------------------------
// Procedural catalog

namespace {

const std::vector<std::string>& base_category_names() {
    static const std::vector<std::string> names = {
        "sofa", "armchair", "chair", "office_chair", "bar_stool", "stool", "bench", "ottoman",
        "table", "coffee_table", "dining_table", "side_table", "desk", "bed", "bunk_bed", "crib",
        "nightstand", "dresser", "wardrobe", "cabinet", "kitchen_cabinet", "bookshelf", "shelves",
        "tv_stand", "sideboard", "counter", "refrigerator", "television", "lamp", "floor_lamp",
        "ceiling_lamp", "plant", "vase", "picture", "mirror", "curtain", "blinds", "rug", "pillow",
        "towel", "toilet", "sink", "bathtub", "shower", "washing_machine", "oven", "microwave", "box",
        "basket", "books", "clock", "fan", "radiator", "piano", "whiteboard", "door", "window",
        "shoe_rack", "coat_rack"};
    return names;
}

const std::vector<std::string>& style_suffixes() {
    static const std::vector<std::string> s = {"", "_modern", "_classic", "_kids", "_outdoor"};
    return s;
}

const std::map<std::string, std::pair<int, std::string>>& nyu40_by_base() {
    static const std::map<std::string, std::pair<int, std::string>> m = {
        {"wall", {1, "wall"}}, {"floor", {2, "floor"}}, {"cabinet", {3, "cabinet"}},
        {"kitchen_cabinet", {3, "cabinet"}}, {"wardrobe", {3, "cabinet"}},
        {"sideboard", {3, "cabinet"}}, {"tv_stand", {3, "cabinet"}}, {"bed", {4, "bed"}},
        {"bunk_bed", {4, "bed"}}, {"crib", {4, "bed"}}, {"chair", {5, "chair"}},
        {"office_chair", {5, "chair"}}, {"armchair", {5, "chair"}}, {"bar_stool", {5, "chair"}},
        {"stool", {5, "chair"}}, {"sofa", {6, "sofa"}}, {"table", {7, "table"}},
        {"coffee_table", {7, "table"}}, {"dining_table", {7, "table"}},
        {"side_table", {7, "table"}}, {"door", {8, "door"}}, {"window", {9, "window"}},
        {"bookshelf", {10, "bookshelf"}}, {"picture", {11, "picture"}},
        {"counter", {12, "counter"}}, {"blinds", {13, "blinds"}}, {"desk", {14, "desk"}},
        {"shelves", {15, "shelves"}}, {"shoe_rack", {15, "shelves"}},
        {"curtain", {16, "curtain"}}, {"dresser", {17, "dresser"}}, {"pillow", {18, "pillow"}},
        {"mirror", {19, "mirror"}}, {"rug", {20, "floor mat"}}, {"ceiling", {22, "ceiling"}},
        {"books", {23, "books"}}, {"refrigerator", {24, "refrigerator"}},
        {"television", {25, "television"}}, {"towel", {27, "towel"}},
        {"shower", {28, "shower curtain"}}, {"box", {29, "box"}}, {"basket", {29, "box"}},
        {"whiteboard", {30, "whiteboard"}}, {"nightstand", {32, "night stand"}},
        {"toilet", {33, "toilet"}}, {"sink", {34, "sink"}}, {"lamp", {35, "lamp"}},
        {"floor_lamp", {35, "lamp"}}, {"ceiling_lamp", {35, "lamp"}},
        {"bathtub", {36, "bathtub"}}, {"ottoman", {39, "otherfurniture"}},
        {"bench", {39, "otherfurniture"}}, {"piano", {39, "otherfurniture"}},
        {"coat_rack", {39, "otherfurniture"}}};
    return m;
}

Aabb3 box(double x0, double y0, double z0, double x1, double y1, double z1) {
    return Aabb3{{x0, y0, z0}, {x1, y1, z1}};
}

// Box assemblies centred on the origin in (x, z), resting on y = 0. Local +z
// is the front of the piece.
std::vector<Aabb3> make_parts(const std::string& category, RngStream& rng) {
    auto U = [&](double lo, double hi) { return std::round(rng.uniform(lo, hi)); };
    std::vector<Aabb3> parts;
    auto legs = [&](double hw, double hd, double h, double t) {
        parts.push_back(box(-hw, 0, -hd, -hw + t, h, -hd + t));
        parts.push_back(box(hw - t, 0, -hd, hw, h, -hd + t));
        parts.push_back(box(-hw, 0, hd - t, -hw + t, h, hd));
        parts.push_back(box(hw - t, 0, hd - t, hw, h, hd));
    };
    if (category == "sofa" || category == "armchair") {
        const double hw = category == "sofa" ? U(800, 1200) : U(350, 500);
        const double hd = U(400, 500);
        const double seat = U(400, 460);
        const double arm = U(100, 180);
        parts.push_back(box(-hw, 0, -hd, hw, seat, hd));
        parts.push_back(box(-hw, seat, -hd, hw, seat + U(350, 450), -hd + U(150, 250)));
        parts.push_back(box(-hw, seat, -hd, -hw + arm, seat + U(150, 250), hd));
        parts.push_back(box(hw - arm, seat, -hd, hw, seat + U(150, 250), hd));
    } else if (category == "chair" || category == "office_chair" || category == "bar_stool" ||
               category == "stool") {
        const double hw = U(200, 280);
        const double seat = category == "bar_stool" ? U(650, 780) : U(420, 480);
        legs(hw, hw, seat - 40, 40);
        parts.push_back(box(-hw, seat - 40, -hw, hw, seat, hw));
        if (category == "chair" || category == "office_chair") {
            parts.push_back(box(-hw, seat, -hw, hw, seat + U(350, 500), -hw + 40));
        }
    } else if (category == "table" || category == "dining_table" || category == "coffee_table" ||
               category == "side_table" || category == "desk") {
        double hw = U(600, 1000), hd = U(400, 550), h = U(720, 760);
        if (category == "coffee_table") { hw = U(450, 650); hd = U(300, 400); h = U(400, 460); }
        if (category == "side_table") { hw = U(220, 300); hd = U(220, 300); h = U(500, 600); }
        if (category == "desk") { hw = U(550, 800); hd = U(300, 400); h = U(730, 760); }
        parts.push_back(box(-hw, h - 40, -hd, hw, h, hd));
        if (category == "desk") {
            parts.push_back(box(-hw, 0, -hd, -hw + 30, h - 40, hd));
            parts.push_back(box(hw - 30, 0, -hd, hw, h - 40, hd));
        } else {
            legs(hw - 20, hd - 20, h - 40, 50);
        }
    } else if (category == "bed" || category == "bunk_bed" || category == "crib") {
        const double hw = category == "crib" ? U(350, 450) : U(700, 950);
        const double hl = category == "crib" ? U(600, 700) : U(1000, 1100);
        parts.push_back(box(-hw, 0, -hl, hw, U(400, 550), hl));
        parts.push_back(box(-hw, 0, -hl, hw, U(900, 1200), -hl + 80));
        if (category == "bunk_bed") parts.push_back(box(-hw, 1300, -hl, hw, 1500, hl));
    } else if (category == "lamp") {
        const double r = U(70, 110);
        const double h = U(380, 560);
        parts.push_back(box(-r, 0, -r, r, 30, r));
        parts.push_back(box(-12, 30, -12, 12, h - 150, 12));
        parts.push_back(box(-r - 40, h - 150, -r - 40, r + 40, h, r + 40));
    } else if (category == "floor_lamp") {
        const double r = U(120, 180);
        const double h = U(1500, 1800);
        parts.push_back(box(-r, 0, -r, r, 30, r));
        parts.push_back(box(-15, 30, -15, 15, h - 300, 15));
        parts.push_back(box(-r - 30, h - 300, -r - 30, r + 30, h, r + 30));
    } else if (category == "plant" || category == "vase") {
        const double r = category == "plant" ? U(150, 250) : U(60, 100);
        const double h = category == "plant" ? U(300, 450) : U(200, 350);
        parts.push_back(box(-r, 0, -r, r, h, r));
        if (category == "plant") parts.push_back(box(-r - 100, h, -r - 100, r + 100, h + U(400, 800), r + 100));
    } else {
        // Storage and box-like pieces.
        double hw = U(400, 700), hd = U(200, 320), h = U(700, 1100);
        if (category == "wardrobe" || category == "bookshelf") { h = U(1800, 2200); }
        if (category == "nightstand") { hw = U(200, 280); hd = U(180, 250); h = U(450, 600); }
        if (category == "tv_stand" || category == "sideboard") { hw = U(700, 1000); h = U(450, 750); }
        if (category == "ottoman") { hw = U(250, 400); hd = U(250, 400); h = U(380, 450); }
        if (category == "bench") { hw = U(500, 800); hd = U(180, 250); h = U(420, 470); }
        parts.push_back(box(-hw, 0, -hd, hw, h, hd));
        if (category == "bookshelf") {
            for (double y = 400; y < h - 100; y += 400) {
                parts.push_back(box(-hw, y, -hd, hw, y + 25, hd + 10));
            }
        }
    }
    return parts;
}

}  // namespace

const std::vector<std::string>& furniture_category_names() {
    static const std::vector<std::string> names = {
        "sofa", "armchair", "chair", "office_chair", "stool", "table", "dining_table",
        "coffee_table", "side_table", "desk", "bed", "nightstand", "dresser", "wardrobe",
        "cabinet", "bookshelf", "tv_stand", "sideboard", "lamp", "floor_lamp", "plant", "vase",
        "ottoman", "bench"};
    return names;
}

AssetCatalog generate_catalog(std::uint64_t seed, const CatalogOptions& options) {
    RngStream rng(SeedHasher(0xCA7A106).add(seed).finish());

    LabelTaxonomy tax;
    int next_id = 1;
    std::map<std::string, std::string> base_of;  // category name -> base name
    for (const std::string structure : {"wall", "floor", "ceiling"}) {
        tax.categories[next_id++] = structure;
        base_of[structure] = structure;
    }
    for (const auto& suffix : style_suffixes()) {
        for (const auto& base : base_category_names()) {
            tax.categories[next_id++] = base + suffix;
            base_of[base + suffix] = base;
        }
    }

    LabelMapping nyu;
    nyu.name = "nyu40";
    nyu.other_id = 40;
    nyu.other_name = "otherprop";
    for (const auto& [id, name] : tax.categories) {
        auto it = nyu40_by_base().find(base_of[name]);
        if (it != nyu40_by_base().end()) nyu.table[id] = it->second;
    }
    tax.mappings.emplace(nyu.name, std::move(nyu));
    LabelMapping identity;
    identity.name = "identity";
    identity.identity = true;
    tax.mappings.emplace(identity.name, std::move(identity));

    auto id_of = [&](const std::string& name) {
        for (const auto& [id, n] : tax.categories) {
            if (n == name) return id;
        }
        throw Error(Errc::not_found, name);
    };

    const int dim = options.feature_dim;
    std::vector<AssetRecord> assets;
    std::vector<MaterialSeries> series;
    for (const auto& name : furniture_category_names()) {
        const int cat = id_of(name);
        std::vector<double> centroid(static_cast<std::size_t>(dim));
        for (double& v : centroid) v = rng.normal();
        for (int i = 0; i < options.assets_per_category; ++i) {
            AssetRecord a;
            a.asset_id = fmt::format("{}_{:03}", name, i);
            a.category_id = cat;
            a.parts = make_parts(name, rng);
            a.rebuild_geometry();
            a.feature.resize(static_cast<std::size_t>(dim));
            double n2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double v = centroid[static_cast<std::size_t>(d)] + 0.35 * rng.normal();
                a.feature[static_cast<std::size_t>(d)] = v;
                n2 += v * v;
            }
            for (double& v : a.feature) v /= std::sqrt(n2);
            assets.push_back(std::move(a));
        }
        for (int s = 0; s < 2; ++s) {
            MaterialSeries ms;
            ms.series_id = fmt::format("{}_series{}", name, s);
            ms.category_id = cat;
            const int count = 2 + static_cast<int>(rng.below(3));
            for (int m = 0; m < count; ++m) {
                Material mat;
                mat.material_id = fmt::format("{}_s{}_m{}", name, s, m);
                for (double& c : mat.base_color) c = std::round(rng.uniform(0.15, 0.9) * 1000.0) / 1000.0;
                mat.roughness = std::round(rng.uniform(0.2, 0.9) * 100.0) / 100.0;
                mat.metallic = s == 1 && m == 0 ? 0.5 : 0.0;
                ms.materials.push_back(std::move(mat));
            }
            series.push_back(std::move(ms));
        }
    }
    return AssetCatalog(std::move(assets), std::move(series), std::move(tax), dim);
}

}  // namespace forge
