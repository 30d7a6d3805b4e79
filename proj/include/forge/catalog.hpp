// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/geometry.hpp"
#include "forge/rng.hpp"

namespace forge {

struct Triangle {
    Vec3 a;
    Vec3 b;
    Vec3 c;
};

/// Appends the 12 triangles of a box, wound outward.
void append_box(std::vector<Triangle>& out, const Aabb3& box);

struct AssetRecord {
    std::string asset_id;
    int category_id = 0;
    Aabb3 aabb;                  // local frame, mm
    std::vector<double> feature; // unit norm
    std::vector<Aabb3> parts;    // low-poly placeholder geometry, one box per part
    std::vector<Triangle> geometry;

    /// Rebuilds `geometry` and `aabb` from `parts`.
    void rebuild_geometry();
};

struct Material {
    std::string material_id;
    std::array<double, 3> base_color{0.7, 0.7, 0.7};  // linear RGB in [0, 1]
    double roughness = 0.5;
    double metallic = 0.0;
};

struct MaterialSeries {
    std::string series_id;
    int category_id = 0;
    std::vector<Material> materials;
};

struct LabelMapping {
    std::string name;
    bool identity = false;
    int other_id = 0;
    std::string other_name;
    std::map<int, std::pair<int, std::string>> table;  // category -> (target id, target name)
};

struct LabelTaxonomy {
    std::map<int, std::string> categories;
    std::map<std::string, LabelMapping> mappings;
};

/// Immutable after construction; safe to share across threads.
class AssetCatalog {
  public:
    AssetCatalog() = default;
    AssetCatalog(std::vector<AssetRecord> assets, std::vector<MaterialSeries> series,
                 LabelTaxonomy taxonomy, int feature_dim);

    /// Loads the catalog JSON and the CSV mapping tables it references
    /// (paths relative to the catalog file).
    static AssetCatalog load(const std::filesystem::path& path);
    /// Writes the catalog JSON and one CSV per non-identity mapping next to it.
    void save(const std::filesystem::path& path) const;

    const std::vector<AssetRecord>& assets() const { return assets_; }
    const std::vector<MaterialSeries>& series() const { return series_; }
    const LabelTaxonomy& taxonomy() const { return taxonomy_; }
    int feature_dim() const { return feature_dim_; }
    bool empty() const { return assets_.empty(); }

    const AssetRecord* find_asset(const std::string& asset_id) const;
    /// Throws Error(not_found).
    const AssetRecord& asset(const std::string& asset_id) const;
    const Material* find_material(const std::string& material_id) const;
    /// Series containing a material, or empty.
    std::string series_of(const std::string& material_id) const;

    std::optional<int> category_id(const std::string& name) const;
    std::string category_name(int category_id) const;

    /// The k assets (query excluded) closest in feature space, ties broken by
    /// ascending asset_id. Throws on unknown asset or k outside [1, size-1].
    std::vector<std::string> nearest_models(const std::string& asset_id, int k) const;
    double feature_distance(const std::string& a, const std::string& b) const;

    /// Uniform over the union of materials in every series of the category.
    std::string sample_material(int category_id, RngStream& rng) const;
    bool has_series(int category_id) const;

    /// Total over categories: unmapped ids yield the mapping's "other" id.
    int map_label(const std::string& mapping_name, int category_id) const;

    /// Problems with record invariants (empty means valid).
    std::vector<std::string> validate() const;

  private:
    std::vector<AssetRecord> assets_;
    std::vector<MaterialSeries> series_;
    LabelTaxonomy taxonomy_;
    int feature_dim_ = 64;
    std::unordered_map<std::string, std::size_t> asset_index_;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> material_index_;
    std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> materials_by_category_;
    std::unordered_map<std::string, int> category_by_name_;
};

struct CatalogOptions {
    int feature_dim = 64;
    int assets_per_category = 8;
};

/// Deterministic procedural catalog: ~300 categories, box-assembly assets for
/// the furniture categories, two material series per furniture category, and
/// an nyu40-style mapping plus an identity mapping.
AssetCatalog generate_catalog(std::uint64_t seed, const CatalogOptions& options = {});

/// Furniture categories that carry assets in the generated catalog.
const std::vector<std::string>& furniture_category_names();

}  // namespace forge
