// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/rng.hpp"
#include "forge/scene.hpp"

namespace forge {

struct LayoutWeights {
    double clearance = 10.0;
    double circulation = 5.0;
    double group = 3.0;
    double alignment = 1.0;
    double distribution = 1.0;
    double rhythm = 1.0;
};

struct LayoutConfig {
    LayoutWeights weights;
    double margin = 200.0;        // mm, clearance inflation
    double grid = 100.0;          // mm, circulation cell size
    double move_sigma = 300.0;    // mm
    double yaw_range = 0.5235987755982988;  // +-30 degrees
    double snap_probability = 0.2;
    /// Initial temperature; negative means "initial cost total, or 1 if zero".
    double t0 = -1.0;
    double alpha = 0.97;
    int iters_per_furniture = 20;
};

/// One movable piece. `local` is the asset box after scale, before yaw.
struct LayoutItem {
    std::string entity_id;
    std::string category;
    Aabb3 local;
    Vec2 position;  // world (x, z) of the entity origin
    double yaw = 0.0;
    friend bool operator==(const LayoutItem&, const LayoutItem&) = default;
};

struct LayoutState {
    std::vector<Vec2> room;
    Vec2 door;
    std::vector<LayoutItem> items;
    friend bool operator==(const LayoutState&, const LayoutState&) = default;
};

struct CostBreakdown {
    double clearance = 0.0;
    double circulation = 0.0;
    double group = 0.0;
    double alignment = 0.0;
    double distribution = 0.0;
    double rhythm = 0.0;
    double total = 0.0;
};

/// World floor footprint of an item.
Rect2 footprint(const LayoutItem& item);
bool inside_room(const LayoutState& state, const LayoutItem& item);

/// Midpoint of the longest polygon edge.
Vec2 default_door(const std::vector<Vec2>& room);

double clearance_term(const LayoutState& s, double margin);
double circulation_term(const LayoutState& s, double grid);
double group_term(const LayoutState& s);
double alignment_term(const LayoutState& s);
double distribution_term(const LayoutState& s);
double rhythm_term(const LayoutState& s);

/// Throws Error(validation) when a footprint leaves the room.
CostBreakdown layout_cost(const LayoutState& s, const LayoutConfig& config = {});

/// Perturbs one uniformly chosen item, keeping its footprint inside the room.
LayoutState propose_move(const LayoutState& s, RngStream& rng, const LayoutConfig& config = {},
                         std::size_t* moved = nullptr);

struct AnnealResult {
    LayoutState best;
    CostBreakdown best_cost;
    CostBreakdown initial_cost;
    std::vector<double> accepted_totals;  // initial state first
    int iterations = 0;
};

AnnealResult anneal_layout(const LayoutState& initial, RngStream& rng, const LayoutConfig& config,
                           std::optional<int> iterations = std::nullopt);

/// Floor-standing mesh entities of the room. Entities resting on other
/// furniture are excluded; they follow their supporter when the layout is
/// applied.
LayoutState extract_layout(const SceneDocument& scene, const std::string& room_id,
                           const AssetCatalog& catalog);

/// Writes item positions/yaws back into the scene and carries supported
/// children along with their supporter.
void apply_layout(SceneDocument& scene, const LayoutState& state, const AssetCatalog& catalog);

AnnealResult randomize_layout(SceneDocument& scene, const std::string& room_id,
                              const AssetCatalog& catalog, RngStream& rng,
                              const LayoutConfig& config = {}, std::optional<int> iterations = std::nullopt);

}  // namespace forge
