// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/dsl/ast.hpp"
#include "forge/image.hpp"
#include "forge/layout.hpp"
#include "forge/pixel.hpp"
#include "forge/rng.hpp"
#include "forge/samplers.hpp"
#include "forge/scene.hpp"
#include "forge/trajectory.hpp"

namespace forge::dsl {

/// Exit code recorded for scenes dropped by `skip`.
inline constexpr int kFilteredCode = 7;

/// Rendered frames of one scene: view name -> file name -> image.
using ViewImages = std::map<std::string, std::map<std::string, Image>>;

struct StageContext {
    SceneDocument* scene = nullptr;  // scene and entity stages only
    const AssetCatalog* catalog = nullptr;
    RngStream* rng = nullptr;
    PickSink* picks = nullptr;                         // entity stage
    std::vector<TrajectoryResult>* trajectories = nullptr;  // entity stage
    ViewImages* images = nullptr;                      // pixel stage only

    LayoutConfig layout;
    std::optional<int> layout_iterations;
    TrajectoryConfig trajectory;
    NoiseParams noise;
    int replace_k = 8;
    std::uint64_t step_limit = 10'000'000;
    std::size_t list_limit = 1'000'000;
};

enum class StageStatus { completed, filtered, failed };

struct StageOutcome {
    StageStatus status = StageStatus::completed;
    std::optional<Diagnostic> diagnostic;  // set when failed
    std::uint64_t steps = 0;
};

/// Runs one stage block of a checked script against the context. A missing
/// stage block completes trivially. Runtime errors become a failed outcome
/// with a positioned diagnostic; the scene may be partially modified.
StageOutcome execute_stage(const Script& script, StageKind stage, StageContext& ctx);

}  // namespace forge::dsl
