// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/catalog.hpp"
#include "forge/scene.hpp"

namespace forge {

/// Procedural stand-in for a designer scene database. Each scene has 1-5
/// rectangular or L-shaped rooms laid out along +x, 3-25 furniture pieces drawn
/// from the catalog, one point light per room, and cameras in up to two rooms.
/// Scene i of a corpus depends only on (seed, i).
std::vector<SceneDocument> generate_corpus(int n, std::uint64_t seed, const AssetCatalog& catalog);

SceneDocument generate_scene(std::uint64_t seed, int index, const AssetCatalog& catalog);

std::string corpus_scene_id(std::uint64_t seed, int index);

}  // namespace forge
