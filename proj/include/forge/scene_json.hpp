// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "forge/scene.hpp"

namespace forge {

// Scene JSON schema (docs/scene_schema.md). Field names are fixed.

nlohmann::json to_json(const SceneDocument& scene);
nlohmann::json to_json(const Component& component);
nlohmann::json to_json(const DistributionDescriptor& descriptor);

/// Throws Error(validation) with a JSON-path hint on schema violations.
SceneDocument scene_from_json(const nlohmann::json& j);
Component component_from_json(const nlohmann::json& j);
DistributionDescriptor descriptor_from_json(const nlohmann::json& j);

/// Canonical text form; equal documents serialize to equal bytes.
std::string serialize_scene(const SceneDocument& scene);
SceneDocument parse_scene(const std::string& text);

SceneDocument read_scene_file(const std::filesystem::path& path);

}  // namespace forge
