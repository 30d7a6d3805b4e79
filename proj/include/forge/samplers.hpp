// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "forge/catalog.hpp"
#include "forge/rng.hpp"
#include "forge/scene.hpp"

namespace forge {

enum class LightMode { day, night, free };

std::optional<LightMode> parse_light_mode(std::string_view s);

struct LightRange {
    double intensity_lo;
    double intensity_hi;
    double temperature_lo;
    double temperature_hi;
};

LightRange light_range(LightMode mode);

struct LightTune {
    bool temperature = true;
    bool intensity = true;
};

/// Redraws intensity and/or colour temperature uniformly over the mode's range.
Light tune_light(const Light& light, const LightRange& range, RngStream& rng, LightTune which = {});
Light tune_light(const Light& light, LightMode mode, RngStream& rng, LightTune which = {});

/// New MaterialRef drawn from the category's material series.
Entity replace_material(const Entity& entity, const AssetCatalog& catalog, RngStream& rng);

/// Swaps the entity's model for one of its k nearest same-category catalog
/// neighbours, keeping footprint centre and yaw and re-seating it on its
/// support. Children resting on top of the entity are lifted or lowered to
/// the new top. A similarity descriptor on MeshRef.asset_id overrides k.
/// Returns the ids of entities whose transforms changed.
std::vector<std::string> replace_model(SceneDocument& scene, const std::string& entity_id,
                                       const AssetCatalog& catalog, RngStream& rng, int k = 8);

/// Perturbs Transform.position ("position") or yaw ("yaw") by a draw from a
/// uniform or gaussian descriptor. Room-bound mesh entities are pulled back
/// toward their start so the footprint stays inside the room.
Entity sample_transform(const SceneDocument& scene, const Entity& entity, std::string_view field,
                        const DistributionDescriptor& descriptor, const AssetCatalog& catalog,
                        RngStream& rng);

using AttrValue = std::variant<double, std::string>;

/// Camera attributes: imageWidth, imageHeight, fov, model, orthoHalfHeight.
/// Throws Error(invalid_argument) for unknown names and Error(validation) for
/// out-of-range values.
Entity set_camera_attr(Entity camera, std::string_view name, const AttrValue& value);

/// Ordered list of exported records for one scene.
class PickSink {
  public:
    /// Throws Error(validation) unless the record is an object with string
    /// `type` and a string or numeric `id`.
    void add(nlohmann::json record);
    const std::vector<nlohmann::json>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::string serialize() const;

  private:
    std::vector<nlohmann::json> records_;
};

}  // namespace forge
