// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "forge/catalog.hpp"
#include "forge/image.hpp"
#include "forge/rng.hpp"

namespace forge {

enum class NoiseKind { none = 0, gaussian = 1, poisson = 2, salt_pepper = 3, kinect = 4 };

/// Baseline-focal constant of the structured-light disparity model (d in mm).
inline constexpr double kKinectK = 35130.0;

struct NoiseParams {
    double gaussian_sigma = 10.0;  // mm
    double poisson_scale = 10.0;   // mm per count
    double salt_pepper_p = 0.05;
    std::uint16_t salt_value = 65535;
    std::uint16_t pepper_value = 0;
    double kinect_sigma_disparity = 0.5;
    double kinect_sigma_shift = 0.5;  // pixels

    /// Throws Error(invalid_argument) on negative sigmas, p outside [0, 1] or
    /// scale <= 0.
    void validate() const;
};

/// Applies a depth noise model to a 16-bit single-channel depth frame. Pixels
/// that are 0 (no hit) stay 0 under every model.
Image apply_noise(const Image& depth, NoiseKind kind, const NoiseParams& params, RngStream& rng);

/// Noise model from its script code 0-4; throws Error(invalid_argument) otherwise.
NoiseKind noise_kind_from_code(int code);

/// Kinect quantisation of one depth value without noise: K / round(K / d).
double kinect_quantize(double depth_mm);

/// Per-pixel label remap through a catalog mapping; 0 stays 0.
Image remap_labels(const Image& semantic, const AssetCatalog& catalog, const std::string& mapping);

}  // namespace forge
