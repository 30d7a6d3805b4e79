// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/pixel.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "forge/error.hpp"

namespace forge {

namespace {

std::uint16_t clamp_hit(double v) {
    return static_cast<std::uint16_t>(std::clamp(std::round(v), 1.0, 65535.0));
}

void require_depth(const Image& img) {
    if (img.channels != 1 || img.bit_depth != 16) {
        throw Error(Errc::invalid_argument, "depth noise needs a 16-bit single-channel frame");
    }
}

}  // namespace

void NoiseParams::validate() const {
    if (!(gaussian_sigma >= 0.0) || !(kinect_sigma_disparity >= 0.0) || !(kinect_sigma_shift >= 0.0)) {
        throw Error(Errc::invalid_argument, "noise sigma must be >= 0");
    }
    if (!(salt_pepper_p >= 0.0 && salt_pepper_p <= 1.0)) {
        throw Error(Errc::invalid_argument, "salt-and-pepper p must be in [0, 1]");
    }
    if (!(poisson_scale > 0.0)) throw Error(Errc::invalid_argument, "poisson scale must be > 0");
}

NoiseKind noise_kind_from_code(int code) {
    if (code < 0 || code > 4) throw Error(Errc::invalid_argument, fmt::format("noise model {} not in 0..4", code));
    return static_cast<NoiseKind>(code);
}

double kinect_quantize(double depth_mm) {
    const double q = std::max(1.0, std::round(kKinectK / depth_mm));
    return kKinectK / q;
}

Image apply_noise(const Image& depth, NoiseKind kind, const NoiseParams& params, RngStream& rng) {
    require_depth(depth);
    params.validate();
    Image out = depth;
    const std::size_t n = out.data.size();
    switch (kind) {
        case NoiseKind::none:
            break;
        case NoiseKind::gaussian:
            for (std::size_t i = 0; i < n; ++i) {
                if (depth.data[i] != 0) out.data[i] = clamp_hit(depth.data[i] + rng.normal(0.0, params.gaussian_sigma));
            }
            break;
        case NoiseKind::poisson:
            for (std::size_t i = 0; i < n; ++i) {
                if (depth.data[i] == 0) continue;
                const double counts = static_cast<double>(rng.poisson(depth.data[i] / params.poisson_scale));
                out.data[i] = clamp_hit(counts * params.poisson_scale);
            }
            break;
        case NoiseKind::salt_pepper:
            for (std::size_t i = 0; i < n; ++i) {
                if (depth.data[i] == 0) continue;
                const double u = rng.uniform();
                if (u < params.salt_pepper_p / 2.0) {
                    out.data[i] = params.salt_value;
                } else if (u < params.salt_pepper_p) {
                    out.data[i] = params.pepper_value;
                }
            }
            break;
        case NoiseKind::kinect: {
            std::vector<std::uint16_t> quantized(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (depth.data[i] == 0) continue;
                const double disparity = kKinectK / depth.data[i] + rng.normal(0.0, params.kinect_sigma_disparity);
                const double q = std::max(1.0, std::round(disparity));
                quantized[i] = clamp_hit(kKinectK / q);
            }
            for (int y = 0; y < depth.height; ++y) {
                for (int x = 0; x < depth.width; ++x) {
                    const std::size_t i = depth.index(x, y);
                    const int sx = std::clamp(x + static_cast<int>(std::lround(rng.normal(0.0, params.kinect_sigma_shift))),
                                              0, depth.width - 1);
                    const int sy = std::clamp(y + static_cast<int>(std::lround(rng.normal(0.0, params.kinect_sigma_shift))),
                                              0, depth.height - 1);
                    if (depth.data[i] == 0) continue;
                    const std::uint16_t shifted = quantized[depth.index(sx, sy)];
                    // A shift onto a no-hit pixel keeps the pixel's own value so the mask survives.
                    out.data[i] = shifted != 0 ? shifted : quantized[i];
                }
            }
            break;
        }
    }
    return out;
}

Image remap_labels(const Image& semantic, const AssetCatalog& catalog, const std::string& mapping) {
    if (semantic.channels != 1) throw Error(Errc::invalid_argument, "semantic frame must be single-channel");
    catalog.map_label(mapping, 0);  // throws for unknown mappings
    Image out = semantic;
    std::map<std::uint16_t, std::uint16_t> cache;
    for (auto& v : out.data) {
        if (v == 0) continue;
        auto it = cache.find(v);
        if (it == cache.end()) {
            const int mapped = catalog.map_label(mapping, v);
            it = cache.emplace(v, static_cast<std::uint16_t>(std::clamp(mapped, 0, 65535))).first;
        }
        v = it->second;
    }
    return out;
}

}  // namespace forge
