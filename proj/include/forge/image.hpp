// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace forge {

/// Interleaved raster. Samples are stored as uint16 regardless of bit depth;
/// 8-bit images keep values in [0, 255].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    int bit_depth = 8;
    std::vector<std::uint16_t> data;

    Image() = default;
    Image(int w, int h, int c, int depth)
        : width(w), height(h), channels(c), bit_depth(depth),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * static_cast<std::size_t>(c), 0) {}

    std::uint16_t max_value() const { return bit_depth == 16 ? 65535 : 255; }
    std::size_t index(int x, int y, int c = 0) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(channels) + static_cast<std::size_t>(c);
    }
    std::uint16_t at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }
    std::uint16_t& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }

    friend bool operator==(const Image&, const Image&) = default;
};

/// PNG encoding with fixed settings (no timestamps), so equal images give
/// equal bytes. Supports 1 or 3 channels at 8 or 16 bits.
std::string encode_png(const Image& image);
Image decode_png(const std::string& bytes);

void write_png(const std::filesystem::path& path, const Image& image);
Image read_png(const std::filesystem::path& path);

}  // namespace forge
