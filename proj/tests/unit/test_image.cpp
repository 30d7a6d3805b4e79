// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "support.hpp"

#include "forge/error.hpp"
#include "forge/image.hpp"

using namespace forge;

namespace {

Image pattern(int w, int h, int c, int depth, std::uint64_t seed) {
    Image img(w, h, c, depth);
    RngStream rng(seed);
    for (auto& v : img.data) v = static_cast<std::uint16_t>(rng.below(img.max_value() + 1u));
    return img;
}

}  // namespace

TEST_CASE("png round trip for every supported layout") {
    for (int c : {1, 3}) {
        for (int depth : {8, 16}) {
            const Image img = pattern(37, 19, c, depth, static_cast<std::uint64_t>(c * 100 + depth));
            const std::string bytes = encode_png(img);
            CHECK(bytes.substr(1, 3) == "PNG");
            CHECK(decode_png(bytes) == img);
            CHECK(encode_png(img) == bytes);
        }
    }
}

TEST_CASE("png file io") {
    test::TempDir dir;
    const Image img = pattern(8, 8, 1, 16, 3);
    write_png(dir.path() / "a.png", img);
    CHECK(read_png(dir.path() / "a.png") == img);
    CHECK_THROWS_AS(read_png(dir.path() / "missing.png"), Error);
}

TEST_CASE("bad input is rejected") {
    CHECK_THROWS_AS(decode_png("definitely not a png"), Error);
    CHECK_THROWS_AS(decode_png(""), Error);
    std::string truncated = encode_png(pattern(16, 16, 3, 8, 1));
    truncated.resize(truncated.size() / 2);
    CHECK_THROWS_AS(decode_png(truncated), Error);
    CHECK_THROWS_AS(encode_png(Image(4, 4, 2, 8)), Error);
    CHECK_THROWS_AS(encode_png(Image(0, 4, 1, 8)), Error);
}
