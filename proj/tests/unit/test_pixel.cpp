// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "forge/error.hpp"
#include "forge/pixel.hpp"

using namespace forge;

namespace {

Image depth_frame(int w, int h, std::uint16_t value, bool holes) {
    Image img(w, h, 1, 16);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = (holes && (x + y) % 5 == 0) ? 0 : value;
    }
    return img;
}

}  // namespace

TEST_CASE("no-hit pixels survive every model") {
    const Image d = depth_frame(40, 30, 3000, true);
    for (int code = 0; code <= 4; ++code) {
        RngStream rng(static_cast<std::uint64_t>(code));
        NoiseParams p;
        p.salt_pepper_p = 0.5;
        const Image out = apply_noise(d, noise_kind_from_code(code), p, rng);
        for (std::size_t i = 0; i < d.data.size(); ++i) {
            if (d.data[i] == 0) {
                CHECK(out.data[i] == 0);
            } else if (code != 3) {
                CHECK(out.data[i] != 0);
            }
        }
    }
}

TEST_CASE("none is the identity") {
    const Image d = depth_frame(10, 10, 1234, true);
    RngStream rng(1);
    CHECK(apply_noise(d, NoiseKind::none, {}, rng) == d);
}

TEST_CASE("gaussian noise has the configured sigma") {
    const Image d = depth_frame(400, 250, 3000, false);
    NoiseParams p;
    p.gaussian_sigma = 25.0;
    RngStream rng(2);
    const Image out = apply_noise(d, NoiseKind::gaussian, p, rng);
    double sum = 0.0, sq = 0.0;
    for (auto v : out.data) {
        const double e = static_cast<double>(v) - 3000.0;
        sum += e;
        sq += e * e;
    }
    const double n = static_cast<double>(out.data.size());
    CHECK(std::fabs(sum / n) < 0.5);
    CHECK(std::sqrt(sq / n - (sum / n) * (sum / n)) == doctest::Approx(25.0).epsilon(0.02));
}

TEST_CASE("salt and pepper corrupts a fraction p") {
    const Image d = depth_frame(400, 250, 3000, false);
    NoiseParams p;
    p.salt_pepper_p = 0.05;
    RngStream rng(3);
    const Image out = apply_noise(d, NoiseKind::salt_pepper, p, rng);
    int salt = 0, pepper = 0;
    for (auto v : out.data) {
        salt += v == p.salt_value;
        pepper += v == p.pepper_value;
        CHECK((v == 3000 || v == p.salt_value || v == p.pepper_value));
    }
    const double n = static_cast<double>(out.data.size());
    CHECK(std::fabs((salt + pepper) / n - 0.05) < 0.005);
    CHECK(salt == doctest::Approx(pepper).epsilon(0.1));
}

TEST_CASE("poisson noise is unbiased") {
    const Image d = depth_frame(300, 200, 2000, false);
    RngStream rng(4);
    const Image out = apply_noise(d, NoiseKind::poisson, {}, rng);
    double sum = 0.0, sq = 0.0;
    for (auto v : out.data) {
        sum += v;
        sq += static_cast<double>(v) * v;
    }
    const double n = static_cast<double>(out.data.size());
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(2000.0).epsilon(0.005));
    // counts ~ Poisson(200) scaled by 10 mm
    CHECK(std::sqrt(sq / n - mean * mean) == doctest::Approx(std::sqrt(200.0) * 10.0).epsilon(0.05));
}

TEST_CASE("kinect with zero sigmas is pure disparity quantisation") {
    Image d(300, 1, 1, 16);
    for (int x = 0; x < 300; ++x) d.at(x, 0) = static_cast<std::uint16_t>(500 + x * 29);
    NoiseParams p;
    p.kinect_sigma_disparity = 0.0;
    p.kinect_sigma_shift = 0.0;
    RngStream rng(5);
    const Image out = apply_noise(d, NoiseKind::kinect, p, rng);
    for (int x = 0; x < 300; ++x) {
        const double depth = d.at(x, 0);
        const double expected = 35130.0 / std::round(35130.0 / depth);
        CHECK(out.at(x, 0) == static_cast<std::uint16_t>(std::round(expected)));
        CHECK(kinect_quantize(depth) == expected);
    }
}

TEST_CASE("noise parameters are validated") {
    const Image d = depth_frame(4, 4, 100, false);
    RngStream rng(6);
    NoiseParams p;
    p.gaussian_sigma = -1.0;
    CHECK_THROWS_AS(apply_noise(d, NoiseKind::gaussian, p, rng), Error);
    p = {};
    p.salt_pepper_p = 1.5;
    CHECK_THROWS_AS(apply_noise(d, NoiseKind::salt_pepper, p, rng), Error);
    CHECK_THROWS_AS(noise_kind_from_code(5), Error);
    CHECK_THROWS_AS(apply_noise(Image(4, 4, 3, 8), NoiseKind::none, {}, rng), Error);
}

TEST_CASE("label remap follows the catalog mapping") {
    const auto& cat = test::catalog();
    Image sem(4, 1, 1, 16);
    const int sofa = *cat.category_id("sofa");
    sem.at(0, 0) = 0;
    sem.at(1, 0) = static_cast<std::uint16_t>(sofa);
    sem.at(2, 0) = 9999;
    sem.at(3, 0) = static_cast<std::uint16_t>(sofa);
    const Image out = remap_labels(sem, cat, "nyu40");
    CHECK(out.at(0, 0) == 0);
    CHECK(out.at(1, 0) == cat.map_label("nyu40", sofa));
    CHECK(out.at(2, 0) == cat.map_label("nyu40", 9999));
    CHECK(out.at(3, 0) == out.at(1, 0));
    CHECK_THROWS_AS(remap_labels(sem, cat, "unknown"), Error);
}
