// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "forge/rng.hpp"

using forge::RngStream;

// Random123 known-answer vectors for philox4x32-10.
TEST_CASE("philox block matches the reference vectors") {
    using A = std::array<std::uint32_t, 4>;
    CHECK(RngStream::block(0, 0, 0) == A{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(RngStream::block(~0ull, ~0ull, ~0ull) == A{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(RngStream::block(0x299f31d0a4093822ull, 0x85a308d3243f6a88ull, 0x0370734413198a2eull) ==
          A{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream is a pure function of the key") {
    RngStream a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u32();
        CHECK(x == b.next_u32());
        differs |= x != c.next_u32();
    }
    CHECK(differs);
}

TEST_CASE("first draws come from block zero") {
    RngStream s(7);
    const auto blk = RngStream::block(7, 0);
    for (int i = 0; i < 4; ++i) CHECK(s.next_u32() == blk[static_cast<std::size_t>(i)]);
    const auto next = RngStream::block(7, 1);
    CHECK(s.next_u32() == next[0]);
}

TEST_CASE("uniform moments") {
    RngStream s(1);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("uniform range edges") {
    RngStream s(2);
    CHECK(s.uniform(3.5, 3.5) == 3.5);
    for (int i = 0; i < 10000; ++i) {
        const double x = s.uniform(-2.0, 5.0);
        REQUIRE(x >= -2.0);
        REQUIRE(x <= 5.0);
    }
}

TEST_CASE("below is unbiased for a non power of two") {
    RngStream s(3);
    const int n = 7, draws = 140000;
    std::vector<int> counts(n, 0);
    for (int i = 0; i < draws; ++i) {
        const auto v = s.below(n);
        REQUIRE(v < static_cast<std::uint64_t>(n));
        ++counts[static_cast<std::size_t>(v)];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(draws) / n;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 6 dof, p = 0.001 critical value
    CHECK(chi2 < 22.46);
    CHECK(s.below(1) == 0);
}

TEST_CASE("normal moments") {
    RngStream s(4);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = s.normal(10.0, 3.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(10.0).epsilon(0.003));
    CHECK(std::sqrt(sq / n - mean * mean) == doctest::Approx(3.0).epsilon(0.01));
    CHECK(s.normal(5.0, 0.0) == 5.0);
}

TEST_CASE("poisson mean and variance") {
    for (double lambda : {0.5, 4.0, 40.0, 400.0}) {
        RngStream s(5);
        const int n = 100000;
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(s.poisson(lambda));
            sum += x;
            sq += x * x;
        }
        const double mean = sum / n;
        CHECK(mean == doctest::Approx(lambda).epsilon(0.02));
        CHECK(sq / n - mean * mean == doctest::Approx(lambda).epsilon(0.05));
    }
    RngStream s(6);
    CHECK(s.poisson(0.0) == 0);
    CHECK(s.poisson(-1.0) == 0);
}

TEST_CASE("seed hasher separates field boundaries") {
    using forge::SeedHasher;
    const auto a = SeedHasher(1).add("ab").add("c").finish();
    const auto b = SeedHasher(1).add("a").add("bc").finish();
    const auto c = SeedHasher(2).add("ab").add("c").finish();
    CHECK(a != b);
    CHECK(a != c);
    CHECK(a == SeedHasher(1).add("ab").add("c").finish());

    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(SeedHasher(0).add(i).finish());
    CHECK(seen.size() == 10000);
}

TEST_CASE("mix64 avalanche") {
    double flipped = 0.0;
    int trials = 0;
    for (std::uint64_t x = 1; x < 200; ++x) {
        for (int bit = 0; bit < 64; ++bit) {
            flipped += __builtin_popcountll(forge::mix64(x) ^ forge::mix64(x ^ (1ull << bit)));
            ++trials;
        }
    }
    CHECK(flipped / trials == doctest::Approx(32.0).epsilon(0.03));
}
