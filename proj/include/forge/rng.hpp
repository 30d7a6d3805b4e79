// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace forge {

/// Identifier written to job manifests so outputs can be reproduced elsewhere.
inline constexpr std::string_view kRngAlgorithm = "philox4x32-10";

/// Counter-based random stream (Philox4x32-10). The output is a pure function
/// of (key, position), so a stream can be reconstructed from its key alone.
///
/// All distributions are implemented here rather than through <random> so the
/// draws are identical across standard library implementations.
class RngStream {
  public:
    explicit RngStream(std::uint64_t key = 0) : key_(key) {}

    std::uint64_t key() const { return key_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n);
    /// Standard normal scaled to N(mean, sigma^2). sigma == 0 returns mean.
    double normal(double mean = 0.0, double sigma = 1.0);
    /// Poisson(lambda); lambda <= 0 yields 0.
    std::uint64_t poisson(double lambda);

    /// Raw Philox block for (key, counter); exposed for tests.
    static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t counter_lo,
                                              std::uint64_t counter_hi = 0);

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// 64-bit mixing hash used for seed derivation (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

/// Incremental tuple hasher; every field is length-prefixed so distinct tuples
/// never serialize to the same byte string.
class SeedHasher {
  public:
    explicit SeedHasher(std::uint64_t domain = 0);
    SeedHasher& add(std::uint64_t value);
    SeedHasher& add(std::string_view text);
    std::uint64_t finish() const;

  private:
    void absorb(std::uint64_t word);
    std::uint64_t a_;
    std::uint64_t b_;
    std::uint64_t words_ = 0;
};

}  // namespace forge
