// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/rng.hpp"

#include <cmath>
#include <numbers>

namespace forge {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> RngStream::block(std::uint64_t key, std::uint64_t counter_lo,
                                              std::uint64_t counter_hi) {
    std::array<std::uint32_t, 4> c{static_cast<std::uint32_t>(counter_lo),
                                   static_cast<std::uint32_t>(counter_lo >> 32),
                                   static_cast<std::uint32_t>(counter_hi),
                                   static_cast<std::uint32_t>(counter_hi >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

std::uint32_t RngStream::next_u32() {
    if (used_ == 4) {
        buffer_ = block(key_, counter_++);
        used_ = 0;
    }
    return buffer_[used_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    if (lo == hi) {
        return lo;
    }
    const double x = lo + (hi - lo) * uniform();
    return x > hi ? hi : x;
}

std::uint64_t RngStream::below(std::uint64_t n) {
    // Lemire's nearly-divisionless rejection on the 64x64 -> 128 product.
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = next_u64();
            m = static_cast<unsigned __int128>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::normal(double mean, double sigma) {
    double z;
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        z = spare_normal_;
    } else {
        // Box-Muller; 1 - uniform() lies in (0, 1] so the log is finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        z = r * std::cos(theta);
        spare_normal_ = r * std::sin(theta);
        has_spare_normal_ = true;
    }
    if (sigma == 0.0) {
        return mean;
    }
    return mean + sigma * z;
}

std::uint64_t RngStream::poisson(double lambda) {
    if (!(lambda > 0.0)) {
        return 0;
    }
    if (lambda < 10.0) {
        // Inversion by sequential search.
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    // Transformed rejection with squeeze (Hormann's PTRS).
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -lambda + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

SeedHasher::SeedHasher(std::uint64_t domain)
    : a_(mix64(domain ^ 0x6A09E667F3BCC908ull)), b_(mix64(domain ^ 0xBB67AE8584CAA73Bull)) {}

void SeedHasher::absorb(std::uint64_t word) {
    a_ = mix64(a_ ^ word);
    b_ = mix64(b_ + (word ^ 0x3C6EF372FE94F82Bull) * 0xFF51AFD7ED558CCDull);
    ++words_;
}

SeedHasher& SeedHasher::add(std::uint64_t value) {
    absorb(0x01);
    absorb(value);
    return *this;
}

SeedHasher& SeedHasher::add(std::string_view text) {
    absorb(0x02);
    absorb(text.size());
    std::uint64_t word = 0;
    int filled = 0;
    for (const char ch : text) {
        word |= static_cast<std::uint64_t>(static_cast<unsigned char>(ch)) << (8 * filled);
        if (++filled == 8) {
            absorb(word);
            word = 0;
            filled = 0;
        }
    }
    if (filled > 0) {
        absorb(word);
    }
    return *this;
}

std::uint64_t SeedHasher::finish() const {
    return mix64(a_ ^ mix64(b_ ^ words_));
}

}  // namespace forge
