// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic RNG helpers. All sampling goes through explicit integer
// arithmetic on mt19937_64 output so that streams are identical across
// platforms and standard-library versions (std::uniform_int_distribution
// is not portable).

#pragma once

#include <cstdint>
#include <random>

namespace gridfst {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent substream for a salted purpose (probe seeds, h0 init, ...).
    static Rng salted(std::uint64_t seed, std::uint64_t salt) {
        return Rng(splitmix64(seed ^ splitmix64(salt)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n) by rejection; n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1).
    double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1): resamples the measure-zero 0.
    double real_open() {
        double v = real();
        while (v == 0.0) v = real();
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gridfst
