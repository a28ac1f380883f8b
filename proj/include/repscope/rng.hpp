/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_RNG_HPP
#define REPSCOPE_RNG_HPP

#include <cstdint>
#include <random>

namespace repscope {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// and the derived draws below avoid std::*_distribution (whose algorithms are
// implementation-defined), so streams are reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of randomness.
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); unbiased via rejection.
    uint64_t bounded(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // splitmix64 finalizer; used to derive per-thread seeds from a run seed.
    static uint64_t mix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static uint64_t mix(uint64_t a, uint64_t b) { return mix(a ^ mix(b)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace repscope

#endif
