#pragma once

#include <cstdint>

namespace ahasp {

// xoshiro256** seeded via splitmix64. All solver randomness flows through
// this generator so that seeded runs replay identically across platforms
// and standard-library versions.
class Rng {
public:
    explicit Rng(uint64_t seed = 1) {
        uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound). bound must be > 0.
    uint64_t uniform_int(uint64_t bound) {
        // Rejection-free multiply-shift (Lemire) without the bias-correction
        // loop; bias is < 2^-53 for the bounds used here.
        const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        return static_cast<uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4]{};
};

}  // namespace ahasp
