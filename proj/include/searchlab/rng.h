#ifndef SEARCHLAB_RNG_H
#define SEARCHLAB_RNG_H

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace searchlab {

// SplitMix64 finalizer; also used as the state hash mixer across the library.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/*
  Deterministic random stream identified by (master_seed, stream_index).

  The generator is xoshiro256** seeded through a SplitMix64 chain over the
  identifying pair, following the xoshiro authors' recommended seeding. All
  outputs are computed with fixed-width integer arithmetic only, so a given
  (master_seed, stream_index, call sequence) produces identical bytes on
  every platform and compiler. Parallel trial runners rely on this: trial i
  always consumes stream i regardless of which worker executes it.
*/
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t stream_index) {
        // Chain both identifiers through SplitMix64 so that nearby seeds or
        // indices still yield decorrelated initial states.
        uint64_t x = mix64(master_seed) ^ mix64(stream_index + 0x632be59bd9b4e019ULL);
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            word = mix64(x);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 1;  // xoshiro must not start at the all-zero state
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

    // Unbiased uniform draw from [0, bound); bound must be >= 1.
    // Rejection sampling keeps the result independent of word size quirks.
    uint64_t uniform_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    uint64_t state_[4];
};

/*
  Uniform sample of k distinct values from {0, ..., n-1} via a partial
  Fisher-Yates shuffle over a sparse virtual array, so memory is O(k) even
  for astronomically large n. The result order is the selection order.
*/
inline std::vector<uint64_t> sample_without_replacement(RngStream& rng, uint64_t n, uint64_t k) {
    std::unordered_map<uint64_t, uint64_t> moved;
    auto slot = [&](uint64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    std::vector<uint64_t> picked;
    picked.reserve(k);
    for (uint64_t i = 0; i < k; ++i) {
        const uint64_t j = i + rng.uniform_below(n - i);
        picked.push_back(slot(j));
        moved[j] = slot(i);
    }
    return picked;
}

}  // namespace searchlab

#endif
