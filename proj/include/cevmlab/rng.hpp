#pragma once

#include <cstdint>

namespace cevmlab {

// Counter-based uniform generator: draw (counter, slot) under a fixed key is
// a pure function of (seed, stream, counter, slot). Chunked parallel sampling
// therefore reproduces the serial stream exactly, and sample(seed, n) is a
// prefix of sample(seed, m) for n < m.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(mix(seed + 0x632be59bd9b4e019ULL) ^ mix(stream * 0x9e3779b97f4a7c15ULL + 1)) {}

    uint64_t bits(uint64_t counter, uint32_t slot) const {
        uint64_t w = counter * 0xd1342543de82ef95ULL + (uint64_t(slot) << 1 | 1);
        return mix(key_ ^ mix(w));
    }

    // Uniform in the open interval (0, 1).
    double u01(uint64_t counter, uint32_t slot) const {
        return (double(bits(counter, slot) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on {0, ..., k-1}; k is small (branch selection).
    uint32_t pick(uint64_t counter, uint32_t slot, uint32_t k) const {
        return uint32_t(u01(counter, slot) * k);
    }

  private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t key_;
};

}  // namespace cevmlab
