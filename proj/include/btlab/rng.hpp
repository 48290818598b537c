#pragma once

#include <cstdint>
#include <random>

namespace btlab {

// Seeded RNG with named substreams. Every experiment derives one substream
// per trial index so trials are individually replayable and their results do
// not depend on scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix(seed)) {}

    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))));
    }

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n) by rejection; avoids std::uniform_int_distribution
    // whose output is not pinned across library implementations.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    int digit(int p) { return static_cast<int>(below(static_cast<std::uint64_t>(p))); }

    bool coin() { return (engine_() & 1u) != 0; }

    // Geometric on {1, 2, ...} with success probability `prob`, truncated at cap.
    int geometric(double prob, int cap) {
        int m = 1;
        while (m < cap && uniform01() >= prob) ++m;
        return m;
    }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    explicit Rng(std::uint64_t raw, int) : engine_(raw) {}

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace btlab
