#pragma once

#include <cstdint>
#include <random>

namespace tds {

// Identifies one reproducible random stream: a master seed plus a replica
// counter. The stream for a given pair is independent of thread scheduling
// and call order.
struct Seed {
    std::uint64_t master = 42;
    std::uint64_t replica = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-style split: both components pass through splitmix64 so nearby
// (master, replica) pairs land on unrelated engine seeds.
inline std::uint64_t derive_stream_seed(Seed seed) {
    std::uint64_t s = seed.master;
    std::uint64_t a = splitmix64(s);
    s ^= seed.replica + 0x632BE59BD9B4E019ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 32 | b >> 32);
}

// Uniform (0,1) stream backed by mt19937_64. Conversion keeps 53 random
// bits and offsets by half an ulp so 0 and 1 are never produced; the raw
// bit sequence of mt19937_64 is pinned by the standard, so streams are
// bit-identical across platforms.
class UniformStream {
public:
    explicit UniformStream(Seed seed) : engine_(derive_stream_seed(seed)) {}

    double next() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tds
