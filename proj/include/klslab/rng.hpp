#pragma once

#include <cstdint>
#include <random>

namespace klslab {

/// Sample streams are split into fixed-size chunks of the sample index
/// space; chunk c of a run with master seed s draws from an engine seeded
/// with derive_seed(s, c).  Results are therefore independent of how chunks
/// are assigned to workers.
inline constexpr std::int64_t kChunkSize = 4096;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for chunk `chunk` of a stream with master seed `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t chunk) {
    std::uint64_t s = seed ^ (0x517cc1b727220a95ULL * (chunk + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

/// Engine plus the handful of draw helpers the samplers need.
class ChunkRng {
public:
    explicit ChunkRng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return unif_(eng_); }
    double uniform(double a, double b) { return a + (b - a) * unif_(eng_); }
    double normal() { return normal_(eng_); }
    double exponential() { return exp_(eng_); }
    std::uint64_t bits() { return eng_(); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exp_{1.0};
};

inline std::int64_t num_chunks(std::int64_t n_samples) {
    return (n_samples + kChunkSize - 1) / kChunkSize;
}

} // namespace klslab
