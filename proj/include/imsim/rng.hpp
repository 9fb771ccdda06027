#pragma once

#include <cstdint>
#include <random>

namespace imsim {

using Rng = std::mt19937_64;

// splitmix64 step; used to decorrelate seeds before feeding them to the engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent substream for (master seed, stream index). Identical inputs give
// bit-identical engines, so trial i is reproducible regardless of scheduling.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix64(s);
    std::uint64_t c = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    return Rng(seq);
}

} // namespace imsim
