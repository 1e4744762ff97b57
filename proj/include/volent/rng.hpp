#pragma once

#include <cstdint>
#include <random>

namespace volent {

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based seeding so each cell or chunk gets its own stream
// regardless of how work is scheduled.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// Uniform on [0,1) from 53 random bits. std::uniform_real_distribution
// is not specified bit-for-bit across standard libraries.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace volent
