#pragma once

#include <cstdint>
#include <random>

namespace ipl {

// splitmix64 step; used to derive independent seed streams from a master
// seed plus structural indices (axis, point, replica).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix64(mix64(mix64(mix64(master) ^ a) ^ b) ^ c);
}

// mt19937_64 with a manual double extraction. The raw-bits-to-double path is
// pinned here so output streams are identical across standard libraries
// (uniform_real_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

private:
    std::mt19937_64 eng_;
};

} // namespace ipl
