#include "actflood/rng.hpp"

#include <cmath>

namespace actflood {

double Rng::uniform_open() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(next() >> 11) + 0.5) * kScale;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection on the low residue class keeps the draw exactly uniform.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= threshold) return x % bound;
    }
}

double Rng::exponential(double rate) {
    return -std::log(uniform_open()) / rate;
}

}  // namespace actflood
