#pragma once

#include <cstdint>
#include <random>

namespace actflood {

/// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for replicate `replicate` at scale `kappa`:
///   splitmix64(splitmix64(splitmix64(base) ^ kappa) ^ replicate)
constexpr std::uint64_t child_seed(std::uint64_t base, std::uint64_t kappa,
                                   std::uint64_t replicate) noexcept {
    return splitmix64(splitmix64(splitmix64(base) ^ kappa) ^ replicate);
}

/// Replicate index reserved for the per-kappa degree-spec stream.
inline constexpr std::uint64_t kSpecStream = ~std::uint64_t{0};

/// Seeded random stream. Wraps std::mt19937_64 (whose output sequence is fixed
/// by the standard) and derives every variate with hand-written transforms, so
/// a seed reproduces bit-identical draws on any conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
    double uniform_open();

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Exp(rate) by inversion, -ln(U) / rate.
    double exponential(double rate);

private:
    std::mt19937_64 engine_;
};

}  // namespace actflood
