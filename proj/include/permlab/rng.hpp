#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace permlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Identifies one reproducible pseudorandom sequence.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t substream = 0;
};

/// xoshiro256** 1.0 (Blackman and Vigna 2018) with a fixed key-derivation
/// scheme, so that (seed, stream, substream) names the same sequence on every
/// platform:
///
///   key  = mix(mix(mix(seed) ^ (stream * G1)) ^ (substream * G2))
///   s[k] = mix(key + (k + 1) * golden)        k = 0..3
///
/// with mix the SplitMix64 finalizer. Satisfies UniformRandomBitGenerator.
/// Uniform reals use the top 53 bits: ((x >> 11) + 0.5) * 2^-53, which lies
/// strictly inside (0, 1).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0) noexcept {
        constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
        std::uint64_t key = splitmix64_mix(seed);
        key = splitmix64_mix(key ^ (stream * 0xd1b54a32d192ed03ULL));
        key = splitmix64_mix(key ^ (substream * 0xaef17502108ef2d9ULL));
        for (std::uint64_t k = 0; k < 4; ++k) s_[k] = splitmix64_mix(key + (k + 1) * golden);
    }
    explicit Rng(const RngSeed& s) noexcept : Rng(s.seed, s.stream, s.substream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by Lemire's multiply-and-reject method.
    std::uint64_t below(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

}  // namespace permlab
