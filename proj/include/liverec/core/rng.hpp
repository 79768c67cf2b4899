#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace liverec::core {

// 64-bit FNV-1a, used for hashing opaque ids into buckets and for config digests.
inline constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. One engine (xoshiro256++) and hand-rolled
// distributions so that a given seed produces the identical sequence on every
// platform; the standard <random> distributions do not guarantee that.
//
// Independent child streams are derived from the original seed and a stream id,
// never from the current engine state, so stream assignment is stable no matter
// how many draws the parent has made.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = std::rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Unbiased draw from [0, n) by masked rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_int: n must be positive");
        if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
        const int bits = 64 - std::countl_zero(n - 1);
        const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
        for (;;) {
            const std::uint64_t v = next_u64() & mask;
            if (v < n) return v;
        }
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal() noexcept {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

    Rng derive(std::uint64_t stream_id) const noexcept {
        std::uint64_t sm = seed_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 0x632be59bd9b4e019ULL));
        return Rng(splitmix64(sm));
    }

    Rng derive(std::string_view tag) const noexcept { return derive(fnv1a64(tag)); }

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

}  // namespace liverec::core
