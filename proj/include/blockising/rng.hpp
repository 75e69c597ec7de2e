#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace blockising {

// Identifies one reproducible random stream. Identical specs reproduce
// identical draws bit-for-bit, on any platform. Parallel work derives one
// stream per unit (stream_index = trial index).
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

namespace detail {
// SplitMix64 finalizer (Steele/Lea/Flood). Bijective on 64-bit words.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// xoshiro256++ (Blackman/Vigna, public domain reference implementation),
// seeded from a SeedSpec by the documented state map
//
//   s[0] = mix(master_seed)        s[1] = mix(master_seed + GOLDEN)
//   s[2] = mix(stream_index)       s[3] = mix(stream_index + GOLDEN)
//
// with mix = SplitMix64 finalizer and GOLDEN = 0x9e3779b97f4a7c15. Since mix
// is a bijection, s[0] determines master_seed and s[2] determines
// stream_index, so the map (master_seed, stream_index) -> state is injective,
// and the state is never all-zero.
class Rng {
public:
    explicit Rng(SeedSpec seed) {
        constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
        s_[0] = detail::splitmix64_mix(seed.master_seed);
        s_[1] = detail::splitmix64_mix(seed.master_seed + golden);
        s_[2] = detail::splitmix64_mix(seed.stream_index);
        s_[3] = detail::splitmix64_mix(seed.stream_index + golden);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound). Lemire's multiply-shift with
    // rejection; exact uniformity for any bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        u128 m = static_cast<u128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<u128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Fair +1/-1 from one bit.
    int next_spin() { return (next_u64() >> 63) ? 1 : -1; }

    // Standard normal via Marsaglia polar method (no internal cache; one or
    // more uniform pairs consumed per call).
    double next_normal() {
        for (;;) {
            const double u = 2.0 * next_double() - 1.0;
            const double v = 2.0 * next_double() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// In-place partial Fisher-Yates: after the call, the first `take` entries of
// `pool` are a uniformly random `take`-subset of the original entries, in
// random order.
template <typename T>
void partial_shuffle(std::vector<T>& pool, std::size_t take, Rng& rng) {
    const std::size_t n = pool.size();
    for (std::size_t i = 0; i < take && i + 1 < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
}

} // namespace blockising
