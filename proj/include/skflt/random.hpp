#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace skflt {

/// SplitMix64 step; used to scramble seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash64(std::string_view s) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic substream id for replicate `index` of experiment `tag`.
/// Alternate implementations reproduce results by matching this derivation.
inline std::uint64_t derive_stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= hash64(tag);
    std::uint64_t b = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (c << 6) + (c >> 2));
}

/// Seeded generator producing uniforms strictly inside (0,1).
/// mt19937_64 output is fully specified by the standard, so sequences are
/// reproducible across platforms; distribution transforms are done by hand
/// below for the same reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(scramble(seed)) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential(1) via inversion.
    double exponential() { return -std::log(uniform_open()); }

    /// Standard normal via Box-Muller (two uniforms per draw, no caching).
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    static std::uint64_t scramble(std::uint64_t seed) {
        std::uint64_t s = seed;
        return splitmix64(s);
    }

    std::mt19937_64 engine_;
};

}  // namespace skflt
