#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace monobandit {

// SplitMix64 finalizer. Used both as the PRNG step and as the hash behind
// substream seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream seeding rule: fold each id into the seed through mix64.
// A stream is identified by (seed, id_0, id_1, ...), so adding more streams
// elsewhere never perturbs an existing one.
inline std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t s = mix64(seed);
    for (std::uint64_t id : ids) {
        s = mix64(s ^ mix64(id));
    }
    return s;
}

// FNV-1a, used to turn policy names into stable stream ids.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Small value-semantics generator (SplitMix64 state, Box-Muller normals).
// Self-contained so that seeded runs are reproducible independent of the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Standard normal draw; the Box-Muller pair partner is cached.
    double next_normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace monobandit
