#pragma once

// Seedable, splittable random source. Every replica stream is derived from
// (base_seed, replica_index) with a SplitMix64 finalizer, so replica sets are
// independent of execution order and thread count.

#include <cstdint>
#include <random>

namespace erw {

inline constexpr std::uint64_t default_seed = 0x45525753'45454431ULL;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Top 53 bits of a 64-bit word as a double in [0, 1).
inline constexpr double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    double uniform() { return unit_interval(engine_()); }
    bool bernoulli(double p) { return uniform() < p; }
    std::uint64_t bits() { return engine_(); }
    std::uint64_t seed() const { return seed_; }

    Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Counter-based uniform keyed by (seed, site, visit). Used to drive walks
/// with a per-site, per-visit randomness table.
inline constexpr double keyed_uniform(std::uint64_t seed, std::int64_t site, std::uint64_t visit) {
    const std::uint64_t k = derive_seed(seed, static_cast<std::uint64_t>(site) * 0xd1b54a32d192ed03ULL);
    return unit_interval(splitmix64(k ^ splitmix64(visit)));
}

}  // namespace erw
