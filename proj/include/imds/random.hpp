#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace imds {

using Seed = std::uint64_t;

/// splitmix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a list of words into a single seed. Order matters.
constexpr Seed mix_seed(Seed base, std::initializer_list<std::uint64_t> parts) noexcept {
    Seed h = splitmix64(base);
    for (auto p : parts) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

/// Seeded generator whose draws are identical across standard libraries.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// conversions to floating point and bounded integers are done here because
/// the standard distributions are implementation-defined.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

    /// Uniform integer in [0, bound); bound must be positive.
    std::size_t below(std::size_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % b);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace imds
