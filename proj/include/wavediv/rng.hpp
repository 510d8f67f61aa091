#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>

#include "wavediv/dyadic.hpp"

namespace wavediv {

/// Counter-based random stream: every draw is a pure hash of
/// (seed, key words), so draws are order-independent and parallel-safe.
/// The finalizer is the Stafford mix13 variant used by splitmix64.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t hash(std::initializer_list<std::uint64_t> words) const {
        std::uint64_t h = mix(seed_);
        for (auto w : words) h = mix(h ^ w);
        return h;
    }

    std::uint64_t hash_indexed(std::uint64_t tag, int i, const DyadicCube& cube) const {
        std::uint64_t h = mix(seed_);
        h = mix(h ^ tag);
        h = mix(h ^ static_cast<std::uint64_t>(i));
        h = mix(h ^ static_cast<std::uint64_t>(cube.j));
        for (auto c : cube.k) h = mix(h ^ std::bit_cast<std::uint64_t>(c));
        return h;
    }

    static double to_unit(std::uint64_t h) {
        return static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    }

    /// Uniform on [0,1), keyed by arbitrary words.
    double uniform01(std::initializer_list<std::uint64_t> words) const {
        return to_unit(hash(words));
    }

    /// The noise xi^(i)_{j,k}: uniform density (1/2) 1_{[-1,1]}, keyed by the
    /// coefficient index so the stream order never matters.
    double xi(int i, const DyadicCube& cube) const {
        return 2.0 * to_unit(hash_indexed(0x78690000ull, i, cube)) - 1.0;
    }

    /// Derived stream for sub-experiments (per-trial seeds etc.).
    CounterRng derive(std::uint64_t word) const { return CounterRng(mix(seed_ ^ word)); }

  private:
    std::uint64_t seed_;
};

}  // namespace wavediv
