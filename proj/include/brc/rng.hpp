#pragma once

// Seeded randomness with fixed conversions, so results do not depend on the standard
// library's distribution implementations.
//
//   engine        std::mt19937_64 (fully specified by the standard)
//   below(n)      rejection sampling: draw r, reject r >= 2^64 - (2^64 mod n), return r mod n
//   unit()        (r >> 11) * 2^-53, uniform in [0, 1)
//   derive_seed   splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15)

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace brc {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n >= 1.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    bool coin() { return (engine_() >> 63) != 0; }

    /// Fisher-Yates from the back.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace brc
