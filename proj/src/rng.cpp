#include "brc/rng.hpp"

namespace brc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ull);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    // 2^64 mod n, computed without 128-bit arithmetic
    const std::uint64_t rem = (0 - n) % n;
    const std::uint64_t limit = 0 - rem;  // 2^64 - rem; 0 means no rejection
    for (;;) {
        const std::uint64_t r = engine_();
        if (rem == 0 || r < limit) return r % n;
    }
}

}  // namespace brc
