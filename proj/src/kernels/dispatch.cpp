#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "brc/kernels.hpp"

namespace brc::kernels {

namespace {

// -1: auto-detect; otherwise the forced Isa value.
std::atomic<int> g_forced{-1};

Isa detect() noexcept {
    if (const char* env = std::getenv("BRC_SIMD"); env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (isa_available(Isa::avx2)) return Isa::avx2;
    return Isa::scalar;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#ifdef BRC_HAVE_AVX2_KERNELS
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Isa>(forced);
    static const Isa detected = detect();
    return detected;
}

void force_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(*isa));
    g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out) {
    if (sites.x.empty()) throw std::invalid_argument("nearest_site needs at least one site");
#ifdef BRC_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::avx2) return avx2::nearest_site(px, py, pz, sites, out);
#endif
    scalar::nearest_site(px, py, pz, sites, out);
}

void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out) {
#ifdef BRC_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::avx2) return avx2::syndromes(word, field, out);
#endif
    scalar::syndromes(word, field, out);
}

}  // namespace brc::kernels
