#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant; the variant is chosen once at runtime. Both produce
// bit-identical results (tests/test_kernels.cpp checks this on random inputs).

#include <cstdint>
#include <optional>
#include <span>

#include "brc/gf.hpp"

namespace brc::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;

/// Best available ISA, unless overridden by force_isa() or the BRC_SIMD=scalar environment variable.
Isa active_isa() noexcept;
/// Test hook: pin dispatch to `isa` (must be available), or restore auto-detection with nullopt.
void force_isa(std::optional<Isa> isa);

/// Candidate sites in structure-of-arrays layout.
struct Sites {
    std::span<const float> x;
    std::span<const float> y;
    std::span<const float> z;
};

/// For each point (px[i], py[i], pz) writes the index of the nearest site by squared Euclidean
/// distance, computed as (dx*dx + dy*dy) + dz*dz in single precision. Ties go to the lower index.
/// Requires at least one site.
void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out);

/// Power-sum syndromes of a Reed-Solomon word whose symbol i is the coefficient of
/// X^(N-1-i): out[j-1] = sum_i word[i] * x^(j*(N-1-i)), j = 1..out.size().
void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out);

namespace scalar {
void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out);
void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define BRC_HAVE_AVX2_KERNELS 1
namespace avx2 {
void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out);
void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out);
}  // namespace avx2
#endif

}  // namespace brc::kernels
