#include <immintrin.h>

#include <array>
#include <limits>
#include <vector>

#include "brc/kernels.hpp"

namespace brc::kernels::avx2 {

void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out) {
    const std::size_t np = px.size();
    const std::size_t ns = sites.x.size();
    const __m256 vz = _mm256_set1_ps(pz);
    std::size_t i = 0;
    for (; i + 8 <= np; i += 8) {
        const __m256 x = _mm256_loadu_ps(px.data() + i);
        const __m256 y = _mm256_loadu_ps(py.data() + i);
        __m256 best = _mm256_set1_ps(std::numeric_limits<float>::infinity());
        __m256i best_idx = _mm256_setzero_si256();
        for (std::size_t s = 0; s < ns; ++s) {
            const __m256 dx = _mm256_sub_ps(x, _mm256_set1_ps(sites.x[s]));
            const __m256 dy = _mm256_sub_ps(y, _mm256_set1_ps(sites.y[s]));
            const __m256 dz = _mm256_sub_ps(vz, _mm256_set1_ps(sites.z[s]));
            const __m256 xy = _mm256_add_ps(_mm256_mul_ps(dx, dx), _mm256_mul_ps(dy, dy));
            const __m256 d = _mm256_add_ps(xy, _mm256_mul_ps(dz, dz));
            const __m256 lt = _mm256_cmp_ps(d, best, _CMP_LT_OQ);
            best = _mm256_blendv_ps(best, d, lt);
            best_idx = _mm256_blendv_epi8(best_idx, _mm256_set1_epi32(static_cast<int>(s)), _mm256_castps_si256(lt));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), best_idx);
    }
    if (i < np) {
        scalar::nearest_site(px.subspan(i), py.subspan(i), pz, sites, out.subspan(i));
    }
}

void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out) {
    const auto exp = field.exp_table();
    const auto log = field.log_table();
    const std::uint32_t order = field.order();
    const std::size_t n = word.size();
    const std::size_t p = out.size();

    // p accumulators of 8 lanes each.
    std::vector<std::uint32_t> acc(p * 8, 0);
    const __m256i vorder = _mm256_set1_epi32(static_cast<int>(order));
    const __m256i vlimit = _mm256_set1_epi32(static_cast<int>(order - 1));
    const int* exp_base = reinterpret_cast<const int*>(exp.data());
    const int* log_base = reinterpret_cast<const int*>(log.data());

    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(word.data() + i));
        const __m256i zero = _mm256_cmpeq_epi32(w, _mm256_setzero_si256());
        if (_mm256_movemask_epi8(zero) == -1) continue;
        alignas(32) std::array<std::uint32_t, 8> steps;
        for (std::size_t lane = 0; lane < 8; ++lane) {
            steps[lane] = static_cast<std::uint32_t>((n - 1 - (i + lane)) % order);
        }
        const __m256i step = _mm256_load_si256(reinterpret_cast<const __m256i*>(steps.data()));
        __m256i idx = _mm256_i32gather_epi32(log_base, w, 4);
        for (std::size_t j = 0; j < p; ++j) {
            idx = _mm256_add_epi32(idx, step);
            const __m256i wrap = _mm256_cmpgt_epi32(idx, vlimit);
            idx = _mm256_sub_epi32(idx, _mm256_and_si256(wrap, vorder));
            const __m256i v = _mm256_i32gather_epi32(exp_base, idx, 4);
            auto* slot = reinterpret_cast<__m256i*>(acc.data() + 8 * j);
            _mm256_storeu_si256(slot, _mm256_xor_si256(_mm256_loadu_si256(slot), _mm256_andnot_si256(zero, v)));
        }
    }

    for (std::size_t j = 0; j < p; ++j) {
        gf::Element s = 0;
        for (std::size_t lane = 0; lane < 8; ++lane) s ^= acc[8 * j + lane];
        out[j] = s;
    }

    for (; i < n; ++i) {
        if (word[i] == 0) continue;
        const std::uint32_t step = static_cast<std::uint32_t>((n - 1 - i) % order);
        std::uint32_t idx = log[word[i]];
        for (std::size_t j = 0; j < p; ++j) {
            idx += step;
            if (idx >= order) idx -= order;
            out[j] ^= exp[idx];
        }
    }
}

}  // namespace brc::kernels::avx2
