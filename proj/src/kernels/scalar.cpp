#include <limits>

#include "brc/kernels.hpp"

namespace brc::kernels::scalar {

void nearest_site(std::span<const float> px, std::span<const float> py, float pz, Sites sites,
                  std::span<std::int32_t> out) {
    const std::size_t ns = sites.x.size();
    for (std::size_t i = 0; i < px.size(); ++i) {
        float best = std::numeric_limits<float>::infinity();
        std::int32_t best_idx = 0;
        for (std::size_t s = 0; s < ns; ++s) {
            const float dx = px[i] - sites.x[s];
            const float dy = py[i] - sites.y[s];
            const float dz = pz - sites.z[s];
            const float xy = dx * dx + dy * dy;
            const float d = xy + dz * dz;
            if (d < best) {
                best = d;
                best_idx = static_cast<std::int32_t>(s);
            }
        }
        out[i] = best_idx;
    }
}

void syndromes(std::span<const gf::Element> word, const gf::Field& field, std::span<gf::Element> out) {
    const auto exp = field.exp_table();
    const auto log = field.log_table();
    const std::uint32_t order = field.order();
    const std::size_t n = word.size();
    for (auto& s : out) s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (word[i] == 0) continue;
        const std::uint32_t step = static_cast<std::uint32_t>((n - 1 - i) % order);
        std::uint32_t idx = log[word[i]];
        for (std::size_t j = 0; j < out.size(); ++j) {
            idx += step;
            if (idx >= order) idx -= order;
            out[j] ^= exp[idx];
        }
    }
}

}  // namespace brc::kernels::scalar
