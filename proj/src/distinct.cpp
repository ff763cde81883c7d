#include "brc/distinct.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace brc::distinct {

namespace {

struct Layout {
    unsigned l;
    unsigned m;
    unsigned idx_bits;   // ceil(log2 l)
    unsigned slot_bits;  // ceil(log2 l) + 1
    unsigned slot_shift;
    unsigned idx_shift;
};

Layout make_layout(unsigned l, unsigned m) {
    if (l < 2) throw DistinctError("need at least two blocks");
    if (m > 63) throw DistinctError("block length exceeds 63 bits");
    if (m < min_block_bits(l)) {
        throw DistinctError("block length " + std::to_string(m) + " too short for " + std::to_string(l) +
                            " blocks (need " + std::to_string(min_block_bits(l)) + ")");
    }
    const unsigned b = ceil_log2(l);
    return {l, m, b, b + 1, m - (b + 1), m - (2 * b + 1)};
}

bool slot_occupied(const DStrings& entries, const Layout& lay, std::uint64_t slot) {
    return std::any_of(entries.begin(), entries.end(),
                       [&](std::uint64_t e) { return (e >> lay.slot_shift) == slot; });
}

}  // namespace

unsigned min_block_bits(unsigned l) noexcept { return 2 * ceil_log2(l) + 2; }

DStrings d_encode(const BitString& u, unsigned l, unsigned m) {
    const Layout lay = make_layout(l, m);
    if (u.size() + 1 != static_cast<std::size_t>(l) * m) {
        throw DistinctError("input must have l*m-1 = " + std::to_string(l * m - 1) + " bits");
    }
    BitString w = u;
    w.push_back(1);
    DStrings entries(l);
    for (unsigned a = 0; a < l; ++a) entries[a] = w.to_uint(static_cast<std::size_t>(a) * m, m);

    std::size_t i = 0;
    std::size_t i_end = l - 1;
    while (i < i_end) {
        std::size_t j = i + 1;
        while (j <= i_end) {
            if (entries[i] != entries[j]) {
                ++j;
                continue;
            }
            entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(j));
            // j-th available slot, slots numbered from 1.
            std::uint64_t slot = 0;
            for (std::size_t found = 0; found < j;) {
                ++slot;
                if (!slot_occupied(entries, lay, slot)) ++found;
            }
            const std::uint64_t fresh = (slot << lay.slot_shift) | (static_cast<std::uint64_t>(i) << lay.idx_shift);
            // A fresh string owns an unoccupied slot prefix, so it collides with nothing.
            if (slot >= (std::uint64_t{1} << lay.slot_bits) ||
                std::find(entries.begin(), entries.end(), fresh) != entries.end()) {
                throw std::logic_error("d_encode produced a colliding replacement string");
            }
            entries.push_back(fresh);
            --i_end;
        }
        ++i;
    }
    return entries;
}

BitString d_decode(const DStrings& strings, unsigned l, unsigned m) {
    const Layout lay = make_layout(l, m);
    if (strings.size() != l) throw DistinctError("expected " + std::to_string(l) + " strings");
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    DStrings entries = strings;
    for (auto e : entries) {
        if (e & ~mask) throw DistinctError("string wider than block length");
    }

    for (unsigned rounds = 0; (entries.back() & 1u) == 0; ++rounds) {
        if (rounds + 1 >= l) throw DistinctError("too many replacement strings");
        const std::uint64_t last = entries.back();
        entries.pop_back();
        const std::uint64_t slot = last >> lay.slot_shift;
        const std::uint64_t i = (last >> lay.idx_shift) & ((std::uint64_t{1} << lay.idx_bits) - 1);
        if (slot == 0 || slot_occupied(entries, lay, slot)) throw DistinctError("replacement slot is not available");
        std::uint64_t occupied = 0;
        for (std::uint64_t s = 1; s < slot; ++s) occupied += slot_occupied(entries, lay, s) ? 1 : 0;
        const std::uint64_t j = slot - occupied;
        if (i >= entries.size() || j <= i || j > entries.size()) throw DistinctError("replacement indices out of range");
        const std::uint64_t copy = entries[i];
        entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(j), copy);
    }

    BitString w;
    for (auto e : entries) w.append_uint(e, m);
    return w.slice(0, w.size() - 1);
}

}  // namespace brc::distinct
