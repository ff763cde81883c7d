#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "brc/bits.hpp"

namespace brc::embed {

enum class Mode { normal, stealthy };

struct EmbedParams {
    Mode mode = Mode::normal;
    double x = 0.08;     // normal: layers x, 2x, 3x
    double y = 0.12;     // stealthy: pairs (y - eps, y + eps) and (y, y)
    double eps = 0.02;

    /// Object height per bit: 3x or 2y.
    double pitch() const noexcept { return mode == Mode::normal ? 3 * x : 2 * y; }
};

/// Throws std::invalid_argument for non-positive thicknesses or eps >= y.
void validate(const EmbedParams& p);

/// Layer thicknesses in mm, bottom to top.
using Layers = std::vector<double>;

Layers embed_bits(const BitString& bits, const EmbedParams& p);

/// Multiplies every layer by an independent uniform factor in [1 - delta, 1 + delta].
Layers apply_imperfection(const Layers& layers, double delta, std::uint64_t seed);

/// True iff the noisy ranges [(1-delta)v, (1+delta)v] of x, 2x and 3x are pairwise disjoint.
/// delta is rounded to millionths and compared in integers, so 0.2 itself is decided exactly.
bool intervals_disjoint(double delta);

struct ParseResult {
    std::optional<BitString> bits;
    bool reversed = false;
    std::size_t bad_layer = 0;  // offending layer on failure
    std::string error;
    bool ok() const noexcept { return bits.has_value(); }
};

/// Normal mode: each layer is read as x, 2x or 3x by smallest relative deviation; 3x is 1, an
/// (x, 2x) pair is 0, and a leading (2x, x) pair means the stack is upside down.
/// Stealthy mode: layers pair up; a difference within eps/2 is 1, a rise of more than eps/2 is 0,
/// and a fall marks an upside-down stack.
ParseResult parse_bits(const Layers& layers, const EmbedParams& p);

/// One integer micrometre value per row under a "thickness_um" header.
std::string to_csv(const Layers& layers);
/// Throws std::invalid_argument on malformed input.
Layers from_csv(const std::string& text);

}  // namespace brc::embed
