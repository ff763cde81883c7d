#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "brc/bits.hpp"

namespace brc::distinct {

class DistinctError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// l strings of m bits each, stored as integers (bit m-1 is the leftmost bit).
using DStrings = std::vector<std::uint64_t>;

/// Smallest m accepted for a given l: replacement strings carry ceil(log2 l)+1 slot bits,
/// ceil(log2 l) index bits and at least one trailing zero.
unsigned min_block_bits(unsigned l) noexcept;

/// Maps l*m-1 bits to l pairwise distinct m-bit strings. Throws DistinctError on bad parameters.
DStrings d_encode(const BitString& u, unsigned l, unsigned m);

/// Inverse of d_encode. Throws DistinctError when the array is not a valid encoder output.
BitString d_decode(const DStrings& strings, unsigned l, unsigned m);

}  // namespace brc::distinct
