#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "brc/gf.hpp"

namespace brc::rs {

using gf::Element;

class RsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Received word: symbol values plus the indices of erased symbols. The value stored at an
/// erased index is ignored by the decoder.
struct RsWord {
    std::vector<Element> symbols;
    std::vector<std::size_t> erasures;
};

struct DecodeResult {
    /// Corrected codeword (information symbols followed by parity); empty on failure.
    std::vector<Element> codeword;
    std::size_t errors = 0;
    std::size_t erasures = 0;
    /// Empty on success, otherwise the reason the decoder gave up.
    std::string failure;

    bool ok() const noexcept { return failure.empty(); }
};

/// Shortened narrow-sense systematic Reed-Solomon code over GF(2^z) with generator
/// g(X) = prod_{j=1..parity_len} (X - x^j). Symbol i of a codeword is the coefficient of X^(N-1-i),
/// so the information symbols come first.
class RsCode {
public:
    RsCode(gf::Field field, std::size_t info_len, std::size_t parity_len);

    const gf::Field& field() const noexcept { return field_; }
    std::size_t info_len() const noexcept { return info_len_; }
    std::size_t parity_len() const noexcept { return parity_len_; }
    std::size_t length() const noexcept { return info_len_ + parity_len_; }
    /// Generator coefficients, index k = coefficient of X^k; monic of degree parity_len.
    const std::vector<Element>& generator() const noexcept { return generator_; }

    /// Parity symbols for `info` (length info_len).
    std::vector<Element> encode(std::span<const Element> info) const;

    /// Syndromes S_1..S_parity_len of a full-length word.
    std::vector<Element> syndromes(std::span<const Element> word) const;

    /// Errors-and-erasures decoding: succeeds whenever 2*errors + erasures <= parity_len.
    DecodeResult decode(const RsWord& received) const;

    /// Same as decode(), with the syndromes of `received.symbols` (erased positions read as zero)
    /// supplied by the caller. Lets callers that try several variants of one word update the
    /// syndromes incrementally.
    DecodeResult decode_with_syndromes(const RsWord& received, std::span<const Element> syndromes) const;

    /// x^(j*(N-1-i)) for j = 1..parity_len: the syndrome contribution of a unit value at position i.
    std::vector<Element> syndrome_column(std::size_t position) const;

private:
    gf::Field field_;
    std::size_t info_len_;
    std::size_t parity_len_;
    std::vector<Element> generator_;
};

}  // namespace brc::rs
