#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "brc/bits.hpp"

namespace brc::constrained {

/// Version tag for the constrained coding scheme (enumerative RLL, 0^P 1 sync). Part of the wire format.
inline constexpr unsigned kCoderVersion = 1;

/// Exact string counts. Lengths are capped at kMaxLength so counts fit.
using Count = unsigned __int128;
inline constexpr std::size_t kMaxLength = 127;

class ConstraintError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Number of binary strings of `length` bits with no zero-run longer than `run_limit`,
/// optionally forced to start with a 1.
Count rll_count(std::size_t length, unsigned run_limit, bool leading_one);

/// True iff `bits` has no zero-run longer than run_limit (and starts with 1 when required).
bool satisfies(std::span<const std::uint8_t> bits, unsigned run_limit, bool leading_one) noexcept;

/// Enumerative run-length-limited map from in_len-bit payloads to out_len-bit words that start
/// with 1 and have no zero-run longer than run_limit. Payload value r maps to the r-th valid
/// word in lexicographic order.
class RllProfile {
public:
    /// Throws ConstraintError when fewer than 2^in_len valid words exist.
    RllProfile(unsigned in_len, unsigned out_len, unsigned run_limit);

    unsigned in_len() const noexcept { return in_len_; }
    unsigned out_len() const noexcept { return out_len_; }
    unsigned run_limit() const noexcept { return run_limit_; }

    BitString encode(const BitString& payload) const;
    /// nullopt when the word violates the constraints or ranks beyond the payload space.
    std::optional<BitString> decode(std::span<const std::uint8_t> word) const;

    Count unrank_limit() const noexcept { return Count{1} << in_len_; }
    BitString unrank(Count rank) const;
    std::optional<Count> rank(std::span<const std::uint8_t> word) const;

private:
    // completions(r, z): ways to fill r more bits when the current trailing zero-run is z.
    Count completions(std::size_t r, unsigned z) const noexcept { return table_[r * (run_limit_ + 1) + z]; }

    unsigned in_len_;
    unsigned out_len_;
    unsigned run_limit_;
    std::vector<Count> table_;
};

/// Redundancy packet profile: 4m+4 bits -> 4m+11 bits, zero-runs at most ceil(log2 m).
RllProfile packet_profile(unsigned m);

struct MuHit {
    std::size_t offset;   // start of the sync run
    std::uint64_t value;  // decoded m-bit string
    friend bool operator==(const MuHit&, const MuHit&) = default;
};

/// Mutually uncorrelated codewords 0^P 1 rll(u), P = ceil(log2 m) + 1, total m + ceil(log2 m) + 4 bits.
class MuLayout {
public:
    explicit MuLayout(unsigned m);

    unsigned m() const noexcept { return m_; }
    unsigned sync_len() const noexcept { return sync_len_; }
    unsigned length() const noexcept { return sync_len_ + 1 + payload_.out_len(); }
    const RllProfile& payload() const noexcept { return payload_; }

    BitString encode(std::uint64_t u) const;
    BitString encode(const BitString& u) const;
    /// Decodes one full codeword window of length() bits.
    std::optional<std::uint64_t> decode(std::span<const std::uint8_t> window) const;

    /// All decodable codewords in `bits`, anchored at zero-runs of length >= P followed by a 1.
    std::vector<MuHit> scan(std::span<const std::uint8_t> bits) const;

private:
    unsigned m_;
    unsigned sync_len_;
    RllProfile payload_;
};

}  // namespace brc::constrained
