#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace brc {

/// Sequence of bits, one bit per byte. Index 0 is the first (leftmost) bit.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, std::uint8_t fill = 0) : bits_(n, fill ? 1 : 0) {}
    explicit BitString(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters. Throws std::invalid_argument otherwise.
    static BitString parse(std::string_view text);

    /// `width` bits of `value`, most significant first.
    static BitString from_uint(std::uint64_t value, unsigned width);

    /// Hex digits, 4 bits per digit, most significant first.
    static BitString from_hex(std::string_view hex);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    std::uint8_t& operator[](std::size_t i) noexcept { return bits_[i]; }

    void push_back(std::uint8_t b) { bits_.push_back(b ? 1 : 0); }
    void append(const BitString& other);
    void append_uint(std::uint64_t value, unsigned width);

    BitString slice(std::size_t pos, std::size_t len) const;

    /// Integer value of bits [pos, pos+width), most significant first. width <= 64.
    std::uint64_t to_uint(std::size_t pos, unsigned width) const;
    std::uint64_t to_uint() const { return to_uint(0, static_cast<unsigned>(size())); }

    std::string to_string() const;
    /// Left-pads with zero bits to a multiple of four.
    std::string to_hex() const;

    std::span<const std::uint8_t> view() const noexcept { return bits_; }
    const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

BitString concat(const BitString& a, const BitString& b);

/// Bytes with bits packed most significant first; the final byte is zero padded.
std::vector<std::uint8_t> pack_bits(const BitString& bits);
BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits);

/// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(std::uint64_t x) noexcept;

}  // namespace brc
