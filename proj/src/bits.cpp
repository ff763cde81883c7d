#include "brc/bits.hpp"

#include <stdexcept>

namespace brc {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
}

BitString BitString::parse(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') {
            out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
        } else {
            throw std::invalid_argument("bit string contains non-binary character '" + std::string(1, c) + "'");
        }
    }
    return out;
}

BitString BitString::from_uint(std::uint64_t value, unsigned width) {
    BitString out;
    out.append_uint(value, width);
    return out;
}

BitString BitString::from_hex(std::string_view hex) {
    BitString out;
    for (char c : hex) {
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw std::invalid_argument("invalid hex digit '" + std::string(1, c) + "'");
        out.append_uint(v, 4);
    }
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::append_uint(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
        bits_.push_back(i < 64 ? static_cast<std::uint8_t>((value >> i) & 1u) : 0);
    }
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos > size() || len > size() - pos) throw std::out_of_range("BitString::slice out of range");
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
}

std::uint64_t BitString::to_uint(std::size_t pos, unsigned width) const {
    if (width > 64) throw std::invalid_argument("to_uint width exceeds 64");
    if (pos > size() || width > size() - pos) throw std::out_of_range("BitString::to_uint out of range");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
    return v;
}

std::string BitString::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

std::string BitString::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t pad = (4 - size() % 4) % 4;
    std::string s;
    unsigned acc = 0;
    unsigned count = static_cast<unsigned>(pad);
    for (std::uint8_t b : bits_) {
        acc = (acc << 1) | b;
        if (++count == 4) {
            s.push_back(digits[acc]);
            acc = 0;
            count = 0;
        }
    }
    return s;
}

BitString concat(const BitString& a, const BitString& b) {
    BitString out = a;
    out.append(b);
    return out;
}

std::vector<std::uint8_t> pack_bits(const BitString& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8) throw std::invalid_argument("not enough bytes for bit count");
    BitString out(nbits);
    for (std::size_t i = 0; i < nbits; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return out;
}

unsigned ceil_log2(std::uint64_t x) noexcept {
    unsigned r = 0;
    while ((std::uint64_t{1} << r) < x) ++r;
    return r;
}

}  // namespace brc
