#include "brc/constrained.hpp"

#include <string>

namespace brc::constrained {

namespace {

std::vector<Count> completion_table(std::size_t length, unsigned run_limit) {
    const std::size_t width = run_limit + 1;
    std::vector<Count> t((length + 1) * width, 0);
    for (unsigned z = 0; z <= run_limit; ++z) t[z] = 1;
    for (std::size_t r = 1; r <= length; ++r) {
        for (unsigned z = 0; z <= run_limit; ++z) {
            Count c = t[(r - 1) * width];  // place a 1
            if (z + 1 <= run_limit) c += t[(r - 1) * width + z + 1];
            t[r * width + z] = c;
        }
    }
    return t;
}

Count to_count(const BitString& bits) {
    Count v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) v = (v << 1) | bits[i];
    return v;
}

}  // namespace

Count rll_count(std::size_t length, unsigned run_limit, bool leading_one) {
    if (length == 0) throw ConstraintError("rll_count: length must be at least 1");
    if (length > kMaxLength) throw ConstraintError("rll_count: length exceeds " + std::to_string(kMaxLength));
    const auto t = completion_table(length, run_limit);
    const std::size_t width = run_limit + 1;
    return leading_one ? t[(length - 1) * width] : t[length * width];
}

bool satisfies(std::span<const std::uint8_t> bits, unsigned run_limit, bool leading_one) noexcept {
    if (leading_one && (bits.empty() || bits[0] == 0)) return false;
    unsigned run = 0;
    for (auto b : bits) {
        run = b ? 0 : run + 1;
        if (run > run_limit) return false;
    }
    return true;
}

RllProfile::RllProfile(unsigned in_len, unsigned out_len, unsigned run_limit)
    : in_len_(in_len), out_len_(out_len), run_limit_(run_limit) {
    if (out_len_ == 0 || out_len_ > kMaxLength) throw ConstraintError("RLL output length out of range");
    if (in_len_ >= 127) throw ConstraintError("RLL input length out of range");
    table_ = completion_table(out_len_, run_limit_);
    if (rll_count(out_len_, run_limit_, true) < unrank_limit()) {
        throw ConstraintError("RLL profile " + std::to_string(in_len_) + "->" + std::to_string(out_len_) +
                              " with run limit " + std::to_string(run_limit_) + " is infeasible");
    }
}

BitString RllProfile::unrank(Count rank) const {
    BitString out(out_len_);
    out[0] = 1;
    unsigned z = 0;
    for (std::size_t pos = 1; pos < out_len_; ++pos) {
        const std::size_t rem = out_len_ - pos - 1;
        if (z + 1 <= run_limit_) {
            const Count zeros = completions(rem, z + 1);
            if (rank < zeros) {
                out[pos] = 0;
                ++z;
                continue;
            }
            rank -= zeros;
        }
        out[pos] = 1;
        z = 0;
    }
    return out;
}

std::optional<Count> RllProfile::rank(std::span<const std::uint8_t> word) const {
    if (word.size() != out_len_ || !satisfies(word, run_limit_, true)) return std::nullopt;
    Count r = 0;
    unsigned z = 0;
    for (std::size_t pos = 1; pos < out_len_; ++pos) {
        const std::size_t rem = out_len_ - pos - 1;
        if (word[pos]) {
            if (z + 1 <= run_limit_) r += completions(rem, z + 1);
            z = 0;
        } else {
            ++z;
        }
    }
    return r;
}

BitString RllProfile::encode(const BitString& payload) const {
    if (payload.size() != in_len_) throw ConstraintError("RLL payload length mismatch");
    return unrank(to_count(payload));
}

std::optional<BitString> RllProfile::decode(std::span<const std::uint8_t> word) const {
    const auto r = rank(word);
    if (!r || *r >= unrank_limit()) return std::nullopt;
    BitString out(in_len_);
    Count v = *r;
    for (std::size_t i = in_len_; i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(v & 1u);
        v >>= 1;
    }
    return out;
}

RllProfile packet_profile(unsigned m) { return RllProfile(4 * m + 4, 4 * m + 11, ceil_log2(m)); }

MuLayout::MuLayout(unsigned m) : m_(m), sync_len_(ceil_log2(m) + 1), payload_(m, m + 2, ceil_log2(m)) {
    if (m < 2 || m > 60) throw ConstraintError("MU payload length out of range");
}

BitString MuLayout::encode(std::uint64_t u) const { return encode(BitString::from_uint(u, m_)); }

BitString MuLayout::encode(const BitString& u) const {
    BitString out(sync_len_, 0);
    out.push_back(1);
    out.append(payload_.encode(u));
    return out;
}

std::optional<std::uint64_t> MuLayout::decode(std::span<const std::uint8_t> window) const {
    if (window.size() != length()) return std::nullopt;
    for (unsigned i = 0; i < sync_len_; ++i) {
        if (window[i] != 0) return std::nullopt;
    }
    if (window[sync_len_] != 1) return std::nullopt;
    const auto u = payload_.decode(window.subspan(sync_len_ + 1));
    if (!u) return std::nullopt;
    return u->to_uint();
}

std::vector<MuHit> MuLayout::scan(std::span<const std::uint8_t> bits) const {
    std::vector<MuHit> hits;
    const std::size_t len = length();
    std::size_t run = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == 0) {
            ++run;
            continue;
        }
        if (run >= sync_len_) {
            const std::size_t start = q - sync_len_;
            if (start + len <= bits.size()) {
                const auto payload = payload_.decode(bits.subspan(q + 1, payload_.out_len()));
                if (payload) hits.push_back({start, payload->to_uint()});
            }
        }
        run = 0;
    }
    return hits;
}

}  // namespace brc::constrained
