#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brc/bits.hpp"
#include "brc/distinct.hpp"

namespace brc {

class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest payload width accepted by derive_params (RS symbols are m+1 <= 17 bits).
inline constexpr unsigned kMaxM = 16;
/// Largest payload width considered by search_params and fit_params.
inline constexpr unsigned kSearchMaxM = 15;

/// Validated (alpha, l, m) with every derived length.
struct BrcParams {
    unsigned alpha = 0;
    unsigned l = 0;
    unsigned m = 0;
    std::size_t k = 0;           // information bits, (l - alpha) * m - 1
    std::size_t n = 0;           // codeword bits
    unsigned sync_len = 0;       // ceil(log2 m) + 1
    unsigned mu_len = 0;         // m + ceil(log2 m) + 4
    unsigned packet_len = 0;     // 4m + 11
    unsigned symbol_bits = 0;    // m + 1
    std::size_t info_symbols = 0;    // 2^m
    std::size_t parity_symbols = 0;  // 4 alpha

    /// Bit offset of unit i (its MU codeword) inside the codeword.
    std::size_t unit_offset(unsigned i) const noexcept {
        return static_cast<std::size_t>(i) * mu_len + static_cast<std::size_t>(std::min(i, alpha)) * packet_len;
    }

    friend bool operator==(const BrcParams&, const BrcParams&) = default;
};

/// Every constraint (alpha, l, m) violates, one message each; empty when valid.
std::vector<std::string> param_violations(unsigned alpha, unsigned l, unsigned m);

/// Throws ParamError listing all violations.
BrcParams derive_params(unsigned alpha, unsigned l, unsigned m);

/// Smallest-n parameters with (l - alpha) * m = k + 1 exactly; ties go to the smaller m.
/// Throws ParamError naming the nearest feasible k when none exists.
BrcParams search_params(std::size_t k, unsigned alpha);

/// Smallest-n parameters with (l - alpha) * m - 1 >= k; the message is zero padded on the left.
BrcParams fit_params(std::size_t k, unsigned alpha);

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// k / n in lowest terms.
Rational code_rate(const BrcParams& p);
/// 1 / (t + 1).
Rational cpc_rate_bound(std::size_t t);

/// search_params(k, alpha).n * pitch_mm, rounded to the nanometre.
double min_dimension(std::size_t k, unsigned alpha, double pitch_mm);

/// 4t + 2s / mu_len <= 4 alpha, in integers.
bool budget_ok(const BrcParams& p, std::size_t t, std::size_t s) noexcept;

/// next[key] for every m-bit key; keys off the chain map to themselves.
using NextMap = std::vector<std::uint64_t>;

NextMap build_next(const distinct::DStrings& d, unsigned m);
/// Walks `steps` strings from `head`. nullopt when the walk repeats a string, leaves the chain
/// early, or does not end at a fixed point.
std::optional<distinct::DStrings> next_to_dstrings(const NextMap& next, std::uint64_t head, unsigned steps);

BitString encode(const BitString& w, const BrcParams& p);

struct Fragment {
    BitString bits;
    /// Codeword interval [first, second) the bits came from. Informational only.
    std::optional<std::pair<std::size_t, std::size_t>> provenance;
    friend bool operator==(const Fragment&, const Fragment&) = default;
};

/// Merges fragments that share a complete MU codeword and agree on their overlap, to a fixed point.
/// Output sorted by bits.
std::vector<Fragment> preprocess(std::vector<Fragment> fragments, const BrcParams& p);

struct DecodeReport {
    std::optional<BitString> message;
    /// Failure stage; empty on success.
    std::string stage;
    std::string detail;

    std::size_t fragments = 0;          // after preprocessing
    std::size_t mu_codewords = 0;
    std::size_t packets_recovered = 0;
    std::size_t parity_erasures = 0;    // unrecovered redundancy strings
    std::size_t info_erasures = 0;
    std::size_t rs_errors = 0;
    std::size_t candidates = 0;
    /// Links read directly from fragments, (key, value).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> links;

    bool ok() const noexcept { return message.has_value(); }
};

/// Recovers the k-bit message from unordered fragments (runs preprocess first).
DecodeReport decode(const std::vector<Fragment>& fragments, const BrcParams& p);

}  // namespace brc
