#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "brc/bits.hpp"
#include "brc/brc.hpp"

namespace brc::channel {

class ChannelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cuts split [0, n) into cuts.size()+1 pieces; every piece is widened by `overlap` bits on each
/// side (clipped to the codeword) and the pieces listed in `hidden` are withheld.
struct BreakPlan {
    std::size_t n = 0;
    std::vector<std::size_t> cuts;    // strictly increasing, each in (0, n)
    std::size_t overlap = 0;
    std::vector<std::size_t> hidden;  // piece indices
    std::uint64_t seed = 0;           // survivor shuffle

    friend bool operator==(const BreakPlan&, const BreakPlan&) = default;
};

/// Realized damage of a plan. s counts codeword positions no surviving piece covers. t counts the
/// cuts that overlap does not repair: a cut is repaired when both neighbouring pieces survive and
/// their shared bits contain a complete MU codeword.
struct Damage {
    std::size_t t = 0;
    std::size_t s = 0;
    friend bool operator==(const Damage&, const Damage&) = default;
};

struct Piece {
    std::size_t begin;
    std::size_t end;
};

/// Throws ChannelError when the plan does not fit a codeword of length n.
void validate(const BreakPlan& plan, std::size_t n);

/// Extents of all pieces, hidden or not, in cut order.
std::vector<Piece> pieces(const BreakPlan& plan);

Damage assess(const BreakPlan& plan, const BrcParams& p);

struct ChannelOutput {
    std::vector<Fragment> fragments;  // shuffled survivors, provenance set
    Damage damage;
};

ChannelOutput apply_channel(const BitString& codeword, const BreakPlan& plan, const BrcParams& p);

/// Random plan whose damage stays within (t, s). Throws ChannelError when (t, s) is over budget.
BreakPlan random_adversary(const BrcParams& p, std::size_t t, std::size_t s, std::uint64_t seed);

/// Deterministic plan: cuts inside redundancy packets first, then inside information MU codewords;
/// hides a suffix of whole MU codewords when the loss budget allows one.
BreakPlan greedy_adversary(const BrcParams& p, std::size_t t, std::size_t s);

}  // namespace brc::channel
