#include "brc/channel.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "brc/rng.hpp"

namespace brc::channel {

namespace {

bool contains_mu(const BrcParams& p, std::size_t lo, std::size_t hi) {
    for (unsigned j = 0; j < p.l; ++j) {
        const std::size_t at = p.unit_offset(j);
        if (at >= lo && at + p.mu_len <= hi) return true;
        if (at >= hi) break;
    }
    return false;
}

}  // namespace

void validate(const BreakPlan& plan, std::size_t n) {
    if (plan.n != n) throw ChannelError("plan is for n=" + std::to_string(plan.n) + ", codeword has " + std::to_string(n));
    for (std::size_t i = 0; i < plan.cuts.size(); ++i) {
        if (plan.cuts[i] == 0 || plan.cuts[i] >= n) throw ChannelError("cut outside (0, n)");
        if (i > 0 && plan.cuts[i] <= plan.cuts[i - 1]) throw ChannelError("cuts must be strictly increasing");
    }
    for (std::size_t h : plan.hidden) {
        if (h > plan.cuts.size()) throw ChannelError("hidden piece index out of range");
    }
}

std::vector<Piece> pieces(const BreakPlan& plan) {
    std::vector<Piece> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= plan.cuts.size(); ++i) {
        const std::size_t stop = i < plan.cuts.size() ? plan.cuts[i] : plan.n;
        const std::size_t b = start > plan.overlap ? start - plan.overlap : 0;
        const std::size_t e = std::min(plan.n, stop + plan.overlap);
        out.push_back({b, e});
        start = stop;
    }
    return out;
}

Damage assess(const BreakPlan& plan, const BrcParams& p) {
    validate(plan, p.n);
    const auto ps = pieces(plan);
    std::vector<std::uint8_t> gone(ps.size(), 0);
    for (std::size_t h : plan.hidden) gone[h] = 1;

    Damage d;
    std::vector<std::uint8_t> covered(plan.n, 0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (gone[i]) continue;
        std::fill(covered.begin() + static_cast<std::ptrdiff_t>(ps[i].begin),
                  covered.begin() + static_cast<std::ptrdiff_t>(ps[i].end), 1);
    }
    d.s = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 0));
    for (std::size_t c = 0; c < plan.cuts.size(); ++c) {
        const Piece& a = ps[c];
        const Piece& b = ps[c + 1];
        const bool repaired = !gone[c] && !gone[c + 1] && contains_mu(p, b.begin, a.end);
        if (!repaired) ++d.t;
    }
    return d;
}

ChannelOutput apply_channel(const BitString& codeword, const BreakPlan& plan, const BrcParams& p) {
    if (codeword.size() != p.n) throw ChannelError("codeword length does not match parameters");
    ChannelOutput out;
    out.damage = assess(plan, p);
    const auto ps = pieces(plan);
    std::vector<std::uint8_t> gone(ps.size(), 0);
    for (std::size_t h : plan.hidden) gone[h] = 1;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (gone[i]) continue;
        out.fragments.push_back({codeword.slice(ps[i].begin, ps[i].end - ps[i].begin),
                                 std::make_pair(ps[i].begin, ps[i].end)});
    }
    Rng rng(derive_seed(plan.seed, 0));
    rng.shuffle(out.fragments);
    return out;
}

BreakPlan random_adversary(const BrcParams& p, std::size_t t, std::size_t s, std::uint64_t seed) {
    if (!budget_ok(p, t, s)) {
        throw ChannelError("(t=" + std::to_string(t) + ", s=" + std::to_string(s) + ") exceeds the budget");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        BreakPlan plan;
        plan.n = p.n;
        plan.seed = seed;
        plan.overlap = rng.coin() ? 0 : static_cast<std::size_t>(rng.below(2 * p.mu_len + 1));
        std::size_t count = t;
        if (rng.coin()) count = static_cast<std::size_t>(rng.below(t + (plan.overlap > 0 ? 4 : 1)));
        count = std::min(count, p.n - 1);
        std::set<std::size_t> cuts;
        while (cuts.size() < count) cuts.insert(static_cast<std::size_t>(rng.between(1, p.n - 1)));
        plan.cuts.assign(cuts.begin(), cuts.end());

        if (assess(plan, p).t > t) continue;
        std::vector<std::size_t> order(plan.cuts.size() + 1);
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t idx : order) {
            if (plan.hidden.size() + 1 >= order.size()) break;
            plan.hidden.push_back(idx);
            const Damage d = assess(plan, p);
            if (d.t > t || d.s > s) plan.hidden.pop_back();
        }
        std::sort(plan.hidden.begin(), plan.hidden.end());
        return plan;
    }
    BreakPlan plan;
    plan.n = p.n;
    plan.seed = seed;
    return plan;
}

BreakPlan greedy_adversary(const BrcParams& p, std::size_t t, std::size_t s) {
    if (!budget_ok(p, t, s)) {
        throw ChannelError("(t=" + std::to_string(t) + ", s=" + std::to_string(s) + ") exceeds the budget");
    }
    BreakPlan plan;
    plan.n = p.n;
    std::size_t tail = 0;
    if (t >= 1 && s >= p.mu_len) {
        // Never reach back past the last packet, and leave one information unit visible.
        const std::size_t units = std::min<std::size_t>(s / p.mu_len, p.l - p.alpha - 1);
        tail = units * p.mu_len;
    }
    std::size_t left = t;
    std::vector<std::size_t> cuts;
    if (tail > 0) {
        cuts.push_back(p.n - tail);
        --left;
    }
    for (unsigned i = 0; i < p.alpha && left > 0; ++i, --left) {
        cuts.push_back(p.unit_offset(i) + p.mu_len + p.packet_len / 2);
    }
    for (unsigned j = p.alpha + 1; j < p.l && left > 0; j += 2) {
        const std::size_t at = p.unit_offset(j) + p.mu_len / 2;
        if (tail > 0 && at >= p.n - tail) break;
        cuts.push_back(at);
        --left;
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    plan.cuts = cuts;
    if (tail > 0) plan.hidden.push_back(plan.cuts.size());
    return plan;
}

}  // namespace brc::channel
