#include "brc/brc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "brc/constrained.hpp"
#include "brc/gf.hpp"
#include "brc/rs.hpp"

namespace brc {

namespace {

std::size_t codeword_length(unsigned alpha, unsigned l, unsigned m) {
    return static_cast<std::size_t>(l) * (m + ceil_log2(m) + 4) + static_cast<std::size_t>(alpha) * (4 * m + 11);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

std::optional<BrcParams> best_of(std::size_t k, unsigned alpha, bool exact) {
    std::optional<BrcParams> best;
    for (unsigned m = 1; m <= kSearchMaxM; ++m) {
        std::size_t groups = (k + 1 + m - 1) / m;
        if (exact && groups * m != k + 1) continue;
        const std::size_t l = groups + alpha;
        if (l > std::numeric_limits<unsigned>::max()) continue;
        if (!param_violations(alpha, static_cast<unsigned>(l), m).empty()) continue;
        const BrcParams p = derive_params(alpha, static_cast<unsigned>(l), m);
        if (!best || p.n < best->n) best = p;
    }
    return best;
}

}  // namespace

std::vector<std::string> param_violations(unsigned alpha, unsigned l, unsigned m) {
    std::vector<std::string> v;
    if (alpha < 1) v.push_back("alpha must be at least 1");
    if (l <= alpha + 1) {
        v.push_back("l must exceed alpha+1 (l=" + std::to_string(l) + ", alpha=" + std::to_string(alpha) + ")");
    }
    if (m < 2 || m > kMaxM) {
        v.push_back("m must lie in [2, " + std::to_string(kMaxM) + "]");
        return v;
    }
    if (l >= 2) {
        const unsigned need = ceil_log2(static_cast<std::uint64_t>(l) * l) + 2;
        if (m < need) {
            v.push_back("m < ceil(2 log2 l)+2 = " + std::to_string(need));
        }
        const unsigned need_blocks = distinct::min_block_bits(l);
        if (m < need_blocks && m >= need) {
            v.push_back("m < 2 ceil(log2 l)+2 = " + std::to_string(need_blocks) +
                        " (replacement strings need a trailing zero)");
        }
    }
    if (alpha >= 1 && 4ull * alpha > (1ull << m) - 1) {
        v.push_back("4 alpha parity symbols exceed the Reed-Solomon length limit");
    }
    try {
        constrained::MuLayout mu(m);
        constrained::packet_profile(m);
    } catch (const constrained::ConstraintError& e) {
        v.push_back(e.what());
    }
    return v;
}

BrcParams derive_params(unsigned alpha, unsigned l, unsigned m) {
    const auto v = param_violations(alpha, l, m);
    if (!v.empty()) throw ParamError("invalid parameters (alpha=" + std::to_string(alpha) + ", l=" + std::to_string(l) +
                                     ", m=" + std::to_string(m) + "): " + join(v));
    BrcParams p;
    p.alpha = alpha;
    p.l = l;
    p.m = m;
    p.k = static_cast<std::size_t>(l - alpha) * m - 1;
    p.n = codeword_length(alpha, l, m);
    p.sync_len = ceil_log2(m) + 1;
    p.mu_len = m + ceil_log2(m) + 4;
    p.packet_len = 4 * m + 11;
    p.symbol_bits = m + 1;
    p.info_symbols = std::size_t{1} << m;
    p.parity_symbols = 4 * static_cast<std::size_t>(alpha);
    return p;
}

BrcParams search_params(std::size_t k, unsigned alpha) {
    if (k < 1) throw ParamError("k must be at least 1");
    if (alpha < 1) throw ParamError("alpha must be at least 1");
    if (auto p = best_of(k, alpha, true)) return *p;
    for (std::size_t d = 1; d <= k + 4096; ++d) {
        for (std::size_t cand : {k >= d ? k - d : 0, k + d}) {
            if (cand >= 1 && best_of(cand, alpha, true)) {
                throw ParamError("no feasible (l, m) for k=" + std::to_string(k) + ", alpha=" + std::to_string(alpha) +
                                 "; nearest feasible k is " + std::to_string(cand));
            }
        }
    }
    throw ParamError("no feasible (l, m) for k=" + std::to_string(k));
}

BrcParams fit_params(std::size_t k, unsigned alpha) {
    if (alpha < 1) throw ParamError("alpha must be at least 1");
    if (auto p = best_of(k, alpha, false)) return *p;
    throw ParamError("no parameters hold " + std::to_string(k) + " bits at alpha=" + std::to_string(alpha));
}

Rational code_rate(const BrcParams& p) {
    const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(p.k, p.n);
    return {p.k / g, p.n / g};
}

Rational cpc_rate_bound(std::size_t t) { return {1, static_cast<std::uint64_t>(t) + 1}; }

double min_dimension(std::size_t k, unsigned alpha, double pitch_mm) {
    if (!(pitch_mm > 0)) throw ParamError("pitch must be positive");
    const BrcParams p = search_params(k, alpha);
    return std::round(static_cast<double>(p.n) * pitch_mm * 1e6) / 1e6;
}

bool budget_ok(const BrcParams& p, std::size_t t, std::size_t s) noexcept {
    // 4t + 2s/L <= 4 alpha  <=>  4tL + 2s <= 4 alpha L
    const unsigned __int128 L = p.mu_len;
    return 4 * static_cast<unsigned __int128>(t) * L + 2 * static_cast<unsigned __int128>(s) <=
           4 * static_cast<unsigned __int128>(p.alpha) * L;
}

NextMap build_next(const distinct::DStrings& d, unsigned m) {
    NextMap next(std::size_t{1} << m);
    std::iota(next.begin(), next.end(), std::uint64_t{0});
    for (std::size_t i = 0; i + 1 < d.size(); ++i) next[d[i]] = d[i + 1];
    return next;
}

std::optional<distinct::DStrings> next_to_dstrings(const NextMap& next, std::uint64_t head, unsigned steps) {
    if (steps == 0 || head >= next.size()) return std::nullopt;
    distinct::DStrings out{head};
    std::vector<std::uint8_t> seen(next.size(), 0);
    seen[head] = 1;
    std::uint64_t cur = head;
    while (out.size() < steps) {
        const std::uint64_t nx = next[cur];
        if (nx >= next.size() || nx == cur || seen[nx]) return std::nullopt;
        seen[nx] = 1;
        out.push_back(nx);
        cur = nx;
    }
    if (next[cur] != cur) return std::nullopt;
    return out;
}

BitString encode(const BitString& w, const BrcParams& p) {
    if (w.size() != p.k) {
        throw ParamError("message has " + std::to_string(w.size()) + " bits, expected k=" + std::to_string(p.k));
    }
    BitString u;
    for (unsigned i = 0; i < p.alpha; ++i) u.append_uint(i, p.m);
    u.append(w);
    const auto d = distinct::d_encode(u, p.l, p.m);
    const NextMap next = build_next(d, p.m);

    const rs::RsCode code(gf::Field(p.m + 1), p.info_symbols, p.parity_symbols);
    std::vector<gf::Element> info(p.info_symbols);
    for (std::size_t s = 0; s < info.size(); ++s) info[s] = static_cast<gf::Element>(next[s] << 1);
    const auto parity = code.encode(info);

    const constrained::MuLayout mu(p.m);
    const constrained::RllProfile packet = constrained::packet_profile(p.m);
    BitString out;
    for (unsigned i = 0; i < p.l; ++i) {
        out.append(mu.encode(d[i]));
        if (i < p.alpha) {
            BitString raw;
            for (unsigned q = 0; q < 4; ++q) raw.append_uint(parity[4 * i + q], p.symbol_bits);
            out.append(packet.encode(raw));
        }
    }
    return out;
}

namespace {

using Hits = std::vector<constrained::MuHit>;

// Union of a and b when b's bit j sits at a's bit j + shift and every shared bit agrees.
std::optional<Fragment> try_merge(const Fragment& a, const Fragment& b, std::ptrdiff_t shift) {
    const std::ptrdiff_t na = static_cast<std::ptrdiff_t>(a.bits.size());
    const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(b.bits.size());
    const std::ptrdiff_t lo = std::min<std::ptrdiff_t>(0, shift);
    const std::ptrdiff_t hi = std::max<std::ptrdiff_t>(na, nb + shift);
    const std::ptrdiff_t ov_lo = std::max<std::ptrdiff_t>(0, shift);
    const std::ptrdiff_t ov_hi = std::min<std::ptrdiff_t>(na, nb + shift);
    for (std::ptrdiff_t x = ov_lo; x < ov_hi; ++x) {
        if (a.bits[static_cast<std::size_t>(x)] != b.bits[static_cast<std::size_t>(x - shift)]) return std::nullopt;
    }
    Fragment out;
    out.bits = BitString(static_cast<std::size_t>(hi - lo));
    for (std::ptrdiff_t x = 0; x < nb; ++x) out.bits[static_cast<std::size_t>(x + shift - lo)] = b.bits[static_cast<std::size_t>(x)];
    for (std::ptrdiff_t x = 0; x < na; ++x) out.bits[static_cast<std::size_t>(x - lo)] = a.bits[static_cast<std::size_t>(x)];
    if (a.provenance && b.provenance) {
        out.provenance = std::make_pair(std::min(a.provenance->first, b.provenance->first),
                                        std::max(a.provenance->second, b.provenance->second));
    }
    return out;
}

void canonical_sort(std::vector<Fragment>& f) {
    std::sort(f.begin(), f.end(), [](const Fragment& a, const Fragment& b) {
        if (a.bits != b.bits) return a.bits < b.bits;
        return a.provenance < b.provenance;
    });
}

}  // namespace

std::vector<Fragment> preprocess(std::vector<Fragment> fragments, const BrcParams& p) {
    const constrained::MuLayout mu(p.m);
    canonical_sort(fragments);
    std::vector<Hits> hits;
    hits.reserve(fragments.size());
    for (const auto& f : fragments) hits.push_back(mu.scan(f.bits.view()));

    bool merged = true;
    while (merged) {
        merged = false;
        std::map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> seen;  // value -> (fragment, offset)
        for (std::size_t i = 0; i < fragments.size() && !merged; ++i) {
            for (const auto& h : hits[i]) {
                auto& prev = seen[h.value];
                for (const auto& [j, off] : prev) {
                    const auto shift = static_cast<std::ptrdiff_t>(off) - static_cast<std::ptrdiff_t>(h.offset);
                    auto u = try_merge(fragments[j], fragments[i], shift);
                    if (!u) continue;
                    fragments[j] = std::move(*u);
                    hits[j] = mu.scan(fragments[j].bits.view());
                    fragments.erase(fragments.begin() + static_cast<std::ptrdiff_t>(i));
                    hits.erase(hits.begin() + static_cast<std::ptrdiff_t>(i));
                    merged = true;
                    break;
                }
                if (merged) break;
                prev.emplace_back(i, h.offset);
            }
        }
    }
    canonical_sort(fragments);
    return fragments;
}

namespace {

// How far a candidate got; the report keeps the failure of the deepest attempt.
enum Depth { kRs = 1, kSymbols, kLinks, kChain, kDistinct, kMarkers };

const char* stage_name(int depth) {
    switch (depth) {
        case kRs: return "rs decode";
        case kSymbols: return "rs symbol format";
        case kLinks: return "link mismatch";
        case kChain: return "chain walk";
        case kDistinct: return "distinct decode";
        case kMarkers: return "marker prefix";
        default: return "unknown";
    }
}

}  // namespace

DecodeReport decode(const std::vector<Fragment>& input, const BrcParams& p) {
    DecodeReport rep;
    const constrained::MuLayout mu(p.m);
    const constrained::RllProfile packet = constrained::packet_profile(p.m);
    const std::vector<Fragment> frags = preprocess(input, p);
    rep.fragments = frags.size();

    const std::size_t keys = p.info_symbols;
    NextMap approx(keys);
    std::iota(approx.begin(), approx.end(), std::uint64_t{0});
    std::vector<std::uint8_t> linked(keys, 0);
    std::vector<std::uint8_t> has_in(keys, 0);
    std::vector<std::optional<gf::Element>> parity(p.parity_symbols);
    std::map<std::uint64_t, std::size_t> observed;  // non-marker value -> bits before it in its fragment

    auto link = [&](std::uint64_t key, std::uint64_t value) {
        if (linked[key] && approx[key] != value) return false;
        linked[key] = 1;
        approx[key] = value;
        has_in[value] = 1;
        return true;
    };
    // Markers 0..alpha-1 are consecutive in every codeword.
    for (unsigned i = 0; i + 1 < p.alpha; ++i) link(i, i + 1);

    for (const auto& f : frags) {
        const auto hits = mu.scan(f.bits.view());
        rep.mu_codewords += hits.size();
        for (std::size_t h = 0; h < hits.size(); ++h) {
            const auto& hit = hits[h];
            const bool marker = hit.value < p.alpha;
            if (marker && hit.offset + p.mu_len + p.packet_len <= f.bits.size()) {
                const auto raw = packet.decode(f.bits.view().subspan(hit.offset + p.mu_len, p.packet_len));
                if (raw) {
                    for (unsigned q = 0; q < 4; ++q) {
                        const auto sym = static_cast<gf::Element>(raw->to_uint(q * p.symbol_bits, p.symbol_bits));
                        auto& slot = parity[4 * hit.value + q];
                        if (slot && *slot != sym) {
                            rep.stage = "conflicting packets";
                            return rep;
                        }
                        slot = sym;
                    }
                }
            }
            if (!marker) {
                auto [it, fresh] = observed.emplace(hit.value, hit.offset);
                if (!fresh) it->second = std::max(it->second, hit.offset);
            }
            if (h + 1 < hits.size()) {
                const auto& nx = hits[h + 1];
                const std::size_t gap = marker ? p.mu_len + p.packet_len : p.mu_len;
                if (nx.offset - hit.offset == gap) {
                    if (!link(hit.value, nx.value)) {
                        rep.stage = "conflicting links";
                        return rep;
                    }
                    rep.links.emplace_back(hit.value, nx.value);
                }
            }
        }
    }
    std::sort(rep.links.begin(), rep.links.end());
    rep.links.erase(std::unique(rep.links.begin(), rep.links.end()), rep.links.end());
    if (rep.mu_codewords == 0) {
        rep.stage = "no MU codewords";
        return rep;
    }

    const rs::RsCode code(gf::Field(p.m + 1), keys, p.parity_symbols);
    rs::RsWord base;
    base.symbols.resize(code.length());
    for (std::size_t s = 0; s < keys; ++s) base.symbols[s] = static_cast<gf::Element>(approx[s] << 1);
    for (std::size_t j = 0; j < p.parity_symbols; ++j) {
        if (parity[j]) {
            base.symbols[keys + j] = *parity[j];
            ++rep.packets_recovered;
        } else {
            base.erasures.push_back(keys + j);
        }
    }
    rep.packets_recovered /= 4;
    rep.parity_erasures = base.erasures.size();

    // The successor of the last marker follows a packet, so it is the one link a single cut can
    // hide together with that packet. Try the unlinked MU codewords as its value, then an erasure.
    const std::uint64_t last_marker = p.alpha - 1;
    std::vector<std::optional<std::uint64_t>> candidates;
    if (linked[last_marker]) {
        candidates.push_back(std::nullopt);
    } else {
        base.symbols[last_marker] = 0;
        std::vector<std::pair<std::size_t, std::uint64_t>> heads;
        for (const auto& [value, before] : observed) {
            if (!has_in[value]) heads.emplace_back(before, value);
        }
        std::stable_sort(heads.begin(), heads.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& h : heads) candidates.emplace_back(h.second);
        candidates.push_back(std::nullopt);
    }
    const auto base_synd = code.syndromes(base.symbols);
    const auto column = code.syndrome_column(last_marker);
    const gf::Field& field = code.field();

    int deepest = 0;
    std::string deepest_detail;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (const auto& cand : candidates) {
        ++rep.candidates;
        rs::RsWord w = base;
        auto synd = base_synd;
        const bool erase_key = !linked[last_marker] && !cand;
        if (erase_key) {
            w.erasures.push_back(last_marker);
        } else if (cand) {
            const auto v = static_cast<gf::Element>(*cand << 1);
            w.symbols[last_marker] = v;
            for (std::size_t j = 0; j < synd.size(); ++j) synd[j] ^= field.mul(v, column[j]);
        }
        auto fail = [&](int depth, std::string detail) {
            if (depth > deepest) {
                deepest = depth;
                deepest_detail = std::move(detail);
            }
        };

        const auto res = code.decode_with_syndromes(w, synd);
        if (!res.ok()) {
            fail(kRs, res.failure);
            continue;
        }
        NextMap next(keys);
        bool format = true;
        for (std::size_t s = 0; s < keys; ++s) {
            if (res.codeword[s] & 1u) format = false;
            next[s] = res.codeword[s] >> 1;
        }
        if (!format) {
            fail(kSymbols, "information symbol with low bit set");
            continue;
        }
        bool agree = true;
        for (std::size_t s = 0; s < keys && agree; ++s) agree = !linked[s] || next[s] == approx[s];
        if (!agree) {
            fail(kLinks, "corrected map contradicts an observed link");
            continue;
        }
        const auto chain = next_to_dstrings(next, 0, p.l);
        std::size_t moved = 0;
        for (std::size_t s = 0; s < keys; ++s) moved += next[s] != s ? 1 : 0;
        if (!chain || moved != p.l - 1) {
            fail(kChain, "chain from marker 0 is not a simple chain of l strings");
            continue;
        }
        BitString u;
        try {
            u = distinct::d_decode(*chain, p.l, p.m);
        } catch (const distinct::DistinctError& e) {
            fail(kDistinct, e.what());
            continue;
        }
        bool markers = true;
        for (unsigned i = 0; i < p.alpha; ++i) markers = markers && u.to_uint(static_cast<std::size_t>(i) * p.m, p.m) == i;
        if (!markers) {
            fail(kMarkers, "decoded string does not start with the markers");
            continue;
        }
        const std::size_t cost = 2 * res.errors + res.erasures;
        if (cost < best_cost) {
            best_cost = cost;
            rep.message = u.slice(static_cast<std::size_t>(p.alpha) * p.m, p.k);
            rep.rs_errors = res.errors;
            rep.info_erasures = erase_key ? 1 : 0;
        }
        // No later candidate can need fewer corrections.
        if (cand && res.errors == 0) break;
    }
    if (!rep.message) {
        rep.stage = stage_name(deepest);
        rep.detail = deepest_detail;
    }
    return rep;
}

}  // namespace brc
