#include <doctest.h>

#include <random>

#include "brc/brc.hpp"
#include "brc/constrained.hpp"

using namespace brc;
using namespace brc::constrained;

namespace {

// Brute-force list of valid strings in lexicographic order.
std::vector<BitString> enumerate(unsigned len, unsigned run, bool lead) {
    std::vector<BitString> out;
    for (std::uint64_t v = 0; v < (1ull << len); ++v) {
        const BitString b = BitString::from_uint(v, len);
        if (lead && b[0] == 0) continue;
        unsigned z = 0, worst = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            z = b[i] ? 0 : z + 1;
            worst = std::max(worst, z);
        }
        if (worst <= run) out.push_back(b);
    }
    return out;
}

}  // namespace

TEST_CASE("rll_count agrees with enumeration") {
    CHECK(rll_count(8, 3, true) == 108);
    CHECK(enumerate(8, 3, true).size() == 108);
    CHECK(rll_count(1, 1, true) == 1);
    for (unsigned len = 1; len <= 14; ++len) {
        CHECK(rll_count(len, len, false) == (Count{1} << len));
        for (unsigned run = 0; run <= 4; ++run) {
            CHECK(rll_count(len, run, true) == enumerate(len, run, true).size());
            CHECK(rll_count(len, run, false) == enumerate(len, run, false).size());
        }
    }
    CHECK_THROWS_AS(rll_count(0, 1, true), ConstraintError);
}

TEST_CASE("6 -> 8 profile is the lexicographic enumeration") {
    RllProfile prof(6, 8, 3);
    const auto all = enumerate(8, 3, true);
    CHECK(prof.encode(BitString(6)).to_string() == "10001000");
    CHECK(prof.encode(BitString(6)) == all[0]);
    CHECK(prof.encode(BitString::from_uint(63, 6)) == all[63]);
    for (unsigned v = 0; v < 64; ++v) {
        const BitString word = prof.encode(BitString::from_uint(v, 6));
        CHECK(word == all[v]);
        CHECK(satisfies(word.view(), 3, true));
        const auto back = prof.decode(word.view());
        REQUIRE(back);
        CHECK(back->to_uint() == v);
    }
    CHECK(prof.decode(BitString::parse("10001000").view())->to_uint() == 0);
    CHECK_FALSE(prof.decode(BitString::parse("00110110").view()));
    CHECK_FALSE(prof.decode(BitString::parse("10000110").view()));
    CHECK_FALSE(prof.decode(all[64].view()));  // beyond the payload range
    CHECK_FALSE(prof.decode(BitString::parse("1000100").view()));
}

TEST_CASE("infeasible profiles are rejected at construction") {
    CHECK_THROWS_AS(RllProfile(7, 8, 3), ConstraintError);  // 108 < 128
    CHECK_THROWS_AS(RllProfile(4, 4, 0), ConstraintError);
}

TEST_CASE("order preservation at m = 12") {
    MuLayout mu(12);
    const auto& prof = mu.payload();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        const std::uint64_t a = rng() % 4096, b = rng() % 4096;
        const BitString wa = prof.encode(BitString::from_uint(a, 12));
        const BitString wb = prof.encode(BitString::from_uint(b, 12));
        CHECK((a < b) == (wa < wb));
        CHECK(satisfies(wa.view(), 4, true));
        CHECK(prof.decode(wa.view())->to_uint() == a);
    }
}

TEST_CASE("packet profile lengths") {
    for (unsigned m : {6u, 8u, 12u, 16u}) {
        const RllProfile p = packet_profile(m);
        CHECK(p.in_len() == 4 * m + 4);
        CHECK(p.out_len() == 4 * m + 11);
        CHECK(p.run_limit() == ceil_log2(m));
    }
}

TEST_CASE("MU codewords") {
    MuLayout mu6(6);
    CHECK(mu6.encode(0).to_string() == "0000110001000");
    CHECK(MuLayout(12).length() == 20);
    for (std::uint64_t u = 0; u < 64; ++u) {
        const BitString c = mu6.encode(u);
        CHECK(c.size() == 13);
        CHECK(mu6.decode(c.view()) == u);
        const auto hits = mu6.scan(c.view());
        REQUIRE(hits.size() == 1);
        CHECK(hits[0] == MuHit{0, u});
    }
    CHECK(mu6.scan(BitString(40, 1).view()).empty());
    CHECK(mu6.scan(BitString(40, 0).view()).empty());
}

TEST_CASE("scan finds exactly the complete MU codewords of a codeword slice") {
    const BrcParams p = derive_params(2, 5, 8);
    const MuLayout mu(p.m);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        BitString w(p.k);
        for (std::size_t i = 0; i < p.k; ++i) w[i] = rng() & 1;
        const BitString c = encode(w, p);
        const std::size_t a = rng() % p.n;
        const std::size_t b = a + rng() % (p.n - a + 1);
        const auto hits = mu.scan(c.slice(a, b - a).view());
        std::vector<std::size_t> expect;
        for (unsigned i = 0; i < p.l; ++i) {
            const std::size_t at = p.unit_offset(i);
            if (at >= a && at + p.mu_len <= b) expect.push_back(at - a);
        }
        REQUIRE(hits.size() == expect.size());
        for (std::size_t i = 0; i < hits.size(); ++i) {
            CHECK(hits[i].offset == expect[i]);
            CHECK(hits[i].value == mu.decode(c.slice(a + expect[i], p.mu_len).view()));
        }
    }
}

TEST_CASE("prefix-truncated codeword drops the cut MU codeword") {
    const BrcParams p = derive_params(1, 3, 6);
    const BitString c = encode(BitString(p.k), p);
    const auto hits = MuLayout(6).scan(c.slice(2, p.n - 2).view());
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].offset == 48 - 2);
    CHECK(hits[1].offset == 61 - 2);
}
