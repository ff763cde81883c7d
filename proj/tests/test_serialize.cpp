#include <doctest.h>

#include "brc/serialize.hpp"

using namespace brc;
using namespace brc::io;

TEST_CASE("container round trip") {
    const BrcParams p = derive_params(2, 5, 8);
    BitString w(p.k);
    for (std::size_t i = 0; i < p.k; i += 3) w[i] = 1;
    const Container c{p, 5, encode(w, p)};
    const auto bytes = write_container(c);
    CHECK(bytes.size() == 4 + 3 + 2 + 2 + 1 + 2 + 4 + (p.n + 7) / 8);
    CHECK(bytes[4] == kContainerVersion);
    const Container back = read_container(bytes);
    CHECK(back.params == p);
    CHECK(back.pad == 5);
    CHECK(back.codeword == c.codeword);
}

TEST_CASE("container errors") {
    const BrcParams p = derive_params(1, 3, 6);
    auto bytes = write_container({p, 0, encode(BitString(p.k), p)});
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(read_container(bad), FormatError);
    bad = bytes;
    bad[4] = 2;
    CHECK_THROWS_AS(read_container(bad), FormatError);
    bad = bytes;
    bad.pop_back();
    CHECK_THROWS_AS(read_container(bad), FormatError);
    CHECK_THROWS_AS(read_container(std::vector<std::uint8_t>(10, 0)), FormatError);
    bad = bytes;
    bad[11] = 3;  // m = 3 is invalid for l = 3
    CHECK_THROWS_AS(read_container(bad), ParamError);
    CHECK_THROWS_AS(write_container({p, 0, BitString(10)}), FormatError);
}

TEST_CASE("fragments json") {
    const BrcParams p = derive_params(1, 3, 6);
    FragmentSet set{p, {{BitString::parse("0101"), std::make_pair(std::size_t{3}, std::size_t{7})},
                        {BitString::parse("1"), std::nullopt}}};
    const FragmentSet back = fragments_from_json(fragments_to_json(set));
    REQUIRE(back.params);
    CHECK(*back.params == p);
    CHECK(back.fragments == set.fragments);

    const FragmentSet bare = fragments_from_json(R"({"fragments":[{"bits":"110"}]})");
    CHECK_FALSE(bare.params);
    CHECK(bare.fragments.size() == 1);
    CHECK(fragments_from_json("{}").fragments.empty());
    CHECK_THROWS_AS(fragments_from_json("[1,"), FormatError);
    CHECK_THROWS_AS(fragments_from_json(R"({"fragments":[{"bits":"12"}]})"), FormatError);
    CHECK_THROWS_AS(fragments_from_json(R"({"fragments":[{}]})"), FormatError);
    CHECK_THROWS_AS(fragments_from_json(R"({"version":2})"), FormatError);
}

TEST_CASE("plan json") {
    const channel::BreakPlan plan{74, {10, 40}, 2, {1}, 99};
    CHECK(plan_from_json(plan_to_json(plan)) == plan);
    const auto minimal = plan_from_json(R"({"n":74})");
    CHECK(minimal.cuts.empty());
    CHECK_THROWS_AS(plan_from_json(R"({"cuts":[1]})"), FormatError);
}

TEST_CASE("simulation config json") {
    auto c = sim_config_from_json(R"({"alpha":4,"beta":[20,100],"rho":0.5,"trials":8,"seed":7})");
    CHECK(c.alphas == std::vector<unsigned>{4});
    CHECK(c.betas == std::vector<unsigned>{20, 100});
    CHECK(c.rhos == std::vector<double>{0.5});
    CHECK(c.base.trials == 8);
    CHECK(c.base.seed == 7);
    CHECK(c.base.k == 128);
    const auto again = sim_config_from_json(sim_config_to_json(c));
    CHECK(sim_config_to_json(again) == sim_config_to_json(c));
    CHECK_THROWS_AS(sim_config_from_json(R"({"alpha":"x"})"), FormatError);
}
