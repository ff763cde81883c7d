#pragma once

// File formats.
//
// Codeword container, all integers big-endian:
//   "BRCW"  magic
//   u8      format version (1)
//   u8      constrained coder version
//   u8      modulus table version
//   u16     alpha
//   u16     l
//   u8      m
//   u16     zero bits padded in front of the fingerprint
//   u32     codeword length in bits
//   ...     codeword bits, most significant bit first, last byte zero filled
//
// Fragments JSON:
//   {"version":1,"alpha":A,"l":L,"m":M,
//    "fragments":[{"bits":"0110...","provenance":{"start":S,"end":E}}, ...]}
//   alpha/l/m and provenance are optional.
//
// Plan JSON: {"n":N,"cuts":[...],"overlap":E,"hidden":[...],"seed":S}
//
// Simulation config JSON: {"alpha":[...],"beta":[...],"rho":[...],"k":128,"trials":256,
//   "width_mm":25,"depth_mm":25,"pitch_mm":0.12,"grid":16,"seed":S,"threads":1}; every key optional.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "brc/brc.hpp"
#include "brc/channel.hpp"
#include "brc/fragsim.hpp"

namespace brc::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kContainerVersion = 1;

struct Container {
    BrcParams params;
    std::size_t pad = 0;
    BitString codeword;
};

std::vector<std::uint8_t> write_container(const Container& c);
/// Throws FormatError on a bad header or version, ParamError on invalid parameters.
Container read_container(std::span<const std::uint8_t> bytes);

struct FragmentSet {
    std::optional<BrcParams> params;
    std::vector<Fragment> fragments;
};

std::string fragments_to_json(const FragmentSet& set);
FragmentSet fragments_from_json(const std::string& text);

std::string plan_to_json(const channel::BreakPlan& plan);
channel::BreakPlan plan_from_json(const std::string& text);

fragsim::ExperimentConfig sim_config_from_json(const std::string& text);
std::string sim_config_to_json(const fragsim::ExperimentConfig& cfg);

}  // namespace brc::io
