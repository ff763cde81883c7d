#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "brc/brc.hpp"

namespace brc::fragsim {

struct SimConfig {
    unsigned alpha = 8;
    std::size_t k = 128;
    unsigned beta = 100;     // Voronoi sites
    double rho = 0.0;        // fraction of fragments hidden
    std::size_t trials = 256;
    double width_mm = 25.0;
    double depth_mm = 25.0;
    double pitch_mm = 0.12;  // object height per bit
    unsigned grid = 16;      // voxel samples per slab along x and y
    std::uint64_t seed = 20240601;
};

/// Throws ParamError when a field is out of range.
void validate(const SimConfig& c);

/// Slabs [begin, end) touched by one Voronoi cell.
struct Interval {
    std::size_t begin;
    std::size_t end;
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Site {
    float x, y, z;
};

/// Nearest-site labelling of the voxel grid (n slabs of grid x grid samples), reduced to the slab
/// interval of every non-empty cell, listed in ascending site z. Sites are scanned in ascending z (ties by input index); a
/// voxel equidistant from several sites goes to the first of them in that order.
std::vector<Interval> cell_intervals(const std::vector<Site>& sites, std::size_t n, const SimConfig& c);

/// beta uniform sites in the width x depth x (n * pitch) box, then cell_intervals.
std::vector<Interval> voronoi_fragment(const SimConfig& c, std::size_t n, std::uint64_t trial_seed);

/// Parameters used for k message bits at c.alpha (the message is zero padded up to their k).
BrcParams sim_params(const SimConfig& c);

/// One encode / fracture / hide / decode round. True iff the fingerprint comes back.
bool run_trial(const SimConfig& c, std::uint64_t trial_seed);

/// Seed of trial i. Shared by every cell of an experiment so that cells are compared on
/// the same random draws.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept;

struct ExperimentConfig {
    SimConfig base;                 // alpha, beta and rho are overridden per cell
    std::vector<unsigned> alphas{8};
    std::vector<unsigned> betas{100};
    std::vector<double> rhos{0.0};
    unsigned threads = 1;
};

struct CellResult {
    unsigned alpha;
    unsigned beta;
    double rho;
    std::size_t trials;
    std::size_t successes;
    double rate() const noexcept { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

struct SimResult {
    std::vector<CellResult> cells;
    std::uint64_t seed = 0;
    double runtime_s = 0.0;
};

/// Sweeps alpha x beta x rho in that nesting order. Deterministic for a given config,
/// whatever the thread count. `progress`, when set, is called after each finished cell.
SimResult run_experiment(const ExperimentConfig& cfg, void (*progress)(const CellResult&) = nullptr);

/// alpha,beta,rho,trials,successes,rate
std::string to_csv(const SimResult& r);

}  // namespace brc::fragsim
