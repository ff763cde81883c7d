#include "brc/fragsim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include "brc/kernels.hpp"
#include "brc/rng.hpp"

namespace brc::fragsim {

void validate(const SimConfig& c) {
    if (c.alpha < 1) throw ParamError("alpha must be at least 1");
    if (c.k < 1) throw ParamError("k must be at least 1");
    if (c.beta < 1) throw ParamError("beta must be at least 1");
    if (!(c.rho >= 0.0 && c.rho < 1.0)) throw ParamError("rho must lie in [0, 1)");
    if (!(c.width_mm > 0 && c.depth_mm > 0 && c.pitch_mm > 0)) throw ParamError("box dimensions must be positive");
    if (c.grid < 1) throw ParamError("grid must be at least 1");
}

std::vector<Interval> cell_intervals(const std::vector<Site>& sites, std::size_t n, const SimConfig& c) {
    if (sites.empty()) throw ParamError("need at least one site");
    const std::size_t ns = sites.size();
    std::vector<std::size_t> order(ns);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sites[a].z < sites[b].z; });
    std::vector<float> sx(ns), sy(ns), sz(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        sx[i] = sites[order[i]].x;
        sy[i] = sites[order[i]].y;
        sz[i] = sites[order[i]].z;
    }

    const unsigned g = c.grid;
    std::vector<float> px, py;
    px.reserve(static_cast<std::size_t>(g) * g);
    py.reserve(static_cast<std::size_t>(g) * g);
    for (unsigned a = 0; a < g; ++a) {
        for (unsigned b = 0; b < g; ++b) {
            px.push_back(static_cast<float>((a + 0.5) * c.width_mm / g));
            py.push_back(static_cast<float>((b + 0.5) * c.depth_mm / g));
        }
    }
    const double diag2 = c.width_mm * c.width_mm + c.depth_mm * c.depth_mm;

    std::vector<std::size_t> lo_slab(ns, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> hi_slab(ns, 0);
    std::vector<std::int32_t> label(px.size());
    for (std::size_t slab = 0; slab < n; ++slab) {
        const float z = static_cast<float>((slab + 0.5) * c.pitch_mm);
        // Any voxel of this slab is within R of the site closest in z, so farther sites cannot win.
        const auto it = std::lower_bound(sz.begin(), sz.end(), z);
        double dz = std::numeric_limits<double>::infinity();
        if (it != sz.end()) dz = std::min(dz, static_cast<double>(*it) - z);
        if (it != sz.begin()) dz = std::min(dz, static_cast<double>(z) - *(it - 1));
        const double r = std::sqrt(dz * dz + diag2) * (1.0 + 1e-6) + 1e-3;
        const auto first = std::lower_bound(sz.begin(), sz.end(), static_cast<float>(z - r));
        const auto last = std::upper_bound(sz.begin(), sz.end(), static_cast<float>(z + r));
        const std::size_t w0 = static_cast<std::size_t>(first - sz.begin());
        const std::size_t w1 = static_cast<std::size_t>(last - sz.begin());
        const kernels::Sites win{std::span<const float>(sx).subspan(w0, w1 - w0),
                                 std::span<const float>(sy).subspan(w0, w1 - w0),
                                 std::span<const float>(sz).subspan(w0, w1 - w0)};
        kernels::nearest_site(px, py, z, win, label);
        for (std::int32_t lab : label) {
            const std::size_t cell = w0 + static_cast<std::size_t>(lab);
            lo_slab[cell] = std::min(lo_slab[cell], slab);
            hi_slab[cell] = std::max(hi_slab[cell], slab);
        }
    }
    std::vector<Interval> out;
    for (std::size_t i = 0; i < ns; ++i) {
        if (lo_slab[i] <= hi_slab[i]) out.push_back({lo_slab[i], hi_slab[i] + 1});
    }
    return out;
}

std::vector<Interval> voronoi_fragment(const SimConfig& c, std::size_t n, std::uint64_t trial_seed) {
    validate(c);
    Rng rng(trial_seed);
    const double height = static_cast<double>(n) * c.pitch_mm;
    std::vector<Site> sites(c.beta);
    for (auto& s : sites) {
        s.x = static_cast<float>(rng.uniform(0.0, c.width_mm));
        s.y = static_cast<float>(rng.uniform(0.0, c.depth_mm));
        s.z = static_cast<float>(rng.uniform(0.0, height));
    }
    return cell_intervals(sites, n, c);
}

BrcParams sim_params(const SimConfig& c) { return fit_params(c.k, c.alpha); }

bool run_trial(const SimConfig& c, std::uint64_t trial_seed) {
    validate(c);
    const BrcParams p = sim_params(c);
    Rng rng(derive_seed(trial_seed, 0));
    BitString w(p.k);
    for (std::size_t i = p.k - c.k; i < p.k; ++i) w[i] = rng.coin() ? 1 : 0;
    const BitString codeword = encode(w, p);

    const auto cells = voronoi_fragment(c, p.n, derive_seed(trial_seed, 1));
    std::vector<std::size_t> idx(cells.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng hide_rng(derive_seed(trial_seed, 2));
    hide_rng.shuffle(idx);
    const auto hidden = static_cast<std::size_t>(std::ceil(c.rho * static_cast<double>(cells.size())));
    std::vector<Fragment> frags;
    for (std::size_t i = hidden; i < idx.size(); ++i) {
        const Interval& iv = cells[idx[i]];
        frags.push_back({codeword.slice(iv.begin, iv.end - iv.begin), std::make_pair(iv.begin, iv.end)});
    }
    const DecodeReport r = decode(frags, p);
    return r.ok() && *r.message == w;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) noexcept { return derive_seed(master, trial); }

SimResult run_experiment(const ExperimentConfig& cfg, void (*progress)(const CellResult&)) {
    const auto t0 = std::chrono::steady_clock::now();
    SimResult res;
    res.seed = cfg.base.seed;
    for (unsigned a : cfg.alphas) {
        for (unsigned b : cfg.betas) {
            for (double r : cfg.rhos) {
                SimConfig c = cfg.base;
                c.alpha = a;
                c.beta = b;
                c.rho = r;
                validate(c);
                std::vector<std::uint8_t> ok(c.trials, 0);
                std::atomic<std::size_t> next{0};
                auto worker = [&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < c.trials;) ok[i] = run_trial(c, trial_seed(c.seed, i)) ? 1 : 0;
                };
                const unsigned nt = std::max(1u, cfg.threads);
                if (nt == 1) {
                    worker();
                } else {
                    std::vector<std::thread> pool;
                    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
                    for (auto& th : pool) th.join();
                }
                CellResult cell{a, b, r, c.trials, static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1))};
                res.cells.push_back(cell);
                if (progress) progress(cell);
            }
        }
    }
    res.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string to_csv(const SimResult& r) {
    std::string out = "alpha,beta,rho,trials,successes,rate\n";
    char line[160];
    for (const auto& c : r.cells) {
        std::snprintf(line, sizeof line, "%u,%u,%g,%zu,%zu,%.6f\n", c.alpha, c.beta, c.rho, c.trials, c.successes, c.rate());
        out += line;
    }
    return out;
}

}  // namespace brc::fragsim
