// brc: encode fingerprints into break-resilient codewords, break them, decode the pieces,
// run fragmentation simulations and convert bits to layer thicknesses.
//
// Exit codes: 0 ok, 1 I/O or file format, 2 bad parameters, 3 decode or parse failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "brc/brc.hpp"
#include "brc/channel.hpp"
#include "brc/constrained.hpp"
#include "brc/embed.hpp"
#include "brc/fragsim.hpp"
#include "brc/gf.hpp"
#include "brc/rng.hpp"
#include "brc/serialize.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kParam = 2;
constexpr int kDecode = 3;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    const std::string s = read_text(path);
    return {s.begin(), s.end()};
}

void write_text(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size()))) throw IoError("cannot write " + path);
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Parameter flags shared by encode and decode: either (alpha, l, m) or (alpha, k).
struct ParamFlags {
    unsigned alpha = 0;
    unsigned l = 0;
    unsigned m = 0;
    std::size_t k = 0;

    void add(CLI::App* app) {
        app->add_option("--alpha", alpha, "security parameter");
        app->add_option("--l", l, "number of MU codewords");
        app->add_option("--m", m, "bits per block");
        app->add_option("--k", k, "information bits; picks the smallest codeword");
    }
    bool given() const { return alpha || l || m || k; }
    brc::BrcParams resolve() const {
        if (alpha == 0) throw brc::ParamError("--alpha is required");
        if (l || m) {
            if (!l || !m) throw brc::ParamError("--l and --m go together");
            const auto p = brc::derive_params(alpha, l, m);
            if (k && k != p.k) throw brc::ParamError("--k disagrees with --l/--m (k=" + std::to_string(p.k) + ")");
            return p;
        }
        if (!k) throw brc::ParamError("give --l and --m, or --k");
        return brc::search_params(k, alpha);
    }
};

// Hex fingerprints carry 4 bits per digit; leading zero bits beyond k are dropped.
brc::BitString fingerprint_bits(const std::string& hex, const std::string& bits, std::size_t k, bool pad,
                                std::size_t& padded) {
    brc::BitString w;
    try {
        w = bits.empty() ? brc::BitString::from_hex(trim(hex)) : brc::BitString::parse(trim(bits));
    } catch (const std::invalid_argument& e) {
        throw brc::ParamError(std::string("fingerprint: ") + e.what());
    }
    std::size_t lead = 0;
    while (lead < w.size() && w.size() - lead > k && w[lead] == 0) ++lead;
    w = w.slice(lead, w.size() - lead);
    padded = 0;
    if (w.size() < k && pad) {
        padded = k - w.size();
        w = brc::concat(brc::BitString(padded), w);
    }
    if (w.size() != k) {
        throw brc::ParamError("fingerprint has " + std::to_string(w.size()) + " bits, k=" + std::to_string(k) +
                              (w.size() < k ? " (use --pad)" : ""));
    }
    return w;
}

nlohmann::json report_json(const brc::DecodeReport& r, const brc::BrcParams& p) {
    nlohmann::json j;
    j["ok"] = r.ok();
    j["stage"] = r.stage;
    if (!r.detail.empty()) j["detail"] = r.detail;
    j["alpha"] = p.alpha;
    j["l"] = p.l;
    j["m"] = p.m;
    j["k"] = p.k;
    j["fragments"] = r.fragments;
    j["mu_codewords"] = r.mu_codewords;
    j["packets_recovered"] = r.packets_recovered;
    j["parity_erasures"] = r.parity_erasures;
    j["info_erasures"] = r.info_erasures;
    j["rs_errors"] = r.rs_errors;
    j["candidates"] = r.candidates;
    j["links"] = r.links.size();
    if (r.ok()) {
        j["fingerprint_bits"] = r.message->to_string();
        j["fingerprint_hex"] = r.message->to_hex();
    }
    return j;
}

int show_field(unsigned degree) {
    std::cout << "modulus table version " << brc::gf::kModulusTableVersion << "\n";
    std::cout << "degree,modulus_hex,primitive\n";
    for (const auto& [deg, poly] : brc::gf::default_modulus_table()) {
        if (degree && deg != degree) continue;
        char hex[16];
        std::snprintf(hex, sizeof hex, "0x%X", poly);
        std::cout << deg << "," << hex << "," << (brc::gf::is_primitive(poly, deg) ? "yes" : "no") << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"break-resilient fingerprint codes"};
    app.require_subcommand(0, 1);
    unsigned field_degree = 0;
    bool field_flag = false;
    app.add_flag("--show-field", field_flag, "print the built-in primitive polynomial table");
    app.add_option("--degree", field_degree, "restrict --show-field to one degree");

    // encode
    auto* enc = app.add_subcommand("encode", "encode a fingerprint into a codeword container");
    ParamFlags enc_p;
    enc_p.add(enc);
    std::string enc_hex, enc_bits, enc_in, enc_out;
    bool enc_pad = false;
    double enc_pitch = 0.12;
    enc->add_option("--hex", enc_hex, "fingerprint as hex");
    enc->add_option("--bits", enc_bits, "fingerprint as a 0/1 string");
    enc->add_option("--input", enc_in, "file holding the fingerprint as hex");
    enc->add_option("--out,-o", enc_out, "codeword container path")->required();
    enc->add_flag("--pad", enc_pad, "left-pad a short fingerprint with zeros");
    enc->add_option("--pitch", enc_pitch, "mm per bit for the printed dimension");

    // decode
    auto* dec = app.add_subcommand("decode", "decode a fragments file");
    ParamFlags dec_p;
    dec_p.add(dec);
    std::string dec_in, dec_out;
    dec->add_option("--input,-i", dec_in, "fragments JSON")->required();
    dec->add_option("--report", dec_out, "write the JSON report here instead of stdout");

    // break
    auto* brk = app.add_subcommand("break", "cut a codeword and hide pieces");
    std::string brk_in, brk_out, brk_plan, brk_plan_out;
    std::size_t brk_t = 0, brk_s = 0;
    std::uint64_t brk_seed = kDefaultSeed;
    bool brk_greedy = false;
    brk->add_option("--input,-i", brk_in, "codeword container")->required();
    brk->add_option("--out,-o", brk_out, "fragments JSON")->required();
    brk->add_option("--t", brk_t, "unrepaired breaks allowed");
    brk->add_option("--s", brk_s, "lost bits allowed");
    brk->add_option("--seed", brk_seed, "random plan seed");
    brk->add_flag("--greedy", brk_greedy, "use the deterministic worst-case plan");
    brk->add_option("--plan", brk_plan, "apply this plan JSON instead of generating one");
    brk->add_option("--plan-out", brk_plan_out, "save the plan used");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Voronoi fragmentation experiment");
    std::string sim_cfg, sim_out;
    std::uint64_t sim_seed = 0;
    unsigned sim_threads = 0;
    sim->add_option("--config,-c", sim_cfg, "config JSON")->required();
    sim->add_option("--out,-o", sim_out, "results CSV")->required();
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "master seed (overrides the config)");
    sim->add_option("--threads", sim_threads, "worker threads (overrides the config)");

    // rate
    auto* rate = app.add_subcommand("rate", "code rate table");
    std::vector<std::size_t> rate_k{3,   11,  17,  31,  39,  47,  55,  79,  89,  99,  109,
                                    119, 129, 139, 149, 191, 203, 215, 227, 239, 251, 263,
                                    275, 287, 299, 311, 323, 335, 347, 359, 371};
    unsigned rate_amin = 1, rate_amax = 10;
    std::string rate_out;
    rate->add_option("--k", rate_k, "information lengths");
    rate->add_option("--alpha-min", rate_amin);
    rate->add_option("--alpha-max", rate_amax);
    rate->add_option("--out,-o", rate_out, "CSV path (default stdout)");

    // mindim
    auto* md = app.add_subcommand("mindim", "minimum object height in mm");
    std::size_t md_k = 0;
    unsigned md_alpha = 0;
    double md_pitch = 0.12;
    md->add_option("k", md_k)->required();
    md->add_option("alpha", md_alpha)->required();
    md->add_option("pitch", md_pitch);

    // embed
    auto* emb = app.add_subcommand("embed", "bits to layer thicknesses");
    std::string emb_bits, emb_hex, emb_out, emb_mode = "normal";
    brc::embed::EmbedParams emb_p;
    double emb_delta = 0;
    std::uint64_t emb_seed = kDefaultSeed;
    emb->add_option("--bits", emb_bits);
    emb->add_option("--hex", emb_hex);
    emb->add_option("--mode", emb_mode)->check(CLI::IsMember({"normal", "stealthy"}));
    emb->add_option("--x", emb_p.x, "normal base thickness, mm");
    emb->add_option("--y", emb_p.y, "stealthy base thickness, mm");
    emb->add_option("--eps", emb_p.eps, "stealthy offset, mm");
    emb->add_option("--delta", emb_delta, "per-layer imperfection");
    emb->add_option("--seed", emb_seed);
    emb->add_option("--out,-o", emb_out, "layers CSV (default stdout)");

    // parse
    auto* prs = app.add_subcommand("parse", "layer thicknesses to bits");
    std::string prs_in, prs_mode = "normal";
    brc::embed::EmbedParams prs_p;
    prs->add_option("--input,-i", prs_in, "layers CSV")->required();
    prs->add_option("--mode", prs_mode)->check(CLI::IsMember({"normal", "stealthy"}));
    prs->add_option("--x", prs_p.x);
    prs->add_option("--y", prs_p.y);
    prs->add_option("--eps", prs_p.eps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParam;
    }

    try {
        if (field_flag) return show_field(field_degree);

        if (*enc) {
            const brc::BrcParams p = enc_p.resolve();
            std::string hex = enc_hex;
            if (!enc_in.empty()) hex = read_text(enc_in);
            if (hex.empty() && enc_bits.empty()) throw brc::ParamError("give --hex, --bits or --input");
            std::size_t padded = 0;
            const brc::BitString w = fingerprint_bits(hex, enc_bits, p.k, enc_pad, padded);
            const brc::io::Container c{p, padded, brc::encode(w, p)};
            const auto bytes = brc::io::write_container(c);
            write_text(enc_out, std::string(bytes.begin(), bytes.end()));
            const auto r = brc::code_rate(p);
            std::cout << "alpha=" << p.alpha << " l=" << p.l << " m=" << p.m << " k=" << p.k << " n=" << p.n
                      << " rate=" << r.num << "/" << r.den << " (" << fmt(r.value()) << ")"
                      << " height_mm=" << fmt(std::round(static_cast<double>(p.n) * enc_pitch * 1e6) / 1e6)
                      << (padded ? " pad=" + std::to_string(padded) : "") << "\n";
            return kOk;
        }

        if (*dec) {
            const auto set = brc::io::fragments_from_json(read_text(dec_in));
            brc::BrcParams p;
            if (dec_p.given()) {
                p = dec_p.resolve();
                if (set.params && !(*set.params == p)) throw brc::ParamError("flags disagree with the fragments file");
            } else if (set.params) {
                p = *set.params;
            } else {
                throw brc::ParamError("fragments file has no parameters; pass --alpha with --l/--m or --k");
            }
            const auto r = brc::decode(set.fragments, p);
            write_text(dec_out, report_json(r, p).dump(2) + "\n");
            if (!r.ok()) {
                std::cerr << "decode failed: " << r.stage << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
                return kDecode;
            }
            return kOk;
        }

        if (*brk) {
            const auto c = brc::io::read_container(read_bytes(brk_in));
            brc::channel::BreakPlan plan;
            if (!brk_plan.empty()) {
                plan = brc::io::plan_from_json(read_text(brk_plan));
            } else if (brk_greedy) {
                plan = brc::channel::greedy_adversary(c.params, brk_t, brk_s);
                plan.seed = brk_seed;
            } else {
                plan = brc::channel::random_adversary(c.params, brk_t, brk_s, brk_seed);
            }
            const auto out = brc::channel::apply_channel(c.codeword, plan, c.params);
            write_text(brk_out, brc::io::fragments_to_json({c.params, out.fragments}));
            if (!brk_plan_out.empty()) write_text(brk_plan_out, brc::io::plan_to_json(plan));
            std::cerr << "fragments=" << out.fragments.size() << " t=" << out.damage.t << " s=" << out.damage.s
                      << (brc::budget_ok(c.params, out.damage.t, out.damage.s) ? "" : " (over budget)") << "\n";
            return kOk;
        }

        if (*sim) {
            auto cfg = brc::io::sim_config_from_json(read_text(sim_cfg));
            if (*sim_seed_opt) cfg.base.seed = sim_seed;
            if (sim_threads) cfg.threads = sim_threads;
            const auto res = brc::fragsim::run_experiment(cfg, [](const brc::fragsim::CellResult& c) {
                std::cerr << "alpha=" << c.alpha << " beta=" << c.beta << " rho=" << c.rho << " " << c.successes << "/"
                          << c.trials << "\n";
            });
            write_text(sim_out, brc::fragsim::to_csv(res));
            std::cerr << "seed=" << res.seed << " runtime_s=" << fmt(res.runtime_s) << "\n";
            return kOk;
        }

        if (*rate) {
            std::string csv = "k,alpha,l,m,n,rate,cpc_bound\n";
            std::size_t skipped = 0;
            for (std::size_t k : rate_k) {
                for (unsigned a = rate_amin; a <= rate_amax; ++a) {
                    brc::BrcParams p;
                    try {
                        p = brc::search_params(k, a);
                    } catch (const brc::ParamError&) {
                        ++skipped;
                        continue;
                    }
                    const auto r = brc::code_rate(p);
                    // an alpha-BRC survives alpha breaks; a CPC facing as many breaks is capped at 1/(alpha+1)
                    csv += std::to_string(k) + "," + std::to_string(a) + "," + std::to_string(p.l) + "," +
                           std::to_string(p.m) + "," + std::to_string(p.n) + "," + fmt(r.value()) + "," +
                           fmt(brc::cpc_rate_bound(a).value()) + "\n";
                }
            }
            write_text(rate_out, csv);
            if (skipped) std::cerr << skipped << " (k, alpha) pairs have no valid parameters\n";
            return kOk;
        }

        if (*md) {
            std::cout << fmt(brc::min_dimension(md_k, md_alpha, md_pitch)) << "\n";
            return kOk;
        }

        if (*emb) {
            emb_p.mode = emb_mode == "normal" ? brc::embed::Mode::normal : brc::embed::Mode::stealthy;
            brc::BitString bits;
            try {
                bits = emb_bits.empty() ? brc::BitString::from_hex(emb_hex) : brc::BitString::parse(emb_bits);
            } catch (const std::invalid_argument& e) {
                throw brc::ParamError(e.what());
            }
            auto layers = brc::embed::embed_bits(bits, emb_p);
            if (emb_delta > 0) layers = brc::embed::apply_imperfection(layers, emb_delta, emb_seed);
            write_text(emb_out, brc::embed::to_csv(layers));
            return kOk;
        }

        if (*prs) {
            prs_p.mode = prs_mode == "normal" ? brc::embed::Mode::normal : brc::embed::Mode::stealthy;
            brc::embed::Layers layers;
            try {
                layers = brc::embed::from_csv(read_text(prs_in));
            } catch (const std::invalid_argument& e) {
                throw brc::io::FormatError(e.what());
            }
            const auto r = brc::embed::parse_bits(layers, prs_p);
            if (!r.ok()) {
                std::cerr << "parse failed at layer " << r.bad_layer << ": " << r.error << "\n";
                return kDecode;
            }
            std::cout << r.bits->to_string() << (r.reversed ? " reversed" : "") << "\n";
            return kOk;
        }

        std::cout << app.help();
        return kOk;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const brc::io::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParam;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
}
