#include "brc/embed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brc/rng.hpp"

namespace brc::embed {

void validate(const EmbedParams& p) {
    if (p.mode == Mode::normal) {
        if (!(p.x > 0)) throw std::invalid_argument("x must be positive");
    } else {
        if (!(p.y > 0 && p.eps > 0)) throw std::invalid_argument("y and eps must be positive");
        if (!(p.eps < p.y)) throw std::invalid_argument("eps must be smaller than y");
    }
}

Layers embed_bits(const BitString& bits, const EmbedParams& p) {
    validate(p);
    Layers out;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (p.mode == Mode::normal) {
            if (bits[i]) {
                out.push_back(3 * p.x);
            } else {
                out.push_back(p.x);
                out.push_back(2 * p.x);
            }
        } else if (bits[i]) {
            out.push_back(p.y);
            out.push_back(p.y);
        } else {
            out.push_back(p.y - p.eps);
            out.push_back(p.y + p.eps);
        }
    }
    return out;
}

Layers apply_imperfection(const Layers& layers, double delta, std::uint64_t seed) {
    if (!(delta >= 0)) throw std::invalid_argument("delta must be non-negative");
    Rng rng(seed);
    Layers out = layers;
    for (auto& v : out) v *= rng.uniform(1.0 - delta, 1.0 + delta);
    return out;
}

bool intervals_disjoint(double delta) {
    if (!(delta >= 0)) throw std::invalid_argument("delta must be non-negative");
    const long long d = std::llround(delta * 1e6);
    const long long one = 1000000;
    // (1+d) a < (1-d) b for neighbouring design values a < b
    for (int a = 1; a <= 2; ++a) {
        if (!((one + d) * a < (one - d) * (a + 1))) return false;
    }
    return true;
}

namespace {

ParseResult fail(std::size_t at, std::string why) {
    ParseResult r;
    r.bad_layer = at;
    r.error = std::move(why);
    return r;
}

// Design value (in units of x) closest in relative terms: |v/d - 1| smallest.
int classify(double v, double x) {
    int best = 1;
    double best_dev = std::abs(v / x - 1.0);
    for (int d = 2; d <= 3; ++d) {
        const double dev = std::abs(v / (d * x) - 1.0);
        if (dev < best_dev) {
            best_dev = dev;
            best = d;
        }
    }
    return best;
}

ParseResult parse_normal(const Layers& layers, const EmbedParams& p) {
    const std::size_t n = layers.size();
    std::vector<int> tok(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(layers[i] > 0)) return fail(i, "non-positive layer");
        tok[i] = classify(layers[i], p.x);
    }
    const auto first = std::find_if(tok.begin(), tok.end(), [](int t) { return t != 3; });
    const bool reversed = first != tok.end() && *first == 2;
    if (reversed) std::reverse(tok.begin(), tok.end());
    auto original = [&](std::size_t i) { return reversed ? n - 1 - i : i; };

    BitString bits;
    for (std::size_t i = 0; i < n;) {
        if (tok[i] == 3) {
            bits.push_back(1);
            ++i;
        } else if (tok[i] == 1 && i + 1 < n && tok[i + 1] == 2) {
            bits.push_back(0);
            i += 2;
        } else {
            return fail(original(i), tok[i] == 1 ? "x layer not followed by 2x" : "unpaired 2x layer");
        }
    }
    ParseResult r;
    r.bits = std::move(bits);
    r.reversed = reversed;
    return r;
}

ParseResult parse_stealthy(const Layers& layers, const EmbedParams& p) {
    const std::size_t n = layers.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(layers[i] > 0)) return fail(i, "non-positive layer");
    }
    if (n % 2 != 0) return fail(n - 1, "odd number of layers");
    // Designed differences are 0 and 2 eps.
    const double threshold = p.eps / 2;
    int dir = 0;
    for (std::size_t i = 0; i < n; i += 2) {
        const double d = layers[i + 1] - layers[i];
        if (std::abs(d) <= threshold) continue;
        const int here = d > 0 ? 1 : -1;
        if (dir == 0) dir = here;
        if (here != dir) return fail(i, "pair direction disagrees with earlier pairs");
    }
    ParseResult r;
    r.reversed = dir < 0;
    BitString bits;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const std::size_t i = r.reversed ? n - 2 - 2 * k : 2 * k;
        const double d = layers[i + 1] - layers[i];
        bits.push_back(std::abs(d) <= threshold ? 1 : 0);
    }
    r.bits = std::move(bits);
    return r;
}

}  // namespace

ParseResult parse_bits(const Layers& layers, const EmbedParams& p) {
    validate(p);
    return p.mode == Mode::normal ? parse_normal(layers, p) : parse_stealthy(layers, p);
}

std::string to_csv(const Layers& layers) {
    std::string out = "thickness_um\n";
    for (double v : layers) out += std::to_string(std::llround(v * 1000.0)) + "\n";
    return out;
}

Layers from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Layers out;
    bool header = true;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "thickness_um") throw std::invalid_argument("expected header thickness_um");
            continue;
        }
        std::size_t used = 0;
        long long um = 0;
        try {
            um = std::stoll(line, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != line.size() || um <= 0) {
            throw std::invalid_argument("row " + std::to_string(row) + ": expected a positive integer");
        }
        out.push_back(static_cast<double>(um) / 1000.0);
    }
    if (header) throw std::invalid_argument("empty thickness file");
    return out;
}

}  // namespace brc::embed
