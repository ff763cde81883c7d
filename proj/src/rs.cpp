#include "brc/rs.hpp"

#include <algorithm>

#include "brc/kernels.hpp"

namespace brc::rs {

namespace {

using Poly = std::vector<Element>;  // index = power of x

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

std::size_t degree(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] != 0) return i;
    }
    return 0;
}

Element eval(const gf::Field& f, const Poly& p, Element x) {
    Element acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = f.mul(acc, x) ^ p[i];
    return acc;
}

}  // namespace

RsCode::RsCode(gf::Field field, std::size_t info_len, std::size_t parity_len)
    : field_(std::move(field)), info_len_(info_len), parity_len_(parity_len) {
    if (parity_len_ == 0) throw RsError("parity_len must be at least 1");
    if (info_len_ == 0) throw RsError("info_len must be at least 1");
    if (info_len_ + parity_len_ > field_.order()) {
        throw RsError("code length " + std::to_string(info_len_ + parity_len_) + " exceeds field order " +
                      std::to_string(field_.order()));
    }
    generator_ = {1};
    for (std::size_t j = 1; j <= parity_len_; ++j) {
        const Element root = field_.exp(j);
        Poly next(generator_.size() + 1, 0);
        for (std::size_t k = 0; k < generator_.size(); ++k) {
            next[k + 1] ^= generator_[k];
            next[k] ^= field_.mul(generator_[k], root);
        }
        generator_ = std::move(next);
    }
}

std::vector<Element> RsCode::encode(std::span<const Element> info) const {
    if (info.size() != info_len_) throw RsError("information length mismatch");
    std::vector<Element> reg(parity_len_, 0);
    for (Element d : info) {
        if (d >= field_.size()) throw RsError("symbol outside field");
        const Element fb = d ^ reg[0];
        for (std::size_t k = 0; k + 1 < parity_len_; ++k) {
            reg[k] = reg[k + 1] ^ field_.mul(fb, generator_[parity_len_ - 1 - k]);
        }
        reg[parity_len_ - 1] = field_.mul(fb, generator_[0]);
    }
    return reg;
}

std::vector<Element> RsCode::syndromes(std::span<const Element> word) const {
    if (word.size() != length()) throw RsError("received length mismatch");
    std::vector<Element> s(parity_len_);
    kernels::syndromes(word, field_, s);
    return s;
}

std::vector<Element> RsCode::syndrome_column(std::size_t position) const {
    std::vector<Element> col(parity_len_);
    const std::uint64_t e = length() - 1 - position;
    for (std::size_t j = 1; j <= parity_len_; ++j) col[j - 1] = field_.exp(e * j);
    return col;
}

DecodeResult RsCode::decode(const RsWord& received) const {
    if (received.symbols.size() != length()) throw RsError("received length mismatch");
    std::vector<Element> word = received.symbols;
    for (std::size_t pos : received.erasures) {
        if (pos >= length()) throw RsError("erasure position out of range");
        word[pos] = 0;
    }
    const auto s = syndromes(word);
    return decode_with_syndromes(RsWord{std::move(word), received.erasures}, s);
}

DecodeResult RsCode::decode_with_syndromes(const RsWord& received, std::span<const Element> synd) const {
    const gf::Field& f = field_;
    const std::size_t n = length();
    const std::size_t p = parity_len_;
    DecodeResult result;

    std::vector<std::size_t> erasures = received.erasures;
    std::sort(erasures.begin(), erasures.end());
    erasures.erase(std::unique(erasures.begin(), erasures.end()), erasures.end());
    const std::size_t y = erasures.size();
    result.erasures = y;
    if (y > p) {
        result.failure = "too many erasures";
        return result;
    }

    std::vector<Element> word = received.symbols;
    for (std::size_t pos : erasures) word[pos] = 0;

    if (y == 0 && std::all_of(synd.begin(), synd.end(), [](Element v) { return v == 0; })) {
        result.codeword = std::move(word);
        return result;
    }

    // Erasure locator: prod (1 + X_k x), X_k = x^(n-1-pos).
    Poly gamma{1};
    for (std::size_t pos : erasures) {
        const Element xk = f.exp(n - 1 - pos);
        Poly next(gamma.size() + 1, 0);
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            next[i] ^= gamma[i];
            next[i + 1] ^= f.mul(gamma[i], xk);
        }
        gamma = std::move(next);
    }

    // Berlekamp-Massey seeded with the erasure locator.
    Poly lambda = gamma;
    Poly b = gamma;
    std::size_t len = y;
    for (std::size_t r = y + 1; r <= p; ++r) {
        Element delta = 0;
        for (std::size_t i = 0; i < lambda.size() && i < r; ++i) delta ^= f.mul(lambda[i], synd[r - 1 - i]);
        b.insert(b.begin(), 0);
        if (delta == 0) continue;
        Poly t = lambda;
        if (t.size() < b.size()) t.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) t[i] ^= f.mul(delta, b[i]);
        if (2 * len <= r + y - 1) {
            const Element inv = f.inv(delta);
            b = lambda;
            for (auto& c : b) c = f.mul(c, inv);
            len = r + y - len;
        }
        lambda = std::move(t);
    }
    trim(lambda);
    const std::size_t deg = degree(lambda);
    if (deg != len || 2 * (len - y) + y > p) {
        result.failure = "error locator degree inconsistent";
        return result;
    }

    // Evaluator: S(x) * Lambda(x) mod x^p.
    Poly omega(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t k = 0; k <= i && k < lambda.size(); ++k) omega[i] ^= f.mul(synd[i - k], lambda[k]);
    }

    // Chien search over the valid (shortened) positions: root x^-(n-1-i) marks position i.
    std::vector<std::size_t> positions;
    std::vector<Element> terms(lambda.begin(), lambda.end());
    std::vector<Element> steps(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) steps[k] = f.exp(static_cast<std::uint64_t>(f.order() - k % f.order()));
    // e = n-1-i runs from 0 upward; terms[k] holds lambda_k * x^(-k*e).
    for (std::size_t e = 0; e < n; ++e) {
        Element v = 0;
        for (Element t : terms) v ^= t;
        if (v == 0) positions.push_back(n - 1 - e);
        for (std::size_t k = 1; k < terms.size(); ++k) terms[k] = f.mul(terms[k], steps[k]);
    }
    if (positions.size() != deg) {
        result.failure = "error locator roots outside the code";
        return result;
    }

    // Forney: magnitude = Omega(X^-1) / Lambda'(X^-1).
    Poly dlambda(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
    for (std::size_t k = 1; k < lambda.size(); k += 2) dlambda[k - 1] = lambda[k];
    std::size_t error_count = 0;
    for (std::size_t pos : positions) {
        const Element xinv = f.exp(f.order() - (n - 1 - pos) % f.order());
        const Element den = eval(f, dlambda, xinv);
        if (den == 0) {
            result.failure = "Forney denominator vanished";
            return result;
        }
        const Element mag = f.div(eval(f, omega, xinv), den);
        if (mag != 0 && !std::binary_search(erasures.begin(), erasures.end(), pos)) ++error_count;
        word[pos] ^= mag;
    }

    const auto check = syndromes(word);
    if (std::any_of(check.begin(), check.end(), [](Element v) { return v != 0; })) {
        result.failure = "syndromes non-zero after correction";
        return result;
    }
    result.errors = error_count;
    result.codeword = std::move(word);
    return result;
}

}  // namespace brc::rs
