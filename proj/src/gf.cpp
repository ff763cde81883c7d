#include "brc/gf.hpp"

#include <cstdio>
#include <string>

namespace brc::gf {

namespace {

// Conventional primitive trinomials/pentanomials (Lin & Costello, Table 2.7 style).
constexpr std::array<std::pair<unsigned, std::uint32_t>, 15> kDefaultModuli{{
    {3, 0x0000B},   // x^3 + x + 1
    {4, 0x00013},   // x^4 + x + 1
    {5, 0x00025},   // x^5 + x^2 + 1
    {6, 0x00043},   // x^6 + x + 1
    {7, 0x00089},   // x^7 + x^3 + 1
    {8, 0x0011D},   // x^8 + x^4 + x^3 + x^2 + 1
    {9, 0x00211},   // x^9 + x^4 + 1
    {10, 0x00409},  // x^10 + x^3 + 1
    {11, 0x00805},  // x^11 + x^2 + 1
    {12, 0x01053},  // x^12 + x^6 + x^4 + x + 1
    {13, 0x0201B},  // x^13 + x^4 + x^3 + x + 1
    {14, 0x04443},  // x^14 + x^10 + x^6 + x + 1
    {15, 0x08003},  // x^15 + x + 1
    {16, 0x1100B},  // x^16 + x^12 + x^3 + x + 1
    {17, 0x20009},  // x^17 + x^3 + 1
}};

unsigned poly_degree(std::uint64_t p) noexcept {
    unsigned d = 0;
    while (p >>= 1) ++d;
    return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) noexcept {
    const unsigned db = poly_degree(b);
    while (a != 0 && poly_degree(a) >= db) a ^= b << (poly_degree(a) - db);
    return a;
}

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%X", v);
    return buf;
}

void check_degree(unsigned degree) {
    if (degree < kMinDegree || degree > kMaxDegree) {
        throw FieldError("field degree " + std::to_string(degree) + " outside [3, 17]");
    }
}

}  // namespace

std::uint32_t default_modulus(unsigned degree) {
    check_degree(degree);
    return kDefaultModuli[degree - kMinDegree].second;
}

std::span<const std::pair<unsigned, std::uint32_t>> default_modulus_table() { return kDefaultModuli; }

bool is_irreducible(std::uint32_t poly, unsigned degree) {
    if (poly_degree(poly) != degree || (poly & 1u) == 0) return false;
    for (std::uint64_t d = 2; d < (std::uint64_t{1} << (degree / 2 + 1)); ++d) {
        if (poly_degree(d) > degree / 2) break;
        if (poly_mod(poly, d) == 0) return false;
    }
    return true;
}

Element mul_reference(Element a, Element b, std::uint32_t modulus, unsigned degree) noexcept {
    Element r = 0;
    const Element top = Element{1} << degree;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= modulus;
    }
    return r;
}

bool is_primitive(std::uint32_t poly, unsigned degree) {
    if (poly_degree(poly) != degree || (poly & 1u) == 0) return false;
    const std::uint32_t order = (std::uint32_t{1} << degree) - 1;
    Element v = 1;
    for (std::uint32_t i = 1; i <= order; ++i) {
        v = mul_reference(v, 2, poly, degree);
        if (v == 1) return i == order;
    }
    return false;
}

Field::Field(unsigned degree, std::optional<std::uint32_t> modulus) {
    check_degree(degree);
    const std::uint32_t poly = modulus.value_or(default_modulus(degree));
    if (poly_degree(poly) != degree) {
        throw FieldError("modulus " + hex(poly) + " does not have degree " + std::to_string(degree));
    }
    if (!is_irreducible(poly, degree)) throw FieldError("modulus is reducible over GF(2)");
    if (!is_primitive(poly, degree)) throw FieldError("modulus is irreducible but not primitive");

    auto t = std::make_shared<Tables>();
    t->degree = degree;
    t->modulus = poly;
    const std::uint32_t size = std::uint32_t{1} << degree;
    const std::uint32_t order = size - 1;
    t->exp.resize(2 * static_cast<std::size_t>(order));
    t->log.assign(size, 0);
    Element v = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
        t->exp[i] = v;
        t->log[v] = i;
        v <<= 1;
        if (v & size) v ^= poly;
    }
    for (std::uint32_t i = order; i < 2 * order; ++i) t->exp[i] = t->exp[i - order];
    tables_ = std::move(t);
}

Element Field::inv(Element a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(2^z)");
    return tables_->exp[(order() - tables_->log[a]) % order()];
}

Element Field::div(Element a, Element b) const {
    if (b == 0) throw std::domain_error("division by zero in GF(2^z)");
    if (a == 0) return 0;
    return tables_->exp[tables_->log[a] + order() - tables_->log[b]];
}

Element Field::pow(Element a, std::uint64_t e) const noexcept {
    Element result = 1;
    Element base = a;
    while (e) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

}  // namespace brc::gf
