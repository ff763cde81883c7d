#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace brc::gf {

/// A field element: z coefficient bits of a polynomial over GF(2), bit i = coefficient of x^i.
using Element = std::uint32_t;

inline constexpr unsigned kMinDegree = 3;
inline constexpr unsigned kMaxDegree = 17;

/// Version of the built-in modulus table. Changing any entry changes codewords.
inline constexpr unsigned kModulusTableVersion = 1;

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Default primitive polynomial for `degree`, as a (degree+1)-bit mask.
std::uint32_t default_modulus(unsigned degree);

/// (degree, modulus) rows of the built-in table, degrees 3..17.
std::span<const std::pair<unsigned, std::uint32_t>> default_modulus_table();

bool is_irreducible(std::uint32_t poly, unsigned degree);
/// True iff x has multiplicative order 2^degree - 1 modulo `poly`.
bool is_primitive(std::uint32_t poly, unsigned degree);

/// Shift-and-add product modulo `modulus`; table free, used to cross-check the tables.
Element mul_reference(Element a, Element b, std::uint32_t modulus, unsigned degree) noexcept;

/// GF(2^z) for 3 <= z <= 17. Cheap to copy: the log/antilog tables are shared and immutable.
class Field {
public:
    /// Throws FieldError for out-of-range degree, or a modulus that is reducible or not primitive.
    explicit Field(unsigned degree, std::optional<std::uint32_t> modulus = std::nullopt);

    unsigned degree() const noexcept { return tables_->degree; }
    std::uint32_t modulus() const noexcept { return tables_->modulus; }
    std::uint32_t size() const noexcept { return std::uint32_t{1} << degree(); }
    /// Order of the multiplicative group, 2^z - 1.
    std::uint32_t order() const noexcept { return size() - 1; }

    static Element add(Element a, Element b) noexcept { return a ^ b; }

    Element mul(Element a, Element b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return tables_->exp[tables_->log[a] + tables_->log[b]];
    }

    /// Throws std::domain_error for a == 0.
    Element inv(Element a) const;
    Element div(Element a, Element b) const;
    /// Square-and-multiply; pow(0, 0) == 1.
    Element pow(Element a, std::uint64_t e) const noexcept;

    /// Primitive element x raised to `i`, for any non-negative i.
    Element exp(std::uint64_t i) const noexcept { return tables_->exp[i % order()]; }
    /// Discrete log base x; a must be non-zero.
    std::uint32_t log(Element a) const noexcept { return tables_->log[a]; }

    /// exp table of length 2*order (so exp[i + j] needs no reduction) and log table of length size.
    std::span<const std::uint32_t> exp_table() const noexcept { return tables_->exp; }
    std::span<const std::uint32_t> log_table() const noexcept { return tables_->log; }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.degree() == b.degree() && a.modulus() == b.modulus();
    }

private:
    struct Tables {
        unsigned degree;
        std::uint32_t modulus;
        std::vector<std::uint32_t> exp;
        std::vector<std::uint32_t> log;
    };
    std::shared_ptr<const Tables> tables_;
};

}  // namespace brc::gf
