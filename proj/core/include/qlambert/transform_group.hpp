#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qlambert/builders.hpp"

namespace qlambert::group {

/// A quadruple of Laurent monomials in (x, y, z, w). Row i holds the
/// exponents of x, y, z, w in the i-th component.
struct Monomial4 {
    using Row = std::array<std::int64_t, 4>;
    std::array<Row, 4> rows{};

    static Monomial4 identity();

    /// Matrix product: the quadruple obtained by substituting `rhs` into `*this`.
    friend Monomial4 operator*(const Monomial4& lhs, const Monomial4& rhs);
    friend bool operator==(const Monomial4&, const Monomial4&) = default;
    friend auto operator<=>(const Monomial4&, const Monomial4&) = default;

    [[nodiscard]] std::int64_t determinant() const;

    /// "(z/w, w, x*y, y)".
    [[nodiscard]] std::string str() const;
};

enum class Generator { S, T };

Monomial4 generator(Generator g);
char letter(Generator g);

/// g applied after m.
Monomial4 apply(Generator g, const Monomial4& m);

struct Element {
    Monomial4 matrix;
    /// Generator letters, leftmost applied last; empty for the identity.
    std::string word;
};

/// Breadth-first closure of {S, T}; each element carries one shortest word,
/// with S tried before T. The identity comes first.
std::vector<Element> closure();

/// Smallest k >= 1 with m^k = I, or 0 if none is found up to `limit`.
int order(const Monomial4& m, int limit = 1000);

/// Evaluates each component at the given parameter monomials. Components
/// with a negative total q-exponent are rejected.
template <typename S>
std::array<Param<S>, 4> act(const Monomial4& m, const std::array<Param<S>, 4>& p);

} // namespace qlambert::group
