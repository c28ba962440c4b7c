#pragma once

#include <iosfwd>

#include "qlambert/rational.hpp"

namespace qlambert {

/// Exact dual number a + a'ε with ε² = 0.
///
/// Evaluating any builder with one parameter lifted to c + ε yields the
/// derivative with respect to that parameter in the ε part.
class Dual {
public:
    Dual() = default;
    Dual(std::int64_t v) : value_(v) {} // NOLINT(google-explicit-constructor)
    Dual(Rational v) : value_(std::move(v)) {} // NOLINT(google-explicit-constructor)
    Dual(Rational v, Rational d) : value_(std::move(v)), deriv_(std::move(d)) {}

    [[nodiscard]] const Rational& value() const { return value_; }
    [[nodiscard]] const Rational& deriv() const { return deriv_; }

    [[nodiscard]] Dual inverse() const;
    [[nodiscard]] Dual pow(std::int64_t k) const;

    Dual& operator+=(const Dual& o);
    Dual& operator-=(const Dual& o);
    Dual& operator*=(const Dual& o);
    Dual& operator/=(const Dual& o);

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(const Dual& a) { return {-a.value_, -a.deriv_}; }

    friend bool operator==(const Dual&, const Dual&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Dual& d);

private:
    Rational value_;
    Rational deriv_;
};

inline bool is_zero(const Dual& d) { return d.value().is_zero() && d.deriv().is_zero(); }
inline bool is_invertible(const Dual& d) { return !d.value().is_zero(); }
inline const Rational& value_part(const Dual& d) { return d.value(); }

} // namespace qlambert
