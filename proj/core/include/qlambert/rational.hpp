#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qlambert {

/// Arbitrary-precision integer used for exact counts such as sigma_k(n).
using BigInt = mpz_class;

/// Raised on division by an exact zero.
class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Every operation leaves the value canonical, so equality is structural:
/// two Rationals compare equal iff their numerators and denominators do.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : v_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den);

    /// Parses "p", "-p" or "p/r" (r > 0 after sign normalisation).
    static Rational parse(std::string_view text);

    [[nodiscard]] BigInt numerator() const { return v_.get_num(); }
    [[nodiscard]] BigInt denominator() const { return v_.get_den(); }

    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] bool is_one() const { return v_ == 1; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(v_); }

    /// Integer value; throws std::domain_error if not an integer or out of range.
    [[nodiscard]] std::int64_t to_int64() const;

    [[nodiscard]] Rational inverse() const;
    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational pow(std::int64_t k) const;

    /// "num/den", or just "num" for integers ("0" for zero).
    [[nodiscard]] std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}

    mpq_class v_;
};

// Uniform scalar interface shared with Dual, so templates can be written once.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_invertible(const Rational& r) { return !r.is_zero(); }
inline const Rational& value_part(const Rational& r) { return r; }

} // namespace qlambert
