#include "qlambert/rational.hpp"

#include <limits>
#include <ostream>

namespace qlambert {

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    v_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
            }
        }
        std::string digits(s.substr(s[0] == '+' ? 1 : 0));
        return BigInt(digits, 10);
    };
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::int64_t Rational::to_int64() const
{
    if (!is_integer()) {
        throw std::domain_error("rational " + str() + " is not an integer");
    }
    const BigInt& n = v_.get_num();
    if (!n.fits_slong_p()) {
        throw std::domain_error("integer " + str() + " out of range");
    }
    return n.get_si();
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("inverse of zero");
    }
    return Rational(mpq_class(1 / v_));
}

Rational Rational::abs() const
{
    return Rational(mpq_class(::abs(v_)));
}

Rational Rational::pow(std::int64_t k) const
{
    if (k < 0) {
        return inverse().pow(-k);
    }
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(k));
    // Powers of a reduced fraction stay reduced.
    mpq_class r;
    r.get_num() = num;
    r.get_den() = den;
    return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw DivisionByZero("division by zero");
    }
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const
{
    return v_.get_str(10);
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

} // namespace qlambert
