#include "qlambert/dual.hpp"

#include <ostream>

namespace qlambert {

Dual Dual::inverse() const
{
    if (value_.is_zero()) {
        throw DivisionByZero("inverse of a dual number with zero value part");
    }
    Rational inv = value_.inverse();
    return {inv, -deriv_ * inv * inv};
}

Dual Dual::pow(std::int64_t k) const
{
    if (k < 0) {
        return inverse().pow(-k);
    }
    if (k == 0) {
        return Dual(1);
    }
    // d(v^k) = k v^(k-1) dv
    return {value_.pow(k), Rational(k) * value_.pow(k - 1) * deriv_};
}

Dual& Dual::operator+=(const Dual& o)
{
    value_ += o.value_;
    deriv_ += o.deriv_;
    return *this;
}

Dual& Dual::operator-=(const Dual& o)
{
    value_ -= o.value_;
    deriv_ -= o.deriv_;
    return *this;
}

Dual& Dual::operator*=(const Dual& o)
{
    deriv_ = value_ * o.deriv_ + deriv_ * o.value_;
    value_ *= o.value_;
    return *this;
}

Dual& Dual::operator/=(const Dual& o)
{
    return *this *= o.inverse();
}

std::ostream& operator<<(std::ostream& os, const Dual& d)
{
    return os << d.value_ << " + " << d.deriv_ << "e";
}

} // namespace qlambert
