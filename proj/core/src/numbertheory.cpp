#include "qlambert/numbertheory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qlambert::nt {

namespace {

void require_positive(std::int64_t n)
{
    if (n < 1) {
        throw std::domain_error("divisor functions need n >= 1, got " + std::to_string(n));
    }
}

} // namespace

std::vector<std::int64_t> divisors(std::int64_t n)
{
    require_positive(n);
    std::vector<std::int64_t> small;
    std::vector<std::int64_t> large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) {
                large.push_back(n / d);
            }
        }
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

BigInt sigma(unsigned k, std::int64_t n)
{
    BigInt total = 0;
    for (auto d : divisors(n)) {
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), k);
        total += p;
    }
    return total;
}

Rational weighted_divisor_sum(std::int64_t n, const Rational& z)
{
    Rational total;
    for (auto d : divisors(n)) {
        total += Rational(d) * z.pow(d);
    }
    return total;
}

} // namespace qlambert::nt
