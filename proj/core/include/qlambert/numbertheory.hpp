#pragma once

#include <cstdint>
#include <vector>

#include "qlambert/rational.hpp"

namespace qlambert::nt {

/// All positive divisors of n in ascending order (trial division). n >= 1.
std::vector<std::int64_t> divisors(std::int64_t n);

/// sigma_k(n) = sum of d^k over d | n; sigma(0, n) is the divisor count.
BigInt sigma(unsigned k, std::int64_t n);

/// sum over d | n of d * z^d.
Rational weighted_divisor_sum(std::int64_t n, const Rational& z);

} // namespace qlambert::nt
