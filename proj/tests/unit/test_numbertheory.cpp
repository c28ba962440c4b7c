#include <gtest/gtest.h>

#include "qlambert/numbertheory.hpp"

using namespace qlambert;

TEST(NumberTheory, Divisors)
{
    EXPECT_EQ(nt::divisors(1), (std::vector<std::int64_t>{1}));
    EXPECT_EQ(nt::divisors(4), (std::vector<std::int64_t>{1, 2, 4}));
    EXPECT_EQ(nt::divisors(6), (std::vector<std::int64_t>{1, 2, 3, 6}));
    EXPECT_THROW(nt::divisors(0), std::domain_error);
}

TEST(NumberTheory, Sigma)
{
    EXPECT_EQ(nt::sigma(1, 1), 1);
    EXPECT_EQ(nt::sigma(1, 6), 12);
    EXPECT_EQ(nt::sigma(0, 4), 3);
    EXPECT_EQ(nt::sigma(2, 4), 21);
    EXPECT_THROW(nt::sigma(1, 0), std::domain_error);
}

TEST(NumberTheory, WeightedDivisorSum)
{
    EXPECT_EQ(nt::weighted_divisor_sum(1, Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(nt::weighted_divisor_sum(4, Rational(1)), Rational(7));
    EXPECT_EQ(nt::weighted_divisor_sum(2, Rational(1, 2)), Rational(1));
    EXPECT_THROW(nt::weighted_divisor_sum(0, Rational(1)), std::domain_error);
    for (std::int64_t n = 1; n <= 200; ++n) {
        EXPECT_EQ(Rational(nt::sigma(1, n)), nt::weighted_divisor_sum(n, Rational(1)));
    }
}
