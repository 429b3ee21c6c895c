#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include <curvecount/numtheory.hpp>

using namespace curvecount;

namespace {

std::uint64_t brute_phi(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 1; i <= n; ++i) c += std::gcd(i, n) == 1;
    return c;
}

int brute_mu(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    return sign;
}

}  // namespace

TEST(Totient, Examples) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(12), 4u);
    EXPECT_EQ(euler_phi(30), 8u);
}

TEST(Moebius, Examples) {
    EXPECT_EQ(moebius(1), 1);
    EXPECT_EQ(moebius(4), 0);
    EXPECT_EQ(moebius(6), 1);
    EXPECT_EQ(moebius(30), -1);
}

TEST(Totient, MatchesGcdCountUpTo10000) {
    ArithmeticSieve sieve(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        auto b = brute_phi(n);
        ASSERT_EQ(euler_phi(n), b) << n;
        ASSERT_EQ(sieve.phi[n], b) << n;
    }
}

TEST(Moebius, MatchesTrialDivision) {
    ArithmeticSieve sieve(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        ASSERT_EQ(moebius(n), brute_mu(n)) << n;
        ASSERT_EQ(sieve.mu[n], brute_mu(n)) << n;
    }
}

TEST(Totient, DivisorSumIdentity) {
    EXPECT_TRUE(divisor_totient_check(1));
    EXPECT_TRUE(divisor_totient_check(12));
    EXPECT_TRUE(divisor_totient_check(360));
    for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_TRUE(divisor_totient_check(n)) << n;
}

TEST(Totient, MoebiusInversionIdentity) {
    for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_TRUE(moebius_inversion_check(n)) << n;
}

TEST(Divisors, SortedAndComplete) {
    EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(1), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(divisors(49), (std::vector<std::uint64_t>{1, 7, 49}));
}

TEST(TotientRatioSum, SmallValuesExact) {
    EXPECT_EQ(totient_ratio_sum(1).value, mpq_class(1));
    EXPECT_EQ(totient_ratio_sum(3).value, mpq_class(13, 6));
    mpq_class direct = 0;
    for (std::uint64_t m = 1; m <= 200; ++m) direct += mpq_class(euler_phi(m), m);
    direct.canonicalize();
    EXPECT_EQ(totient_ratio_sum(200).value, direct);
}

TEST(TotientRatioSum, BoundedByNAndIncreasing) {
    mpq_class prev = 0;
    for (std::uint64_t n = 1; n <= 60; ++n) {
        auto s = totient_ratio_sum(n);
        EXPECT_GT(s.value, prev);
        EXPECT_LE(s.value, mpq_class(n));
        prev = s.value;
    }
}

TEST(TotientRatioSum, LogarithmicEnvelope) {
    auto err = totient_ratio_errors(100000);
    for (std::uint64_t n = 2; n <= 100000; ++n) ASSERT_LE(std::abs(err[n]), totient_error_envelope(n)) << n;
    auto exact = totient_ratio_sum(100000);
    EXPECT_NEAR(exact.error, err[100000], 1e-6);
    EXPECT_LE(std::abs(exact.error), totient_error_envelope(100000));
}

TEST(MoebiusSquares, ConvergeWithInverseTail) {
    auto partial = moebius_square_partial_sums(5000);
    for (std::size_t n = 1; n <= 5000; ++n)
        ASSERT_LE(std::abs(partial[n] - six_over_pi_squared), 1.0 / static_cast<double>(n)) << n;
}
