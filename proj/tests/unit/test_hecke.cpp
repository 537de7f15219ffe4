#include "overpart/congruence.hpp"
#include "overpart/hecke.hpp"

#include "support/seed.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace overpart;

TEST(Sturm, IndexAndBounds)
{
    EXPECT_EQ(index_gamma0(1), 1U);
    EXPECT_EQ(index_gamma0(2), 3U);
    EXPECT_EQ(index_gamma0(16), 24U);
    EXPECT_EQ(index_gamma0(12), 24U);
    EXPECT_EQ(sturm_bound({9, 16}), 9U);
    EXPECT_EQ(sturm_bound({16, 2}), 2U);
    for (std::uint32_t m : {5U, 7U, 11U, 13U, 17U, 19U}) {
        EXPECT_EQ(sturm_bound({m - 2, 16}), m - 2);
    }
}

TEST(Hecke, ConstantTerm)
{
    const RationalRing Q;
    for (int k = 3; k <= 9; k += 2) {
        const auto ctx = hecke_context(k);
        for (std::uint64_t ell : {3U, 5U, 7U}) {
            auto constant = [](std::uint64_t i) { return i == 0 ? Rational(1) : Rational(0); };
            const auto v = hecke_half_integral_coeff(ctx, ell, Q, constant, 0);
            EXPECT_EQ(v, 1 + Rational(ipow(Integer(static_cast<unsigned long>(ell)), 2 * ctx.lambda() - 1)));
        }
    }
}

TEST(Hecke, WeightThreeHalvesAndFiveHalvesEisenstein)
{
    const auto e34 = eis_series({3, 4, false, {}}, 9 * 40);
    const auto img = hecke_half_integral(hecke_context(3), 3, e34);
    EXPECT_EQ(img.trunc(), 40U);
    EXPECT_EQ(img, scale(Rational(4), e34.truncated(40)));

    const auto e54 = eis_series({5, 4, false, {}}, 25 * 12);
    EXPECT_EQ(hecke_half_integral(hecke_context(5), 5, e54), scale(Rational(126), e54.truncated(12)));
}

TEST(Hecke, Rejections)
{
    const Series<RationalRing> s(RationalRing{}, 100);
    EXPECT_THROW(hecke_half_integral(hecke_context(3), 2, s), std::invalid_argument);
    EXPECT_THROW(hecke_half_integral(hecke_context(3), 9, s), std::invalid_argument);
    EXPECT_THROW(hecke_half_integral(hecke_context(3), 11, s), std::invalid_argument);
    EXPECT_THROW(hecke_context(4), std::invalid_argument);
}

TEST(Hecke, MiddleTermCharacterOnSquares)
{
    for (int k = 3; k <= 9; k += 2) {
        const unsigned lambda = (k - 1) / 2;
        for (std::int64_t ell : {3, 5, 7, 11}) {
            for (std::int64_t t = 1; t * t <= 50; ++t) {
                const std::int64_t n = t * t;
                if (n % ell == 0) {
                    continue;
                }
                const std::int64_t signed_n = (lambda % 2 == 1) ? -n : n;
                const std::int64_t unit = (lambda % 2 == 1) ? -1 : 1;
                EXPECT_EQ(kronecker(signed_n, ell), kronecker(unit, ell));
            }
        }
    }
}

TEST(Hecke, IntegralTm)
{
    const IntegerRing Z;
    const auto one = Series<IntegerRing>::one(Z, 30);
    const auto t = hecke_integral_Tm(3, 4, one);
    EXPECT_EQ(t[0], 1 + 27);
    for (std::size_t n = 1; n < t.trunc(); ++n) {
        EXPECT_EQ(t[n], 0);
    }
    Series<IntegerRing> q1(Z, 10);
    q1[1] = 1;
    const auto tq = hecke_integral_Tm(3, 2, q1);
    EXPECT_EQ(tq.trunc(), 4U);
    EXPECT_EQ(tq[3], 3);
    EXPECT_EQ(tq[0], 0);
    EXPECT_EQ(tq[1], 0);
    const auto e4 = level2_E4(100);
    EXPECT_EQ(reduce(hecke_integral_Tm(5, 4, e4), ModRing(5)), reduce(op_U(5, e4), ModRing(5)));
    // E_4 is a T(m) eigenform with eigenvalue sigma_3(m).
    EXPECT_EQ(hecke_integral_Tm(5, 4, e4), scale(Integer(126), e4.truncated(20)));
}

TEST(EigenformMod, ZeroSeriesIsAmbiguous)
{
    const Series<ModRing> zero(ModRing(7), 200);
    EXPECT_FALSE(is_eigenform_mod(zero, hecke_context(5), 3, 5).has_value());
    EXPECT_THROW(is_eigenform_mod(zero, hecke_context(5), 3, 50), std::invalid_argument);
}

TEST(EigenformMod, SmallPrimesFollowEisensteinEigenvalue)
{
    for (std::uint32_t m : {3U, 5U, 7U, 11U}) {
        const auto p = prime_params(m);
        const auto bound = gm_sturm_bound(p);
        const auto g = build_gm(p, 37 * 37 * bound + 1);
        for (std::uint64_t ell : odd_primes(3, 37)) {
            const auto lambda = is_eigenform_mod(g, hecke_context(p.k), ell, bound);
            ASSERT_TRUE(lambda.has_value()) << m << " " << ell;
            EXPECT_EQ(*lambda, eisenstein_eigenvalue(m, ell)) << m << " " << ell;
        }
    }
}

TEST(EigenformMod, RandomPrimesUpToAThousand)
{
    std::mt19937_64 rng(test_seed());
    auto primes = odd_primes(41, 1000);
    std::shuffle(primes.begin(), primes.end(), rng);
    const std::vector<std::uint64_t> chosen(primes.begin(), primes.begin() + 20);
    const auto maxl = *std::max_element(chosen.begin(), chosen.end());
    ResidueStore store;
    for (std::uint32_t m : {3U, 5U, 7U, 11U}) {
        const auto p = prime_params(m);
        const auto bound = gm_sturm_bound(p);
        const auto fu = f_U_m(m, maxl * maxl * bound + 1, store);
        for (std::uint64_t ell : chosen) {
            const auto lambda = is_eigenform_mod(fu, hecke_context(p.k), ell, bound);
            ASSERT_TRUE(lambda.has_value()) << m << " " << ell << " seed=" << test_seed();
            EXPECT_EQ(*lambda, eisenstein_eigenvalue(m, ell)) << m << " " << ell;
        }
    }
}
