#include "casimir/materials.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace casimir;

TEST(Permittivity, DefaultIsConstant381)
{
    const PermittivityModel m;
    EXPECT_EQ(m.eps0(), 3.81);
    EXPECT_FALSE(m.is_conducting());
    for (double xi : {0.0, 1e10, 2.55e14, 1e17})
        EXPECT_EQ(eps_imag(m, xi), 3.81);
    EXPECT_EQ(eps_real(m, 1e13), std::complex<double>(3.81, 0.0));
}

TEST(Permittivity, RejectsInvalidModels)
{
    EXPECT_THROW(PermittivityModel(0.5), ConfigError);
    EXPECT_THROW(PermittivityModel(std::numeric_limits<double>::quiet_NaN()), ConfigError);
    EXPECT_THROW(PermittivityModel(3.0, {{2.5, 1e16, 0.0}}), ConfigError);
    EXPECT_THROW(PermittivityModel(3.0, {{0.5, -1e16, 0.0}}), ConfigError);
    EXPECT_THROW(PermittivityModel(3.0, {}, -1.0), ConfigError);
    EXPECT_NO_THROW(PermittivityModel(1.0));
}

TEST(Permittivity, ConductingStaticLimitIsRejected)
{
    const auto m = PermittivityModel{}.with_conductivity(1e2);
    EXPECT_THROW(eps_imag(m, 0.0), DomainError);
    EXPECT_THROW(eps_imag(m, -1.0), DomainError);
    EXPECT_THROW(eps_real(m, 0.0), DomainError);
    EXPECT_EQ(eps_imag(PermittivityModel{}.with_conductivity(0.0), 0.0), 3.81);
}

TEST(Permittivity, ConductivityNegligibleAtMatsubaraFrequencies)
{
    const PermittivityModel bare;
    for (double sigma : {1e-9, 1.0, 1e2}) {
        const auto aug = bare.with_conductivity(sigma);
        for (double T : {310.0, 479.0, 605.0})
            for (unsigned long l = 1; l <= 1000; ++l) {
                const double xi = matsubara_frequency(T, l);
                const double rel = std::abs(eps_imag(aug, xi) - eps_imag(bare, xi)) / eps_imag(bare, xi);
                ASSERT_LT(rel, 1e-10) << "sigma " << sigma << " T " << T << " l " << l;
            }
    }
}

TEST(Permittivity, OscillatorModelMonotoneAndAboveOne)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double eps0 = 1.0 + 10.0 * u(rng);
        std::vector<Oscillator> osc;
        double budget = eps0 - 1.0;
        for (int j = 0; j < 3; ++j) {
            const double f = budget * 0.5 * u(rng) + 1e-6;
            if (f >= budget)
                break;
            budget -= f;
            osc.push_back({f, std::pow(10.0, 13.0 + 4.0 * u(rng)), std::pow(10.0, 10.0 + 6.0 * u(rng))});
        }
        const PermittivityModel m(eps0, osc);
        double prev = eps_imag(m, 0.0);
        EXPECT_NEAR(prev, eps0, 1e-12 * eps0);
        for (double lx = 8.0; lx < 19.0; lx += 0.05) {
            const double e = eps_imag(m, std::pow(10.0, lx));
            ASSERT_TRUE(std::isfinite(e));
            ASSERT_GE(e, 1.0);
            ASSERT_LE(e, prev * (1.0 + 1e-15));
            prev = e;
        }
        for (double lx = 8.0; lx < 19.0; lx += 0.1)
            ASSERT_GE(eps_real(m.with_conductivity(u(rng)), std::pow(10.0, lx)).imag(), 0.0);
    }
}

TEST(Permittivity, StaticReflectionIsExact)
{
    const PermittivityModel bare;
    const double r0 = (3.81 - 1.0) / (3.81 + 1.0);
    EXPECT_EQ(r0_static(bare), r0);
    EXPECT_NEAR(r0, 0.584199, 1e-6);
    EXPECT_EQ(r0_static(bare.with_conductivity(0.0)), r0);
    for (double s : {std::numeric_limits<double>::denorm_min(), 1e-9, 1e-3, 1.0, 1e2, 1e3, 1e20})
        EXPECT_EQ(r0_static(bare.with_conductivity(s)), 1.0) << s;
    EXPECT_EQ(r0_static(bare.with_conductivity(5.0).without_conductivity()), r0);
    EXPECT_EQ(r0_static(PermittivityModel::vacuum()), 0.0);
}

TEST(Permittivity, MatsubaraFrequency)
{
    EXPECT_NEAR(matsubara_frequency(310.0, 1), 255004993032482.92, 1.0);
    EXPECT_DOUBLE_EQ(matsubara_frequency(310.0, 7), 7.0 * matsubara_frequency(310.0, 1));
    EXPECT_THROW(matsubara_frequency(0.0, 1), DomainError);
}
