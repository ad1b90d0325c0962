#include "casimir/shift.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

using namespace casimir;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(Density, NormalisedAndBounded)
{
    for (double R : {1e-4, 2.69e-4, 1.0}) {
        const double norm =
            integrate([&](double x) { return density_profile(x, R); }, -R, R, QuadratureSettings{}).value;
        EXPECT_NEAR(norm, 1.0, 1e-14);
        EXPECT_EQ(density_profile(R, R), 0.0);
        EXPECT_DOUBLE_EQ(density_profile(0.0, R), 15.0 / (16.0 * R));
    }
    EXPECT_THROW(density_profile(1.1, 1.0), DomainError);
    EXPECT_THROW(density_profile(0.0, 0.0), DomainError);
}

TEST(DirectAverage, InverseFourthPowerLaw)
{
    // F = -C/x^4 = -(8C/3) Int k^3 e^{-2kx} dk, so its average is
    // -(8C/3) Int k^3 e^{-2kd} I_1(2ka) g(2kR) dk.
    const TrapConfig trap;
    const double C = 1e-36;
    const double d = 7e-4;
    const double L = d - trap.reach();
    auto k_form = [&](double k) {
        return k * k * k * std::exp(-2.0 * k * L) * scaled_i1(2.0 * k * trap.a()) * scaled_g(2.0 * k * trap.R_x());
    };
    const double analytic =
        -(8.0 * C / 3.0) * integrate_semi_infinite(k_form, 0.5 / L, QuadratureSettings(1e-12, 0, 4000, 1e-12)).value;
    auto law = [&](double x) { return std::array<double, 1>{-C / std::pow(x, 4)}; };
    const auto direct = direct_average<1>(law, d, trap, 1e-10);
    EXPECT_LT(rel(direct[0], analytic), 1e-8);
}

TEST(DirectAverage, LinearForceGivesSpringShift)
{
    // F = -c x averages to c a / 2, i.e. omega_0^2 - omega_x^2 = c / m.
    const TrapConfig trap;
    const double c = 3e-10;
    auto law = [&](double x) { return std::array<double, 1>{-c * x}; };
    const auto phi = direct_average<1>(law, 7e-4, trap, 1e-10);
    EXPECT_LT(rel(phi[0], 0.5 * c * trap.a()), 1e-10);
}

TEST(Gamma, FromPhi)
{
    const TrapConfig trap;
    const double phi = -9.416187744692281e-24;
    EXPECT_DOUBLE_EQ(gamma_from_phi(phi, trap), -phi / (trap.m() * trap.a() * trap.omega0() * trap.omega0()));
    EXPECT_EQ(gamma_from_phi(phi, trap), gamma_from_phi(-phi, trap));
}

TEST(Gamma, EquilibriumReferenceAt7um)
{
    const TrapConfig trap;
    const auto r = gamma_x(PermittivityModel{}, ThermalScenario(7e-4, 310.0, 310.0), trap);
    EXPECT_EQ(r.decomposition.phi_n_ts, r.decomposition.phi_n_te);
    EXPECT_LT(rel(r.gamma_x, gamma_from_phi(-9.416187744692281e-24, trap)), 1e-8);
    EXPECT_NEAR(r.gamma_x, 1.2608e-4, 1e-8);
    EXPECT_EQ(r.d, 7e-4);
    EXPECT_EQ(r.T_S, 310.0);
}

TEST(Gamma, VacuumWallGivesNoShift)
{
    const TrapConfig trap;
    const ThermalScenario sc(8e-4, 605.0, 310.0);
    EXPECT_EQ(gamma_x(PermittivityModel::vacuum(), sc, trap).gamma_x, 0.0);
    EXPECT_EQ(gamma_x_direct(PermittivityModel::vacuum(), sc, trap).gamma_x, 0.0);
}

TEST(Gamma, RejectsSeparationInsideReach)
{
    const TrapConfig trap;
    EXPECT_THROW(gamma_x(PermittivityModel{}, ThermalScenario(5e-4, 310, 310), trap), ConfigError);
    EXPECT_THROW(gamma_x_direct(PermittivityModel{}, ThermalScenario(trap.reach(), 310, 310), trap), ConfigError);
}

TEST(Gamma, HotterSubstrateAndCloserWallShiftMore)
{
    const TrapConfig trap;
    const PermittivityModel bare;
    for (double d : {6.5e-4, 9e-4, 11e-4}) {
        const double eq = gamma_x(bare, ThermalScenario(d, 310, 310), trap).gamma_x;
        const double mid = gamma_x(bare, ThermalScenario(d, 479, 310), trap).gamma_x;
        const double hot = gamma_x(bare, ThermalScenario(d, 605, 310), trap).gamma_x;
        EXPECT_LT(eq, mid);
        EXPECT_LT(mid, hot);
    }
    EXPECT_GT(gamma_x(bare, ThermalScenario(7e-4, 605, 310), trap).gamma_x,
              gamma_x(bare, ThermalScenario(8e-4, 605, 310), trap).gamma_x);
}

TEST(Gamma, DirectRouteAgrees)
{
    const TrapConfig trap;
    const ThermalScenario sc(8e-4, 479.0, 310.0);
    const auto a = gamma_x(PermittivityModel{}, sc, trap);
    const auto b = gamma_x_direct(PermittivityModel{}, sc, trap);
    EXPECT_LT(rel(b.gamma_x, a.gamma_x), 1e-3);
    EXPECT_LT(rel(b.decomposition.phi_e, a.decomposition.phi_e), 1e-5);
    EXPECT_LT(rel(b.decomposition.phi_n_ts, a.decomposition.phi_n_ts), 1e-5);
    EXPECT_EQ(b.decomposition.f_cp, a.decomposition.f_cp);
}

TEST(ForceCache, ComputesEachSeparationOnce)
{
    SeparationForceCache cache;
    std::atomic<int> calls{0};
    auto compute = [&](double x) {
        ++calls;
        return ForceComponents{x, 0.0, 0.0};
    };
    EXPECT_EQ(cache.get(1.0, compute).f_cp, 1.0);
    EXPECT_EQ(cache.get(1.0, compute).f_cp, 1.0);
    EXPECT_EQ(cache.get(2.0, compute).f_cp, 2.0);
    EXPECT_EQ(calls.load(), 2);
    EXPECT_EQ(cache.size(), 2u);
}
