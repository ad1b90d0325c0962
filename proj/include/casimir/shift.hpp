#pragma once

// Fractional shift gamma_x = |omega_0 - omega_x| / omega_0 of the dipole
// oscillation of a condensate held at distance d from the wall.
//
// Two routes:
//  * gamma_x: the force averaged analytically over the Thomas-Fermi
//    profile and the oscillation,
//      gamma_x = |Phi_e(d, T_E) + Phi_n(d, T_S) - Phi_n(d, T_E)| / (m a omega_0^2).
//    This uses omega_0^2 - omega_x^2 ~ 2 omega_0^2 gamma_x.
//  * gamma_x_direct: omega_0^2 - omega_x^2 from the double integral
//      -(omega_0 / (pi a m)) Int_0^{2pi/omega_0} dtau cos(omega_0 tau)
//          Int_{-R}^{R} dx n0(x) F(d + x + a cos(omega_0 tau), T_S, T_E)
//    done by brute-force quadrature, then omega_x taken exactly.
// The two agree up to the linearisation, a relative O(gamma_x) effect.

#include "casimir/core.hpp"
#include "casimir/equilibrium.hpp"
#include "casimir/materials.hpp"
#include "casimir/nonequilibrium.hpp"
#include "casimir/numerics/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>

namespace casimir {

/// Averaged (phi_*) and pointwise at x = d (f_*) force components, in dyn.
struct ForceDecomposition {
    double phi_e = 0.0;
    double phi_n_ts = 0.0;
    double phi_n_te = 0.0;
    double f_cp = 0.0;
    double f_n_ts = 0.0;
    double f_n_te = 0.0;

    double phi_total() const { return phi_e + (phi_n_ts - phi_n_te); }
    double f_total() const { return f_cp + (f_n_ts - f_n_te); }
};

struct FrequencyShiftResult {
    double gamma_x = 0.0;
    ForceDecomposition decomposition;
    double d = 0.0;
    double T_S = 0.0;
    double T_E = 0.0;
};

/// Thomas-Fermi density along x, normalised to 1 on [-R_x, R_x].
inline double density_profile(double x_tilde, double R_x)
{
    if (!std::isfinite(R_x) || !(R_x > 0.0))
        throw DomainError("density_profile: R_x must be > 0");
    if (!std::isfinite(x_tilde) || std::abs(x_tilde) > R_x)
        throw DomainError("density_profile: |x| must not exceed R_x");
    const double u = x_tilde / R_x;
    const double w = 1.0 - u * u;
    return 15.0 / (16.0 * R_x) * w * w;
}

/// gamma_x from an averaged total force Phi (dyn).
inline double gamma_from_phi(double phi_total, const TrapConfig& trap)
{
    return std::abs(phi_total) / (trap.m() * trap.a() * trap.omega0() * trap.omega0());
}

inline FrequencyShiftResult gamma_x(const PermittivityModel& model, const ThermalScenario& scenario,
                                    const TrapConfig& trap, const QuadratureSettings& settings = {})
{
    scenario.require_clear_of(trap);
    const double d = scenario.d();
    FrequencyShiftResult out;
    out.d = d;
    out.T_S = scenario.T_S();
    out.T_E = scenario.T_E();

    auto& dec = out.decomposition;
    dec.phi_e = phi_e(model, d, scenario.T_E(), trap, settings);
    dec.phi_n_te = phi_n(model, d, scenario.T_E(), trap, settings);
    dec.phi_n_ts = scenario.in_equilibrium() ? dec.phi_n_te : phi_n(model, d, scenario.T_S(), trap, settings);

    const ForceComponents pointwise =
        total_force(model, trap.alpha0(), d, scenario.T_S(), scenario.T_E(), settings);
    dec.f_cp = pointwise.f_cp;
    dec.f_n_ts = pointwise.f_n_ts;
    dec.f_n_te = pointwise.f_n_te;

    out.gamma_x = gamma_from_phi(dec.phi_total(), trap);
    return out;
}

/// Memoises F(x, T_S, T_E) by separation. Safe for concurrent use.
class SeparationForceCache {
public:
    template <class Compute>
    ForceComponents get(double x, Compute&& compute)
    {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(x); it != cache_.end())
                return it->second;
        }
        const ForceComponents value = compute(x);
        std::lock_guard lock(mutex_);
        cache_.emplace(x, value);
        return value;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

private:
    mutable std::mutex mutex_;
    std::unordered_map<double, ForceComponents> cache_;
};

/// Direct double average of a force law x -> {F_0(x), F_1(x), ...} (dyn):
///   Phi_k = -(1/pi) Int_0^pi dtheta cos(theta) Int dx n0(x) F_k(d + x + a cos(theta)),
/// so that omega_0^2 - omega_x^2 = 2 Phi / (a m).
template <std::size_t N, class ForceLaw>
std::array<double, N> direct_average(ForceLaw&& force, double d, const TrapConfig& trap, double rel_tol)
{
    const QuadratureSettings outer(rel_tol, 0.0, 2000, 1e-12);
    const QuadratureSettings inner = outer.with_rel_tol(std::max(0.1 * rel_tol, 1e-14));
    const double R = trap.R_x();
    const double a = trap.a();

    // By symmetry of cos(theta) about pi the period reduces to [0, pi].
    auto over_theta = [&](double theta) {
        const double c = std::cos(theta);
        auto over_cloud = [&](double xt) {
            const double n = density_profile(xt, R);
            const std::array<double, N> f = force(d + xt + a * c);
            std::array<double, N> out;
            for (std::size_t k = 0; k < N; ++k)
                out[k] = n * f[k];
            return out;
        };
        auto cloud = integrate_vec<N>(over_cloud, -R, R, inner).value;
        for (auto& v : cloud)
            v *= c;
        return cloud;
    };
    auto integral = integrate_vec<N>(over_theta, 0.0, kPi, outer).value;
    for (auto& v : integral)
        v = -v / kPi;
    return integral;
}

/// gamma_x from a direct numerical average of F over the cloud and the
/// oscillation phase, without linearising in the shift.
inline FrequencyShiftResult gamma_x_direct(const PermittivityModel& model, const ThermalScenario& scenario,
                                           const TrapConfig& trap, const QuadratureSettings& settings = {},
                                           double averaging_rel_tol = 1e-6)
{
    scenario.require_clear_of(trap);
    const double d = scenario.d();
    SeparationForceCache cache;
    auto compute = [&](double x) {
        return total_force(model, trap.alpha0(), x, scenario.T_S(), scenario.T_E(), settings);
    };
    auto force = [&](double x) {
        const ForceComponents f = cache.get(x, compute);
        return std::array<double, 4>{f.total(), f.f_cp, f.f_n_ts, f.f_n_te};
    };
    const std::array<double, 4> phi = direct_average<4>(force, d, trap, averaging_rel_tol);

    FrequencyShiftResult out;
    out.d = d;
    out.T_S = scenario.T_S();
    out.T_E = scenario.T_E();
    auto& dec = out.decomposition;
    dec.phi_e = phi[1];
    dec.phi_n_ts = phi[2];
    dec.phi_n_te = phi[3];
    const ForceComponents at_center = cache.get(d, compute);
    dec.f_cp = at_center.f_cp;
    dec.f_n_ts = at_center.f_n_ts;
    dec.f_n_te = at_center.f_n_te;

    const double w0 = trap.omega0();
    const double w0_sq = w0 * w0;
    const double shift_sq = 2.0 * phi[0] / (trap.a() * trap.m()); // omega_0^2 - omega_x^2
    if (!(shift_sq < w0_sq))
        throw NumericalError("direct average: omega_0^2 - omega_x^2 >= omega_0^2, force too strong for a bound "
                             "oscillation");
    const double wx = std::sqrt(w0_sq - shift_sq);
    out.gamma_x = std::abs(shift_sq / (w0 + wx)) / w0;
    return out;
}

} // namespace casimir
