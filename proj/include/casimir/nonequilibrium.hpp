#pragma once

// Out-of-equilibrium atom-wall force for a substrate at T_S in an
// environment at T_E:
//
//   F(x, T_S, T_E) = F_CP(x, T_E) + F_n(x, T_S) - F_n(x, T_E)
//   F_n(x, T)      = -K Int_0^inf dw Int dt f(w, t) e^{-2wtx/c},
//   K              = 2 sqrt(2) hbar alpha0 / (pi c^4),
//   f(w, t)        = w^4 t^2 / (e^{hbar w / k_B T} - 1) [|p| + Re eps - 1 - t^2]^{1/2}
//                    * [ 1/|sqrt(p) + i t|^2 + (2t^2 + 1)(t^2 + 1 + |p|) / |sqrt(p) + i eps t|^2 ],
//   p              = eps(w) - 1 - t^2.
//
// The t-integration runs over 0 < t < sqrt(Re eps(w) - 1), where
// Re p >= 0. For a real permittivity that is the whole support of f.
// For a complex permittivity f has a tail beyond that point, proportional
// to Im eps at each frequency; TIntegration::unbounded keeps it (see
// README, "Nonequilibrium t-range").

#include "casimir/core.hpp"
#include "casimir/equilibrium.hpp"
#include "casimir/materials.hpp"
#include "casimir/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace casimir {

enum class TIntegration {
    truncated, // 0 < t < sqrt(Re eps - 1)
    unbounded, // 0 < t < inf
};

/// F_CP(x, T_E), F_n(x, T_S), F_n(x, T_E) at one separation, in dyn.
struct ForceComponents {
    double f_cp = 0.0;
    double f_n_ts = 0.0;
    double f_n_te = 0.0;
    double total() const { return f_cp + (f_n_ts - f_n_te); }
};

namespace detail {

// sqrt(|p| + Re p) is evaluated as sqrt(2) Re sqrt(p), which has no
// cancellation when Re p < 0 and Im p is tiny.
inline double f_core(std::complex<double> eps, double omega, double t, double T)
{
    const double t2 = t * t;
    const std::complex<double> p = eps - (1.0 + t2);
    const std::complex<double> root_p = std::sqrt(p);
    const double root = std::sqrt(2.0) * root_p.real();
    if (!(root > 0.0))
        return 0.0;
    const double occupation = std::expm1(kPhys.hbar * omega / (kPhys.k_B * T));
    const double w2 = omega * omega;
    const double planck = w2 * w2 * t2 / occupation;
    if (planck == 0.0)
        return 0.0;
    constexpr std::complex<double> i{0.0, 1.0};
    const double first = 1.0 / std::norm(root_p + i * t);
    // Divide first: both factors grow like t^2 and the product can overflow.
    const double second = (2.0 * t2 + 1.0) / std::norm(root_p + i * eps * t) * (t2 + 1.0 + std::abs(p));
    return planck * root * (first + second);
}

inline double thermal_prefactor(double alpha0)
{
    const double c2 = kPhys.c * kPhys.c;
    return 2.0 * std::sqrt(2.0) * kPhys.hbar * alpha0 / (kPi * c2 * c2);
}

// Int dw Int dt f(w, t) e^{-2 w t L / c} weight(w t / c)
template <class Kernel>
double thermal_integral(const PermittivityModel& model, double T, const Kernel& kernel,
                        const QuadratureSettings& settings, TIntegration range)
{
    const double L = kernel.decay_length();
    const QuadratureSettings inner_settings = settings.with_rel_tol(std::max(0.1 * settings.rel_tol(), 1e-14));

    auto inner = [&](double omega) {
        const std::complex<double> eps = eps_real(model, omega);
        auto integrand = [&](double t) {
            const double q = omega * t / kPhys.c;
            const double damping = std::exp(-2.0 * q * L);
            if (damping == 0.0)
                return 0.0;
            const double f = f_core(eps, omega, t, T);
            if (f == 0.0)
                return 0.0;
            return f * damping * kernel.weight(q);
        };
        const double t_max_sq = eps.real() - 1.0;
        const double t_max = t_max_sq > 0.0 ? std::sqrt(t_max_sq) : 0.0;
        double value = 0.0;
        if (t_max > 0.0) {
            // t = t_max sin(phi) removes the square-root endpoint behaviour.
            auto mapped = [&](double phi) { return integrand(t_max * std::sin(phi)) * t_max * std::cos(phi); };
            value = integrate(mapped, 0.0, 0.5 * kPi, inner_settings).value;
        }
        if (range == TIntegration::unbounded) {
            // Just above t_max the integrand peaks like 1/sqrt(t - t_max);
            // t = t_max + w^2 smooths it.
            auto tail = [&](double w) { return integrand(t_max + w * w) * 2.0 * w; };
            const double decay = kPhys.c / (2.0 * omega * L);
            const double scale = std::sqrt(std::max(std::sqrt(std::abs(eps)), decay));
            value += integrate_semi_infinite(tail, scale, inner_settings).value;
        }
        return value;
    };

    const double thermal_scale = kPhys.k_B * T / kPhys.hbar;
    if (range == TIntegration::unbounded && model.is_conducting()) {
        // The t-tail of a conducting wall sits near omega ~ sigma0, many
        // decades below the thermal scale: integrate below it in ln(omega).
        auto below = [&](double v) {
            // Below ~1e-87 of the thermal scale the integrand falls off
            // at least like omega^2.
            if (v > 200.0)
                return 0.0;
            const double omega = thermal_scale * std::exp(-v);
            return inner(omega) * omega;
        };
        auto above = [&](double u) { return inner(thermal_scale + u); };
        return integrate_semi_infinite(below, 10.0, settings).value +
               integrate_semi_infinite(above, thermal_scale, settings).value;
    }
    return integrate_semi_infinite(inner, thermal_scale, settings).value;
}

} // namespace detail

/// f(omega, t) at temperature T, in s^-4.
inline double f_integrand(const PermittivityModel& model, double omega, double t, double T)
{
    if (!std::isfinite(omega) || !(omega > 0.0))
        throw DomainError("f_integrand: omega must be > 0");
    if (!std::isfinite(t) || !(t > 0.0))
        throw DomainError("f_integrand: t must be > 0");
    if (!std::isfinite(T) || !(T > 0.0))
        throw DomainError("f_integrand: T must be > 0");
    return detail::f_core(eps_real(model, omega), omega, t, T);
}

/// F_n(x, T) in dyn.
inline double f_n_force(const PermittivityModel& model, double alpha0, double x, double T,
                        const QuadratureSettings& settings = {}, TIntegration range = TIntegration::truncated)
{
    detail::require_force_args(x, T, alpha0);
    return -detail::thermal_prefactor(alpha0) *
           detail::thermal_integral(model, T, detail::PointKernel{x}, settings, range);
}

/// Phi_n(d, T): F_n with f(w, t) -> f(w, t) I_1(2awt/c) g(2R_x wt/c), x -> d.
inline double phi_n(const PermittivityModel& model, double d, double T, const TrapConfig& trap,
                    const QuadratureSettings& settings = {}, TIntegration range = TIntegration::truncated)
{
    detail::require_force_args(d, T, trap.alpha0());
    return -detail::thermal_prefactor(trap.alpha0()) *
           detail::thermal_integral(model, T, detail::condensate_kernel(d, trap), settings, range);
}

/// F(x, T_S, T_E) with its three parts. With T_S == T_E the two F_n terms
/// are the same number and cancel exactly.
inline ForceComponents total_force(const PermittivityModel& model, double alpha0, double x, double T_S, double T_E,
                                   const QuadratureSettings& settings = {})
{
    detail::require_force_args(x, T_S, alpha0);
    detail::require_force_args(x, T_E, alpha0);
    ForceComponents out;
    out.f_cp = casimir_polder_force(model, alpha0, x, T_E, settings);
    out.f_n_te = f_n_force(model, alpha0, x, T_E, settings);
    out.f_n_ts = (T_S == T_E) ? out.f_n_te : f_n_force(model, alpha0, x, T_S, settings);
    return out;
}

} // namespace casimir
