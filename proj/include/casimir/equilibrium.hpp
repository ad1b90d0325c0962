#pragma once

// Equilibrium Casimir-Polder force on a ground-state atom at distance x
// from a dielectric half-space at temperature T (Lifshitz theory, static
// polarizability alpha0 at every Matsubara frequency):
//
//   F_CP(x, T) = -2 k_B T [ alpha0 r0 Int k^3 e^{-2kx} dk
//                           + sum_{l>=1} alpha0 Int k e^{-2 q_l x} h(xi_l, k) dk ]
//
// and its condensate average Phi_e(d, T), where each exponential picks up
// the factor I_1(2qa) g(2qR_x).
//
// The k-integrals of the l >= 1 terms are done in q = sqrt(k^2 + xi^2/c^2),
// using k dk = q dq, shifted so that the factor e^{-2 xi x / c} comes out
// of the integral analytically.

#include "casimir/core.hpp"
#include "casimir/materials.hpp"
#include "casimir/numerics/matsubara.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/special_functions.hpp"

#include <cmath>

namespace casimir {

struct ReflectionPair {
    double r_tm;
    double r_te;
};

/// Zero-frequency term and Matsubara series (l >= 1) of a force, in dyn.
struct EquilibriumTerms {
    double zero_frequency = 0.0;
    double matsubara = 0.0;
    double total() const { return zero_frequency + matsubara; }
};

namespace detail {

inline void require_reflection_args(double eps, double xi, double k)
{
    if (!std::isfinite(eps) || eps < 1.0)
        throw DomainError("reflection: eps must be finite and >= 1");
    if (!std::isfinite(xi) || xi < 0.0)
        throw DomainError("reflection: xi must be finite and >= 0");
    if (!std::isfinite(k) || k < 0.0 || (k == 0.0 && xi == 0.0))
        throw DomainError("reflection: k must be finite and > 0");
}

// Differences written without cancellation:
//   eps q - k_w = (eps - 1)((eps + 1) q^2 - qc^2) / (eps q + k_w)
//   q - k_w     = -(eps - 1) qc^2 / (q + k_w)
inline ReflectionPair reflection_from_q(double eps, double qc, double q)
{
    const double kw = std::sqrt(q * q + (eps - 1.0) * qc * qc);
    const double tm_den = eps * q + kw;
    const double te_den = q + kw;
    return {(eps - 1.0) * ((eps + 1.0) * q * q - qc * qc) / (tm_den * tm_den),
            -(eps - 1.0) * qc * qc / (te_den * te_den)};
}

inline double h_from_q(double eps, double qc, double q)
{
    const auto r = reflection_from_q(eps, qc, q);
    return (2.0 * q * q - qc * qc) * r.r_tm - qc * qc * r.r_te;
}

struct PointKernel {
    double x;
    double decay_length() const { return x; }
    double weight(double) const { return 1.0; }
};

// e^{-2qd} I_1(2qa) g(2qR) = e^{-2q(d-a-R)} scaled_i1(2qa) scaled_g(2qR)
struct CondensateKernel {
    double d;
    double a;
    double R;
    double decay_length() const { return d - a - R; }
    double weight(double q) const { return scaled_i1(2.0 * q * a) * scaled_g(2.0 * q * R); }
};

template <class Kernel>
double zero_frequency_integral(const Kernel& kernel, const QuadratureSettings& settings)
{
    const double L = kernel.decay_length();
    auto integrand = [&](double k) { return k * k * k * std::exp(-2.0 * k * L) * kernel.weight(k); };
    return integrate_semi_infinite(integrand, 0.5 / L, settings).value;
}

template <class Kernel>
double matsubara_term_integral(double eps, double xi, const Kernel& kernel, const QuadratureSettings& settings)
{
    const double L = kernel.decay_length();
    const double qc = xi / kPhys.c;
    const double outside = std::exp(-2.0 * qc * L);
    if (outside == 0.0)
        return 0.0;
    auto integrand = [&](double u) {
        const double q = qc + u;
        return q * h_from_q(eps, qc, q) * std::exp(-2.0 * u * L) * kernel.weight(q);
    };
    return outside * integrate_semi_infinite(integrand, 0.5 / L, settings).value;
}

template <class Kernel>
EquilibriumTerms equilibrium_terms(const PermittivityModel& model, double alpha0, double T, const Kernel& kernel,
                                   const QuadratureSettings& settings)
{
    const double prefactor = -2.0 * kPhys.k_B * T * alpha0;
    EquilibriumTerms terms;
    terms.zero_frequency = prefactor * r0_static(model) * zero_frequency_integral(kernel, settings);
    auto term = [&](std::size_t, double xi) {
        return matsubara_term_integral(eps_imag(model, xi), xi, kernel, settings);
    };
    terms.matsubara = prefactor * matsubara_sum(term, T, settings);
    return terms;
}

inline void require_force_args(double x, double T, double alpha0)
{
    if (!std::isfinite(x) || !(x > 0.0))
        throw DomainError("separation must be finite and > 0");
    if (!std::isfinite(T) || !(T > 0.0))
        throw DomainError("temperature must be finite and > 0");
    if (!std::isfinite(alpha0) || !(alpha0 > 0.0))
        throw DomainError("polarizability must be finite and > 0");
}

inline CondensateKernel condensate_kernel(double d, const TrapConfig& trap)
{
    if (!std::isfinite(d) || !(d > trap.reach()))
        throw DomainError("trap-center separation must exceed a + R_x");
    return {d, trap.a(), trap.R_x()};
}

} // namespace detail

/// Fresnel coefficients at imaginary frequency xi (rad/s) and in-plane
/// wave number k (1/cm). r_te <= 0 for eps > 1.
inline ReflectionPair reflection_imag(double eps, double xi, double k)
{
    detail::require_reflection_args(eps, xi, k);
    const double qc = xi / kPhys.c;
    return detail::reflection_from_q(eps, qc, std::sqrt(k * k + qc * qc));
}

/// h(xi, k) = (2 q^2 - xi^2/c^2) r_TM - (xi^2/c^2) r_TE, in cm^-2.
inline double h_kernel(double eps, double xi, double k)
{
    detail::require_reflection_args(eps, xi, k);
    const double qc = xi / kPhys.c;
    return detail::h_from_q(eps, qc, std::sqrt(k * k + qc * qc));
}

inline EquilibriumTerms casimir_polder_terms(const PermittivityModel& model, double alpha0, double x, double T,
                                             const QuadratureSettings& settings = {})
{
    detail::require_force_args(x, T, alpha0);
    return detail::equilibrium_terms(model, alpha0, T, detail::PointKernel{x}, settings);
}

/// F_CP(x, T) in dyn; negative means attraction.
inline double casimir_polder_force(const PermittivityModel& model, double alpha0, double x, double T,
                                   const QuadratureSettings& settings = {})
{
    return casimir_polder_terms(model, alpha0, x, T, settings).total();
}

/// The l = 0 term of F_CP alone, by quadrature.
inline double casimir_polder_zero_frequency(const PermittivityModel& model, double alpha0, double x, double T,
                                            const QuadratureSettings& settings = {})
{
    detail::require_force_args(x, T, alpha0);
    return -2.0 * kPhys.k_B * T * alpha0 * r0_static(model) *
           detail::zero_frequency_integral(detail::PointKernel{x}, settings);
}

/// Closed form of the zero-frequency term, -(3/4) k_B T alpha0 r0 / x^4.
inline double casimir_polder_static_asymptote(const PermittivityModel& model, double alpha0, double x, double T)
{
    detail::require_force_args(x, T, alpha0);
    const double x2 = x * x;
    return -0.75 * kPhys.k_B * T * alpha0 * r0_static(model) / (x2 * x2);
}

inline EquilibriumTerms phi_e_terms(const PermittivityModel& model, double d, double T, const TrapConfig& trap,
                                    const QuadratureSettings& settings = {})
{
    detail::require_force_args(d, T, trap.alpha0());
    return detail::equilibrium_terms(model, trap.alpha0(), T, detail::condensate_kernel(d, trap), settings);
}

/// Phi_e(d, T): equilibrium force averaged over the condensate profile
/// and one oscillation period, in dyn.
inline double phi_e(const PermittivityModel& model, double d, double T, const TrapConfig& trap,
                    const QuadratureSettings& settings = {})
{
    return phi_e_terms(model, d, T, trap, settings).total();
}

} // namespace casimir
