#pragma once

// Self-checks of the force and shift calculations against closed forms,
// independent routes and the qualitative shape of the shift curves.
// Shared by `cpshift validate` and the acceptance test.

#include "casimir/core.hpp"
#include "casimir/equilibrium.hpp"
#include "casimir/materials.hpp"
#include "casimir/nonequilibrium.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/special_functions.hpp"
#include "casimir/scan.hpp"
#include "casimir/shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace casimir::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    QuadratureSettings settings;
    std::size_t scan_steps = 50;
    unsigned workers = 1;
    bool quick = false; // fewer distances in the expensive checks
};

/// sigma0 used for the "conductivity included" model (s^-1).
inline constexpr double kSigmaIncluded = 1e2;

inline const std::vector<std::pair<double, double>>& scenarios()
{
    static const std::vector<std::pair<double, double>> s{{310.0, 310.0}, {479.0, 310.0}, {605.0, 310.0}};
    return s;
}

namespace detail {

inline double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

inline double um(double v) { return to_internal(v, Unit::micrometer); }

} // namespace detail

/// l = 0 term by quadrature against -(3/4) k_B T alpha0 r0 / x^4.
inline CheckResult check_static_term(const Options& opt)
{
    const TrapConfig trap;
    double worst = 0.0;
    for (const auto& model : {PermittivityModel{}, PermittivityModel{}.with_conductivity(kSigmaIncluded)})
        for (double x_um : {6.5, 8.0, 11.0})
            for (double T : {310.0, 605.0}) {
                const double x = detail::um(x_um);
                const double q = casimir_polder_zero_frequency(model, trap.alpha0(), x, T, opt.settings);
                const double cf = casimir_polder_static_asymptote(model, trap.alpha0(), x, T);
                worst = std::max(worst, detail::rel_diff(q, cf));
            }
    return {"static term matches closed form", worst < 1e-9, detail::fmt("max rel diff %.3g (limit 1e-9)", worst)};
}

/// Phi_n is insensitive to sigma0 to six significant figures.
inline CheckResult check_phi_n_sigma_independence(const Options& opt)
{
    const TrapConfig trap;
    const PermittivityModel bare;
    std::vector<double> ds{6.5, 8.0, 10.0};
    if (opt.quick)
        ds = {8.0};
    double worst = 0.0;
    for (double d_um : ds)
        for (double T : {310.0, 479.0, 605.0}) {
            const double ref = phi_n(bare, detail::um(d_um), T, trap, opt.settings);
            for (double s : {0.0, 1e-9, 1e2, 1e3})
                worst = std::max(worst, detail::rel_diff(phi_n(bare.with_conductivity(s), detail::um(d_um), T, trap,
                                                               opt.settings),
                                                         ref));
        }
    return {"Phi_n independent of sigma0", worst <= 5e-7,
            detail::fmt("max rel spread %.3g (limit 5e-7, six significant figures)", worst)};
}

/// gamma(included) - gamma(neglected) is reproduced by swapping Phi_e only.
inline CheckResult check_conductivity_equilibrium_only(const Options& opt)
{
    const TrapConfig trap;
    const PermittivityModel bare;
    const PermittivityModel cond = bare.with_conductivity(kSigmaIncluded);
    const double d = detail::um(opt.quick ? 8.0 : 7.0);
    double worst = 0.0;
    for (const auto& [ts, te] : scenarios()) {
        const ThermalScenario sc(d, ts, te);
        const auto g_bare = gamma_x(bare, sc, trap, opt.settings);
        const auto g_cond = gamma_x(cond, sc, trap, opt.settings);
        const auto& db = g_bare.decomposition;
        const double delta_full = g_cond.gamma_x - g_bare.gamma_x;
        const double phi_e_swapped = g_cond.decomposition.phi_e + (db.phi_n_ts - db.phi_n_te);
        const double delta_phi_e = gamma_from_phi(phi_e_swapped, trap) - g_bare.gamma_x;
        worst = std::max(worst, detail::rel_diff(delta_full, delta_phi_e));
    }
    return {"conductivity acts through Phi_e only", worst < 1e-6,
            detail::fmt("max rel diff of gamma differences %.3g (limit 1e-6)", worst)};
}

/// r0 switch, and the resulting large-d equilibrium ratio.
inline CheckResult check_r0_switch(const Options& opt)
{
    const PermittivityModel bare;
    const double r0 = (bare.eps0() - 1.0) / (bare.eps0() + 1.0);
    bool exact = r0_static(bare) == r0 && r0_static(bare.with_conductivity(0.0)) == r0;
    for (double s : {1e-300, 1e-9, 1e-3, 1.0, 1e2, 1e3, 1e12})
        exact = exact && r0_static(bare.with_conductivity(s)) == 1.0;

    const TrapConfig trap;
    const ThermalScenario sc(detail::um(11.0), 310.0, 310.0);
    const double ratio = gamma_x(bare.with_conductivity(kSigmaIncluded), sc, trap, opt.settings).gamma_x /
                         gamma_x(bare, sc, trap, opt.settings).gamma_x;
    const double off = std::abs(ratio * r0 - 1.0);
    return {"r0 switch and large-d ratio", exact && off <= 0.05,
            std::string(exact ? "r0 exact" : "r0 NOT exact") +
                detail::fmt("; gamma ratio at 11 um %.6g vs 1/r0 = %.6g (limit 5%%)", ratio, 1.0 / r0)};
}

/// Hot substrate enhances the condensate-averaged force by about three.
inline CheckResult check_temperature_amplification(const Options& opt)
{
    const TrapConfig trap;
    const PermittivityModel bare;
    const double d = detail::um(7.0);
    const auto hot = gamma_x(bare, ThermalScenario(d, 605.0, 310.0), trap, opt.settings).decomposition;
    const auto eq = gamma_x(bare, ThermalScenario(d, 310.0, 310.0), trap, opt.settings).decomposition;
    const double averaged = std::abs(hot.phi_total()) / std::abs(eq.phi_total());
    const double pointwise = std::abs(hot.f_total()) / std::abs(eq.f_total());
    return {"605 K / 310 K force ratio at 7 um", averaged >= 2.5 && averaged <= 3.5,
            detail::fmt("condensate-averaged %.4g in [2.5, 3.5]; pointwise at x = d %.4g (informational)", averaged,
                        pointwise)};
}

/// Time and density averaging identities behind the I_1 and g factors.
inline CheckResult check_averaging_identities(const Options&)
{
    // abs_tol: the time average is O(z) while the integrand is O(1).
    const QuadratureSettings s(1e-12, 1e-13, 2000, 1e-12);
    double worst_time = 0.0;
    double worst_space = 0.0;
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        const double z = 0.01 * std::pow(20.0 / 0.01, static_cast<double>(i) / (n - 1));
        // (1/2pi) Int_0^{2pi} cos(t) e^{-z cos t} dt = -I_1(z)
        auto f = [z](double t) { return std::cos(t) * std::exp(-z * std::cos(t)); };
        const double avg = integrate(f, 0.0, 2.0 * kPi, s).value / (2.0 * kPi);
        worst_time = std::max(worst_time, detail::rel_diff(-avg, bessel_i1(z)));
    }
    const double R = 1.0;
    for (int i = 0; i < n; ++i) {
        const double kR = 0.01 * std::pow(15.0 / 0.01, static_cast<double>(i) / (n - 1));
        const double k = kR / R;
        auto f = [&](double x) { return density_profile(x, R) * std::exp(-2.0 * k * x); };
        const double avg = integrate(f, -R, R, s).value;
        worst_space = std::max(worst_space, detail::rel_diff(avg, g_kernel(2.0 * kR)));
    }
    return {"averaging identities for I_1 and g", worst_time < 1e-8 && worst_space < 1e-8,
            detail::fmt("time %.3g, density %.3g (limit 1e-8)", worst_time, worst_space)};
}

/// Analytic average against brute-force averaging of F.
inline CheckResult check_direct_route(const Options& opt)
{
    const TrapConfig trap;
    const PermittivityModel bare;
    std::vector<double> ds{6.5, 8.0, 10.0};
    if (opt.quick)
        ds = {8.0};
    double worst = 0.0;
    for (double d_um : ds)
        for (const auto& [ts, te] : scenarios()) {
            const ThermalScenario sc(detail::um(d_um), ts, te);
            worst = std::max(worst, detail::rel_diff(gamma_x(bare, sc, trap, opt.settings).gamma_x,
                                                     gamma_x_direct(bare, sc, trap, opt.settings).gamma_x));
        }
    return {"analytic vs direct averaging", worst < 1e-3, detail::fmt("max rel diff %.3g (limit 1e-3)", worst)};
}

/// Shape of the shift curves over [6.5, 11] um.
inline CheckResult check_scan_shape(const Options& opt)
{
    std::string detail_text;
    bool ok = true;
    for (const auto& [ts, te] : scenarios()) {
        ScanSpec spec;
        spec.d_min = detail::um(6.5);
        spec.d_max = detail::um(11.0);
        spec.steps = opt.quick ? std::min<std::size_t>(opt.scan_steps, 8) : opt.scan_steps;
        spec.T_S = ts;
        spec.T_E = te;
        spec.variants = {{"bare", PermittivityModel{}},
                         {"conducting", PermittivityModel{}.with_conductivity(kSigmaIncluded)}};
        spec.settings = opt.settings;
        spec.workers = opt.workers;
        const ScanTable table = run_scan(spec);
        const auto bare = table.gamma_column(0);
        const auto cond = table.gamma_column(1);
        std::size_t bad_order = 0, bad_monotone = 0;
        for (std::size_t i = 0; i < bare.size(); ++i) {
            if (!(cond[i] > bare[i]))
                ++bad_order;
            if (i > 0 && !(bare[i] < bare[i - 1] && cond[i] < cond[i - 1]))
                ++bad_monotone;
        }
        const bool scenario_ok = table.failures() == 0 && bad_order == 0 && bad_monotone == 0;
        ok = ok && scenario_ok;
        if (!detail_text.empty())
            detail_text += "; ";
        char buf[160];
        std::snprintf(buf, sizeof buf, "%g/%g K: %zu pts, %zu failed, %zu non-decreasing, %zu misordered", ts, te,
                      bare.size(), table.failures(), bad_monotone, bad_order);
        detail_text += buf;
    }
    return {"gamma_x curves decreasing, conducting above bare", ok, detail_text};
}

/// All checks in a fixed order.
inline std::vector<CheckResult> run_all(const Options& opt)
{
    return {check_static_term(opt),
            check_phi_n_sigma_independence(opt),
            check_conductivity_equilibrium_only(opt),
            check_r0_switch(opt),
            check_temperature_amplification(opt),
            check_averaging_identities(opt),
            check_direct_route(opt),
            check_scan_shape(opt)};
}

} // namespace casimir::validation
