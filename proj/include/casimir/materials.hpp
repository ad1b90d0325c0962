#pragma once

// Dielectric response of the wall.
//
// The model is a static permittivity eps0 plus optional Lorentz
// oscillators and an optional static conductivity sigma0 entering as
// eps(omega) + 4*pi*i*sigma0/omega. The oscillators share eps0 as their
// zero-frequency value:
//
//   eps(i xi) = eps_bg + sum_j f_j w_j^2 / (w_j^2 + xi^2 + g_j xi),
//   eps_bg    = eps0 - sum_j f_j >= 1.

#include "casimir/core.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace casimir {

struct Oscillator {
    double strength;  // dimensionless
    double resonance; // rad/s
    double damping;   // rad/s
};

class PermittivityModel {
public:
    /// Constant eps0 = 3.81, no conductivity.
    PermittivityModel() = default;

    explicit PermittivityModel(double eps0, std::vector<Oscillator> oscillators = {},
                               std::optional<double> sigma0 = std::nullopt)
        : eps0_(eps0), oscillators_(std::move(oscillators)), sigma0_(sigma0)
    {
        if (!std::isfinite(eps0) || eps0 < 1.0)
            throw ConfigError("eps0 must be finite and >= 1");
        double total = 0.0;
        for (const auto& o : oscillators_) {
            detail::require_positive("oscillator strength", o.strength);
            detail::require_positive("oscillator resonance", o.resonance);
            detail::require_nonnegative("oscillator damping", o.damping);
            total += o.strength;
        }
        if (eps0 - total < 1.0)
            throw ConfigError("oscillator strengths exceed eps0 - 1");
        if (sigma0_)
            detail::require_nonnegative("sigma0", *sigma0_);
    }

    static PermittivityModel vacuum() { return PermittivityModel(1.0); }

    /// Same dielectric with a static conductivity added (s^-1).
    PermittivityModel with_conductivity(double sigma0) const
    {
        return PermittivityModel(eps0_, oscillators_, sigma0);
    }

    PermittivityModel without_conductivity() const { return PermittivityModel(eps0_, oscillators_); }

    double eps0() const { return eps0_; }
    const std::vector<Oscillator>& oscillators() const { return oscillators_; }
    const std::optional<double>& conductivity() const { return sigma0_; }

    /// sigma0 > 0 is what matters physically; sigma0 = 0 is the bare model.
    bool is_conducting() const { return sigma0_.has_value() && *sigma0_ > 0.0; }

    double background() const
    {
        double eps = eps0_;
        for (const auto& o : oscillators_)
            eps -= o.strength;
        return eps;
    }

private:
    double eps0_ = 3.81;
    std::vector<Oscillator> oscillators_;
    std::optional<double> sigma0_;
};

/// eps(i xi). Throws DomainError at xi = 0 for a conducting model, where
/// the value diverges; the zero-frequency term must go through r0_static.
inline double eps_imag(const PermittivityModel& model, double xi)
{
    if (!std::isfinite(xi) || xi < 0.0)
        throw DomainError("eps_imag: xi must be finite and >= 0");
    double eps = model.background();
    for (const auto& o : model.oscillators()) {
        const double w2 = o.resonance * o.resonance;
        eps += o.strength * w2 / (w2 + xi * xi + o.damping * xi);
    }
    if (model.is_conducting()) {
        if (xi == 0.0)
            throw DomainError("eps_imag: divergent static limit for a conducting model, use r0_static");
        eps += 4.0 * kPi * *model.conductivity() / xi;
    }
    return eps;
}

/// eps(omega) on the real frequency axis; Im eps >= 0.
inline std::complex<double> eps_real(const PermittivityModel& model, double omega)
{
    if (!std::isfinite(omega) || !(omega > 0.0))
        throw DomainError("eps_real: omega must be finite and > 0");
    std::complex<double> eps{model.background(), 0.0};
    for (const auto& o : model.oscillators()) {
        const double w2 = o.resonance * o.resonance;
        eps += o.strength * w2 / std::complex<double>(w2 - omega * omega, -o.damping * omega);
    }
    if (model.is_conducting())
        eps += std::complex<double>(0.0, 4.0 * kPi * *model.conductivity() / omega);
    return eps;
}

/// Zero-frequency TM reflection coefficient. Any nonzero conductivity
/// gives exactly 1, whatever its magnitude.
inline double r0_static(const PermittivityModel& model)
{
    if (model.is_conducting())
        return 1.0;
    const double eps = model.eps0();
    return (eps - 1.0) / (eps + 1.0);
}

/// xi_l = 2 pi k_B T l / hbar.
inline double matsubara_frequency(double T, unsigned long l)
{
    if (!std::isfinite(T) || !(T > 0.0))
        throw DomainError("matsubara_frequency: T must be > 0");
    return 2.0 * kPi * kPhys.k_B * T * static_cast<double>(l) / kPhys.hbar;
}

} // namespace casimir
