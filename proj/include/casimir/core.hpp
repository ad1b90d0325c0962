#pragma once

// Shared configuration types, physical constants and error classes.
//
// Everything inside the library is expressed in Gaussian-CGS units:
// lengths in cm, masses in g, forces in dyn, angular frequencies in rad/s,
// polarizabilities in cm^3 and conductivities in s^-1.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

/// Invalid configuration value (non-positive, non-finite, inconsistent).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature or series failed to reach the requested accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CODATA 2018 values in CGS units.
struct PhysicalConstants {
    double k_B = 1.380649e-16;     // erg/K
    double hbar = 1.054571817e-27; // erg s
    double c = 2.99792458e10;      // cm/s
};

inline constexpr PhysicalConstants kPhys{};

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

inline void require_positive(const char* name, double value)
{
    if (!std::isfinite(value) || !(value > 0.0))
        throw ConfigError(std::string(name) + " must be finite and > 0 (got " + std::to_string(value) + ")");
}

inline void require_nonnegative(const char* name, double value)
{
    if (!std::isfinite(value) || value < 0.0)
        throw ConfigError(std::string(name) + " must be finite and >= 0 (got " + std::to_string(value) + ")");
}

} // namespace detail

/// Harmonic trap and condensate parameters. Defaults are the Rb-87
/// experiment near a fused-silica surface.
///
/// The polarizability is a volume (cm^3); it is sometimes quoted with
/// the unit misprinted as cm^-3.
class TrapConfig {
public:
    TrapConfig() = default;

    TrapConfig(double omega0, double a, double R_x, double m, double alpha0)
        : omega0_(omega0), a_(a), R_x_(R_x), m_(m), alpha0_(alpha0)
    {
        detail::require_positive("omega0", omega0);
        detail::require_positive("a", a);
        detail::require_positive("R_x", R_x);
        detail::require_positive("m", m);
        detail::require_positive("alpha0", alpha0);
    }

    double omega0() const { return omega0_; }
    double a() const { return a_; }
    double R_x() const { return R_x_; }
    double m() const { return m_; }
    double alpha0() const { return alpha0_; }

    /// Closest approach of the condensate edge is d - a - R_x.
    double reach() const { return a_ + R_x_; }

private:
    double omega0_ = 2.0 * kPi * 229.0;
    double a_ = 2.50e-4;
    double R_x_ = 2.69e-4;
    double m_ = 1.443e-22;
    double alpha0_ = 4.73e-23;
};

/// Trap-center separation and the two temperatures.
class ThermalScenario {
public:
    ThermalScenario(double d, double T_S, double T_E) : d_(d), T_S_(T_S), T_E_(T_E)
    {
        detail::require_positive("d", d);
        detail::require_positive("T_S", T_S);
        detail::require_positive("T_E", T_E);
    }

    ThermalScenario(double d, double T_S, double T_E, const TrapConfig& trap) : ThermalScenario(d, T_S, T_E)
    {
        require_clear_of(trap);
    }

    double d() const { return d_; }
    double T_S() const { return T_S_; }
    double T_E() const { return T_E_; }
    bool in_equilibrium() const { return T_S_ == T_E_; }

    /// The oscillating cloud must never touch the wall.
    void require_clear_of(const TrapConfig& trap) const
    {
        if (!(d_ > trap.reach()))
            throw ConfigError("separation d = " + std::to_string(d_) + " cm does not exceed a + R_x = " +
                              std::to_string(trap.reach()) + " cm");
    }

private:
    double d_;
    double T_S_;
    double T_E_;
};

/// Accuracy controls shared by every integral and Matsubara series.
class QuadratureSettings {
public:
    QuadratureSettings() = default;

    QuadratureSettings(double rel_tol, double abs_tol, std::size_t max_subdivisions, double matsubara_tail_tol,
                       std::size_t matsubara_max_terms = 100000)
        : rel_tol_(rel_tol), abs_tol_(abs_tol), max_subdivisions_(max_subdivisions),
          matsubara_tail_tol_(matsubara_tail_tol), matsubara_max_terms_(matsubara_max_terms)
    {
        if (!std::isfinite(rel_tol) || !(rel_tol > 0.0 && rel_tol < 1.0))
            throw ConfigError("rel_tol must lie in (0, 1)");
        detail::require_nonnegative("abs_tol", abs_tol);
        if (max_subdivisions < 1)
            throw ConfigError("max_subdivisions must be >= 1");
        detail::require_positive("matsubara_tail_tol", matsubara_tail_tol);
        if (matsubara_max_terms < 2)
            throw ConfigError("matsubara_max_terms must be >= 2");
    }

    double rel_tol() const { return rel_tol_; }
    double abs_tol() const { return abs_tol_; }
    std::size_t max_subdivisions() const { return max_subdivisions_; }
    double matsubara_tail_tol() const { return matsubara_tail_tol_; }
    std::size_t matsubara_max_terms() const { return matsubara_max_terms_; }

    /// Same settings with a different relative tolerance.
    QuadratureSettings with_rel_tol(double rel_tol) const
    {
        return {rel_tol, abs_tol_, max_subdivisions_, matsubara_tail_tol_, matsubara_max_terms_};
    }

private:
    double rel_tol_ = 1e-10;
    double abs_tol_ = 0.0;
    std::size_t max_subdivisions_ = 4000;
    double matsubara_tail_tol_ = 1e-12;
    std::size_t matsubara_max_terms_ = 100000;
};

} // namespace casimir
