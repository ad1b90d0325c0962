#pragma once

// Exponentially scaled kernels used by the condensate averages:
//   scaled_i1(z) = exp(-z) I_1(z)
//   scaled_g(z)  = exp(-z) g(z),  g(z) = 15/z^5 [(3 + z^2) sinh z - 3 z cosh z]
// Both stay O(1) for every finite z, so products like
// exp(-2qd) I_1(2qa) g(2qR) can be formed without overflow as
// exp(-2q(d - a - R)) * scaled_i1(2qa) * scaled_g(2qR).

#include "casimir/core.hpp"

#include <cmath>
#include <limits>

namespace casimir {

namespace detail {

// Below this the ascending series is used for I_1; above it the
// Hankel asymptotic expansion is exact to double precision.
inline constexpr double kI1AsymptoticFrom = 30.0;

// g switches from its all-positive power series to the closed form here.
// Near z ~ 1e-2 the closed form has already lost ~5 digits to
// cancellation; at z = 2 it is accurate to a few ulp.
inline constexpr double kGSeriesBelow = 2.0;

// I_1(z) = sum_k (z/2)^(2k+1) / (k! (k+1)!); every term is positive.
inline double i1_series(double z)
{
    const double q = 0.25 * z * z;
    double term = 0.5 * z;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return sum;
}

// exp(-z) I_1(z) ~ (2 pi z)^(-1/2) sum_k c_k,
// c_k = -c_{k-1} (4 - (2k-1)^2) / (8 k z).
inline double scaled_i1_asymptotic(double z)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (4.0 - odd * odd) / (8.0 * k * z);
        if (std::abs(next) >= std::abs(term))
            break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum / std::sqrt(2.0 * kPi * z);
}

// g(z) = sum_{m>=2} 60 m (m-1) z^(2m-4) / (2m+1)!, leading term 1.
inline double g_series(double z)
{
    const double z2 = z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 2; m < 200; ++m) {
        term *= z2 * (m + 1.0) / ((m - 1.0) * (2.0 * m + 2.0) * (2.0 * m + 3.0));
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return sum;
}

inline void require_kernel_argument(const char* name, double z)
{
    if (!std::isfinite(z) || z < 0.0)
        throw DomainError(std::string(name) + ": argument must be finite and >= 0");
}

} // namespace detail

/// exp(-z) I_1(z) for z >= 0.
inline double scaled_i1(double z)
{
    detail::require_kernel_argument("scaled_i1", z);
    if (z == 0.0)
        return 0.0;
    if (z < detail::kI1AsymptoticFrom)
        return detail::i1_series(z) * std::exp(-z);
    return detail::scaled_i1_asymptotic(z);
}

/// I_1(z); overflows to +inf past z ~ 713.
inline double bessel_i1(double z)
{
    detail::require_kernel_argument("bessel_i1", z);
    if (z < detail::kI1AsymptoticFrom)
        return detail::i1_series(z);
    return detail::scaled_i1_asymptotic(z) * std::exp(z);
}

/// exp(-z) g(z); g(0) = 1 by continuity.
inline double scaled_g(double z)
{
    detail::require_kernel_argument("scaled_g", z);
    if (z < detail::kGSeriesBelow)
        return detail::g_series(z) * std::exp(-z);
    // 7.5/z^5 [(z^2 - 3z + 3) - e^{-2z}(z^2 + 3z + 3)], divided through by z^2
    const double u = 1.0 / z;
    const double u2 = u * u;
    return 7.5 * u2 * u * ((1.0 - 3.0 * u + 3.0 * u2) - std::exp(-2.0 * z) * (1.0 + 3.0 * u + 3.0 * u2));
}

/// g(z) itself; overflows to +inf for very large z, use scaled_g there.
inline double g_kernel(double z)
{
    detail::require_kernel_argument("g_kernel", z);
    if (z < detail::kGSeriesBelow)
        return detail::g_series(z);
    return scaled_g(z) * std::exp(z);
}

} // namespace casimir
