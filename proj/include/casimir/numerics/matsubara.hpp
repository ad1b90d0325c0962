#pragma once

#include "casimir/core.hpp"
#include "casimir/materials.hpp"

#include <cmath>
#include <string>

namespace casimir {

/// Sums term(l, xi_l) for l = 1, 2, ... at temperature T.
///
/// Stops once the geometric tail bound |t_l| r / (1 - r), with
/// r = |t_l / t_{l-1}|, drops below matsubara_tail_tol * |partial sum|.
/// Throws NumericalError if that has not happened by matsubara_max_terms.
template <class Term>
double matsubara_sum(Term&& term, double T, const QuadratureSettings& settings)
{
    const std::size_t l_max = settings.matsubara_max_terms();
    double sum = 0.0;
    double previous = 0.0;
    for (std::size_t l = 1; l <= l_max; ++l) {
        const double t = term(l, matsubara_frequency(T, l));
        if (!std::isfinite(t))
            throw NumericalError("Matsubara term l = " + std::to_string(l) + " is not finite");
        sum += t;
        if (l >= 2) {
            if (t == 0.0 && previous == 0.0)
                return sum;
            if (previous != 0.0) {
                const double ratio = std::abs(t / previous);
                if (ratio < 1.0 && std::abs(t) * ratio / (1.0 - ratio) <= settings.matsubara_tail_tol() * std::abs(sum))
                    return sum;
            }
        }
        previous = t;
    }
    throw NumericalError("Matsubara series not converged after l_max = " + std::to_string(l_max) + " terms");
}

} // namespace casimir
