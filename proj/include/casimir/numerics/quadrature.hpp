#pragma once

// Globally adaptive Gauss-Kronrod (10/21) quadrature.
//
// The vector-valued form integrates several integrands that share their
// evaluation points; the subdivision is driven by the largest component
// error. Semi-infinite integrals are mapped onto [0, 1) with
// x = scale * s / (1 - s), where scale is the decay length of the integrand.

#include "casimir/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace casimir {

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

template <std::size_t N>
struct IntegralVecResult {
    std::array<double, N> value{};
    std::array<double, N> error_estimate{};
    std::size_t evaluations = 0;
};

/// Non-convergence; carries the best available estimate.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, IntegralResult best) : NumericalError(what), best_(best) {}
    const IntegralResult& best_estimate() const { return best_; }

private:
    IntegralResult best_;
};

namespace detail {

// QUADPACK qk21 abscissae and weights.
inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980253390, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
// Gauss weights belong to the odd Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kWg{0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                           0.295524224714752870173892994651338};

template <std::size_t N>
struct Segment {
    double lo;
    double hi;
    std::array<double, N> value;
    std::array<double, N> error;
    double worst; // max component error, the heap key
};

template <std::size_t N>
inline double max_abs(const std::array<double, N>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t N, class F>
Segment<N> gk21(F& f, double lo, double hi)
{
    using Vec = std::array<double, N>;
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<Vec, 21> fv; // pairs at 2j, 2j+1; center last
    fv[20] = f(center);
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        fv[2 * j] = f(center - dx);
        fv[2 * j + 1] = f(center + dx);
    }

    Segment<N> seg{lo, hi, {}, {}, 0.0};
    for (std::size_t n = 0; n < N; ++n) {
        double kron = kWgk[10] * fv[20][n];
        double gauss = 0.0;
        double resabs = kWgk[10] * std::abs(fv[20][n]);
        for (std::size_t j = 0; j < 10; ++j) {
            const double pair = fv[2 * j][n] + fv[2 * j + 1][n];
            kron += kWgk[j] * pair;
            resabs += kWgk[j] * (std::abs(fv[2 * j][n]) + std::abs(fv[2 * j + 1][n]));
            if (j % 2 == 1)
                gauss += kWg[j / 2] * pair;
        }
        const double mean = 0.5 * kron;
        double resasc = kWgk[10] * std::abs(fv[20][n] - mean);
        for (std::size_t j = 0; j < 10; ++j)
            resasc += kWgk[j] * (std::abs(fv[2 * j][n] - mean) + std::abs(fv[2 * j + 1][n] - mean));

        kron *= half;
        resabs *= std::abs(half);
        resasc *= std::abs(half);
        double err = std::abs((kron - gauss * half));
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        constexpr double eps = std::numeric_limits<double>::epsilon();
        if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
            err = std::max(50.0 * eps * resabs, err);
        seg.value[n] = kron;
        seg.error[n] = err;
    }
    seg.worst = max_abs(seg.error);
    return seg;
}

template <std::size_t N>
struct Totals {
    std::array<double, N> value{};
    std::array<double, N> error{};
};

template <std::size_t N>
Totals<N> sum_segments(const std::vector<Segment<N>>& segs)
{
    Totals<N> t;
    for (const auto& s : segs)
        for (std::size_t n = 0; n < N; ++n) {
            t.value[n] += s.value[n];
            t.error[n] += s.error[n];
        }
    return t;
}

} // namespace detail

/// Adaptive integration of a vector-valued integrand on [lo, hi].
/// Converged when every component error is below
/// max(rel_tol * max_n |I_n|, abs_tol).
template <std::size_t N, class F>
IntegralVecResult<N> integrate_vec(F&& f, double lo, double hi, const QuadratureSettings& settings)
{
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("integrate: bounds must be finite");
    IntegralVecResult<N> result;
    if (lo == hi)
        return result;

    std::size_t evaluations = 0;
    auto counted = [&](double x) {
        ++evaluations;
        return f(x);
    };
    auto by_error = [](const detail::Segment<N>& a, const detail::Segment<N>& b) { return a.worst < b.worst; };

    std::vector<detail::Segment<N>> heap;
    heap.reserve(std::min<std::size_t>(settings.max_subdivisions() + 1, 64));
    heap.push_back(detail::gk21<N>(counted, lo, hi));

    auto converged = [&](const detail::Totals<N>& t) {
        const double tol = std::max(settings.rel_tol() * detail::max_abs(t.value), settings.abs_tol());
        return detail::max_abs(t.error) <= tol;
    };

    detail::Totals<N> totals = detail::sum_segments(heap);
    std::size_t splits = 0;
    auto require_finite = [&] {
        for (std::size_t k = 0; k < N; ++k)
            if (!std::isfinite(totals.value[k]) || !std::isfinite(totals.error[k]))
                throw QuadratureError("adaptive quadrature: integrand is not finite on the interval",
                                      {totals.value[k], totals.error[k], evaluations});
    };
    require_finite();
    while (!converged(totals)) {
        if (splits >= settings.max_subdivisions()) {
            IntegralResult best{totals.value[0], detail::max_abs(totals.error), evaluations};
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "adaptive quadrature did not converge within %zu subdivisions (estimate %.6g, error %.3g)",
                          settings.max_subdivisions(), best.value, best.error_estimate);
            throw QuadratureError(msg, best);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Segment<N> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            IntegralResult best{totals.value[0], detail::max_abs(totals.error), evaluations};
            throw QuadratureError("adaptive quadrature exhausted floating-point resolution", best);
        }
        heap.push_back(detail::gk21<N>(counted, worst.lo, mid));
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(detail::gk21<N>(counted, mid, worst.hi));
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++splits;
        totals = detail::sum_segments(heap);
        require_finite();
    }

    result.value = totals.value;
    result.error_estimate = totals.error;
    result.evaluations = evaluations;
    return result;
}

/// Scalar adaptive integration on [lo, hi].
template <class F>
IntegralResult integrate(F&& f, double lo, double hi, const QuadratureSettings& settings)
{
    auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
    auto r = integrate_vec<1>(wrapped, lo, hi, settings);
    return {r.value[0], r.error_estimate[0], r.evaluations};
}

/// Integral over (0, inf) of a function decaying on the length `scale`.
template <class F>
IntegralResult integrate_semi_infinite(F&& f, double scale, const QuadratureSettings& settings)
{
    if (!std::isfinite(scale) || !(scale > 0.0))
        throw DomainError("integrate_semi_infinite: decay scale must be finite and > 0");
    auto mapped = [&](double s) {
        const double rest = 1.0 - s;
        const double x = scale * s / rest;
        if (!std::isfinite(x))
            return 0.0;
        const double v = f(x);
        if (v == 0.0)
            return 0.0;
        return v * scale / (rest * rest);
    };
    return integrate(mapped, 0.0, 1.0, settings);
}

} // namespace casimir
