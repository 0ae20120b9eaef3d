#pragma once

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "landis/errors.hpp"

namespace landis::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

struct Piece {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

/// One GK31 panel. Boost 1.74 reports the panel error on the reference interval,
/// so it is rescaled here.
template <class F>
Piece gk31_panel(F& f, double a, double b) {
    Piece p;
    p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
    p.error *= 0.5 * std::abs(b - a);
    return p;
}

template <class F>
Piece gk31_bisect(F& f, double a, double b, const Piece& whole, double abs_tol, unsigned depth) {
    if (whole.error <= abs_tol || depth == 0) return whole;
    const double m = 0.5 * (a + b);
    const Piece l = gk31_bisect(f, a, m, gk31_panel(f, a, m), 0.5 * abs_tol, depth - 1);
    const Piece r = gk31_bisect(f, m, b, gk31_panel(f, m, b), 0.5 * abs_tol, depth - 1);
    return {l.value + r.value, l.error + r.error, l.l1 + r.l1};
}

/// Adaptive GK31 by bisection until the error is below rel_tol times the L1 norm.
template <class F>
double gk31(F&& f, double a, double b, unsigned max_depth, double rel_tol, double* error, double* l1) {
    const Piece whole = gk31_panel(f, a, b);
    const Piece p = gk31_bisect(f, a, b, whole, rel_tol * whole.l1, max_depth);
    *error = p.error;
    *l1 = p.l1;
    return p.value;
}

/// Adaptive Gauss-Kronrod on [a,b]. Throws EvaluationError on a non-finite result.
template <class F>
Result adaptive(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 18) {
    Result r;
    if (a == b) return r;
    double l1 = 0.0;
    r.value = gk31(f, a, b, max_depth, rel_tol, &r.error, &l1);
    if (!std::isfinite(r.value)) throw EvaluationError("non-finite value in adaptive quadrature");
    return r;
}

/// Integral over (0, t_hi] of an integrand that may oscillate without bound as
/// t -> 0 (a far field after t = rho^(-2s)). Dyadic pieces [t/2, t] are summed
/// until two consecutive pieces contribute less than abs_tol / 16; their size is
/// added to the error as the remainder estimate. Oscillating tails cancel within
/// a piece long before their L1 mass becomes small.
template <class F>
Result dyadic_to_zero(F&& f, double t_hi, double abs_tol, int max_pieces = 80) {
    Result r;
    double t = t_hi;
    int quiet = 0;
    for (int piece = 0; piece < max_pieces; ++piece) {
        double err = 0.0;
        double l1 = 0.0;
        const double v = gk31(f, 0.5 * t, t, 15, 1e-11, &err, &l1);
        if (!std::isfinite(v)) throw EvaluationError("non-finite value in far-field quadrature");
        r.value += v;
        r.error += std::min(err, 2.0 * l1);
        t *= 0.5;
        quiet = std::abs(v) < abs_tol / 16.0 ? quiet + 1 : 0;
        if (quiet == 2 || l1 == 0.0) {
            r.error += 2.0 * std::abs(v);
            return r;
        }
    }
    r.error += INFINITY;
    return r;
}

/// Fixed 8-point Gauss-Legendre on [a,b].
template <class F>
double gauss8(F&& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
}

/// Fixed 20-point Gauss-Legendre on [a,b].
template <class F>
double gauss20(F&& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

}  // namespace landis::quad
