#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace brownspec::detail {

struct QuadPiece {
    double value = 0.0;
    double error = 0.0;
};

// Adaptive Gauss-Kronrod (31 points) on [a, b] against an absolute tolerance.
// Boost's adaptive driver measures tolerance relative to each panel's own
// estimate, which never terminates on panels whose integral cancels.
template <class F>
QuadPiece gk_adaptive(const F& f, double a, double b, double abs_tol, int max_depth = 12) {
    QuadPiece p;
    p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &p.error);
    if (p.error <= abs_tol || max_depth <= 0) return p;
    const double mid = 0.5 * (a + b);
    const QuadPiece l = gk_adaptive(f, a, mid, 0.5 * abs_tol, max_depth - 1);
    const QuadPiece r = gk_adaptive(f, mid, b, 0.5 * abs_tol, max_depth - 1);
    return {l.value + r.value, l.error + r.error};
}

} // namespace brownspec::detail
