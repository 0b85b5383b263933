#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "brownspec/curves.hpp"

namespace brownspec {

// Gamma function; throws DomainError at 0, -1, -2, ...
double gamma_fn(double x);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), any finite z.
std::complex<double> faddeeva(std::complex<double> z);

// Scaled complementary error function exp(w^2) erfc(w). Overflow-free for
// Re w >= 0; for Re w < 0 the result grows like 2 exp(w^2) and may overflow.
std::complex<double> erfcx_complex(std::complex<double> w);
double erfcx(double x);

// Principal branch (i omega)^alpha = |omega|^alpha (cos(alpha pi/2) + i sin(alpha pi/2)),
// conjugated for omega < 0.
std::complex<double> frac_power_iomega(double omega, double alpha);

enum class FracKind { Integral, Derivative };

struct FracOrder {
    double alpha = 0.5;
    FracKind kind = FracKind::Derivative;

    // Integral needs alpha > 0, Derivative alpha in (0, 2). Throws DomainError.
    void validate() const;
    // Order of the equivalent derivative: -alpha for integrals.
    double signed_order() const { return kind == FracKind::Integral ? -alpha : alpha; }
};

// Grunwald-Letnikov weights w_k of (1 - B)^order, k = 0..n-1, by the recurrence
// w_0 = 1, w_k = w_{k-1} (1 - (order + 1)/k). Any real order is accepted.
std::vector<double> gl_weights(double order, std::size_t n);

// GL fractional derivative of causal samples on a uniform grid starting at the
// lower terminal: D^alpha f(t_n) ~ h^-alpha sum_k w_k f(t_{n-k}). First order in h.
TimeCurve gl_fractional_derivative(const TimeCurve& samples, double alpha, double h);
// Same sum for a general FracOrder (negative order is a fractional integral).
TimeCurve gl_fractional(const TimeCurve& samples, FracOrder order, double h);

} // namespace brownspec
