#include "brownspec/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "brownspec/errors.hpp"
#include "brownspec/fft.hpp"

namespace brownspec {

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_fn: argument must be finite");
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("gamma_fn: pole at non-positive integer " + std::to_string(x));
    }
    return std::tgamma(x);
}

namespace {

// cos and sin of alpha*pi/2, exact at the half-integer orders used by the networks.
std::complex<double> unit_phase(double alpha) {
    const double twice = 2.0 * alpha;
    if (twice == std::floor(twice) && std::abs(twice) <= 8.0) {
        constexpr double r = std::numbers::sqrt2 / 2.0;
        static const std::complex<double> table[8] = {{1, 0}, {r, r}, {0, 1}, {-r, r},
                                                      {-1, 0}, {-r, -r}, {0, -1}, {r, -r}};
        int k = static_cast<int>(twice) % 8;
        if (k < 0) k += 8;
        return table[k];
    }
    const double phi = alpha * std::numbers::pi / 2.0;
    return {std::cos(phi), std::sin(phi)};
}

} // namespace

std::complex<double> frac_power_iomega(double omega, double alpha) {
    if (!std::isfinite(omega) || !std::isfinite(alpha)) {
        throw DomainError("frac_power_iomega: arguments must be finite");
    }
    const double mag = std::abs(omega);
    if (mag == 0.0) {
        if (alpha == 0.0) return 1.0;
        if (alpha > 0.0) return 0.0;
        throw DomainError("frac_power_iomega: negative order at omega = 0");
    }
    double scale;
    if (alpha == 1.0) {
        scale = mag;
    } else if (alpha == 2.0) {
        scale = mag * mag;
    } else {
        scale = std::pow(mag, alpha);
    }
    const std::complex<double> v = scale * unit_phase(alpha);
    return omega < 0.0 ? std::conj(v) : v;
}

void FracOrder::validate() const {
    if (!std::isfinite(alpha)) throw DomainError("fractional order must be finite");
    if (kind == FracKind::Integral && !(alpha > 0.0)) {
        throw DomainError("fractional integral needs alpha > 0");
    }
    if (kind == FracKind::Derivative && !(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("fractional derivative needs 0 < alpha < 2");
    }
}

std::vector<double> gl_weights(double order, std::size_t n) {
    std::vector<double> w(n);
    if (n == 0) return w;
    w[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        w[k] = w[k - 1] * (1.0 - (order + 1.0) / static_cast<double>(k));
    }
    return w;
}

TimeCurve gl_fractional(const TimeCurve& samples, FracOrder order, double h) {
    order.validate();
    const double step = samples.uniform_step();
    if (!(h > 0.0) || std::abs(step - h) > 1e-9 * h) {
        throw GridError("gl_fractional: h does not match the sample spacing");
    }
    const double q = order.signed_order();
    const std::size_t n = samples.size();
    std::vector<double> out = fft::causal_convolution(gl_weights(q, n), samples.values, n);
    const double scale = std::pow(h, -q);
    for (double& v : out) v *= scale;
    return TimeCurve{samples.t, std::move(out), CurveKind::Generic};
}

TimeCurve gl_fractional_derivative(const TimeCurve& samples, double alpha, double h) {
    return gl_fractional(samples, FracOrder{alpha, FracKind::Derivative}, h);
}

} // namespace brownspec
