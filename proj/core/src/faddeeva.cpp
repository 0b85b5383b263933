#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "brownspec/specfun.hpp"

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
//
// Upper half plane, |z| <= 8: Weideman's rational expansion
//   w(z) = 2 p(Z)/(L - iz)^2 + pi^-1/2/(L - iz),  Z = (L + iz)/(L - iz),
// with N = 40 terms (J.A.C. Weideman, SIAM J. Numer. Anal. 31 (1994) 1497).
// |z| > 8: Laplace continued fraction, 40 levels.
// Lower half plane: w(z) = 2 exp(-z^2) - w(-z).

namespace brownspec {

namespace {

constexpr int kTerms = 40;
constexpr double kCfRadius = 8.0;
constexpr int kCfDepth = 40;

struct Weideman {
    double L;
    std::array<double, kTerms> a; // highest power first
};

const Weideman& weideman() {
    static const Weideman w = [] {
        Weideman r{};
        const int M = 2 * kTerms;
        const int M2 = 2 * M;
        r.L = std::sqrt(kTerms / std::numbers::sqrt2);
        // f sampled at k = -M+1..M-1, with a leading zero, then fftshift + DFT.
        std::array<double, M2> f{};
        f[0] = 0.0;
        for (int k = -M + 1; k <= M - 1; ++k) {
            const double theta = k * std::numbers::pi / M;
            const double t = r.L * std::tan(theta / 2.0);
            f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (r.L * r.L + t * t);
        }
        std::array<double, M2> shifted{};
        for (int i = 0; i < M2; ++i) shifted[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>((i + M) % M2)];
        std::array<double, kTerms> coef{};
        for (int j = 1; j <= kTerms; ++j) {
            double re = 0.0;
            for (int i = 0; i < M2; ++i) re += shifted[static_cast<std::size_t>(i)] * std::cos(2.0 * std::numbers::pi * j * i / M2);
            coef[static_cast<std::size_t>(j - 1)] = re / M2;
        }
        for (int j = 0; j < kTerms; ++j) r.a[static_cast<std::size_t>(j)] = coef[static_cast<std::size_t>(kTerms - 1 - j)];
        return r;
    }();
    return w;
}

std::complex<double> w_upper(std::complex<double> z) {
    const std::complex<double> I(0.0, 1.0);
    if (std::abs(z) > kCfRadius) {
        std::complex<double> r = 0.0;
        for (int k = kCfDepth; k >= 1; --k) r = (0.5 * k) / (z - r);
        return I / std::sqrt(std::numbers::pi) / (z - r);
    }
    const Weideman& c = weideman();
    const std::complex<double> den = c.L - I * z;
    const std::complex<double> Z = (c.L + I * z) / den;
    std::complex<double> p = 0.0;
    for (double ak : c.a) p = p * Z + ak;
    return 2.0 * p / (den * den) + (1.0 / std::sqrt(std::numbers::pi)) / den;
}

} // namespace

std::complex<double> faddeeva(std::complex<double> z) {
    if (z.imag() >= 0.0) return w_upper(z);
    return 2.0 * std::exp(-z * z) - w_upper(-z);
}

std::complex<double> erfcx_complex(std::complex<double> w) {
    // erfcx(w) = w_F(i w); Re w >= 0 maps to the upper half plane.
    const std::complex<double> I(0.0, 1.0);
    return faddeeva(I * w);
}

double erfcx(double x) {
    if (x >= 0.0) return erfcx_complex({x, 0.0}).real();
    return 2.0 * std::exp(x * x) - erfcx_complex({-x, 0.0}).real();
}

} // namespace brownspec
