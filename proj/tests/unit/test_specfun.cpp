#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "brownspec/errors.hpp"
#include "brownspec/specfun.hpp"

using namespace brownspec;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_rel(double got, double want, double tol) {
    EXPECT_LE(std::abs(got - want), tol * std::abs(want)) << "got " << got << " want " << want;
}

void expect_crel(cd got, cd want, double tol) {
    EXPECT_LE(std::abs(got - want), tol * std::abs(want)) << "got " << got << " want " << want;
}

TimeCurve monomial(double p, double h, std::size_t n) {
    TimeCurve s;
    for (std::size_t i = 0; i < n; ++i) {
        s.t.push_back(static_cast<double>(i) * h);
        s.values.push_back(std::pow(s.t.back(), p));
    }
    return s;
}

} // namespace

TEST(Gamma, KnownValues) {
    expect_rel(gamma_fn(0.5), std::sqrt(kPi), 1e-14);
    EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
    // mpmath, tests/oracles/reference_values.py
    expect_rel(gamma_fn(1.75), 0.91906252684888323, 1e-13);
    expect_rel(gamma_fn(0.3), 2.9915689876875906, 1e-13);
    expect_rel(gamma_fn(-0.5), -3.5449077018110321, 1e-13);
    expect_rel(gamma_fn(4.5), 11.631728396567449, 1e-13);
}

TEST(Gamma, PolesThrow) {
    EXPECT_THROW(gamma_fn(0.0), DomainError);
    EXPECT_THROW(gamma_fn(-1.0), DomainError);
    EXPECT_THROW(gamma_fn(-7.0), DomainError);
}

TEST(Gamma, RecurrenceProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        expect_rel(gamma_fn(x + 1.0), x * gamma_fn(x), 1e-13);
    }
}

TEST(Erfcx, RealReferenceValues) {
    EXPECT_NEAR(erfcx(0.0), 1.0, 1e-14);
    expect_rel(erfcx(0.5), 0.61569034419292587, 1e-13);
    expect_rel(erfcx(1.0), 0.427583576155807, 1e-13);
    expect_rel(erfcx(5.0), 0.11070463773306863, 1e-13);
    expect_rel(erfcx(50.0), 0.011281536265323773, 1e-13);
    expect_rel(erfcx(-1.0), 5.0089800807622835, 1e-13);
    expect_rel(erfcx(-3.0), 16205.988853999587, 1e-13);
}

TEST(Erfcx, LargeArgumentAsymptote) {
    const double w = 50.0;
    EXPECT_NEAR(w * std::sqrt(kPi) * erfcx(w), 1.0, 2e-4);
}

TEST(Erfcx, ComplexReferenceValues) {
    expect_crel(erfcx_complex({1.0, 1.0}), {0.30474420525691259, -0.20821893820283163}, 1e-12);
    expect_crel(erfcx_complex({0.5, -2.0}), {0.10335882374136666, 0.28478588475009375}, 1e-12);
    expect_crel(erfcx_complex({-1.0, 0.5}), {1.8964059595453003, -3.6899905885194492}, 1e-12);
    expect_crel(erfcx_complex({0.0, 3.0}), {0.00012340980408667955, -0.20115731703760039}, 1e-12);
    expect_crel(erfcx_complex({4.0, -6.0}), {0.044140923423642378, 0.064932545129806496}, 1e-12);
    expect_crel(erfcx_complex({0.01, 0.02}), {0.98842444689538191, -0.022166197685834156}, 1e-12);
}

TEST(Erfcx, ConjugateSymmetryAndFaddeevaRelation) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> re(0.0, 8.0), im(-8.0, 8.0);
    for (int i = 0; i < 300; ++i) {
        const cd w{re(rng), im(rng)};
        expect_crel(erfcx_complex(std::conj(w)), std::conj(erfcx_complex(w)), 1e-14);
        // erfcx(w) = w(i w)
        expect_crel(erfcx_complex(w), faddeeva(cd{0.0, 1.0} * w), 1e-14);
    }
}

TEST(Erfcx, RealAxisAgreesWithComplex) {
    for (double x : {0.1, 0.7, 2.0, 9.0, 40.0}) expect_rel(erfcx_complex({x, 0.0}).real(), erfcx(x), 1e-13);
}

TEST(FracPower, Examples) {
    expect_crel(frac_power_iomega(1.0, 1.0), {0.0, 1.0}, 1e-15);
    expect_crel(frac_power_iomega(4.0, 0.5), {std::sqrt(2.0), std::sqrt(2.0)}, 1e-15);
    expect_crel(frac_power_iomega(1.0, 0.0), {1.0, 0.0}, 1e-15);
    expect_crel(frac_power_iomega(2.5, 0.3), {1.1729051323872707, 0.59762501479394664}, 1e-14);
    expect_crel(frac_power_iomega(0.2, 1.5), {-0.063245553203367587, 0.063245553203367587}, 1e-14);
}

TEST(FracPower, NegativeFrequencyIsConjugate) {
    for (double a : {0.25, 0.5, 1.5}) {
        expect_crel(frac_power_iomega(-3.0, a), std::conj(frac_power_iomega(3.0, a)), 1e-15);
    }
}

TEST(FracOrder, Validation) {
    EXPECT_THROW((FracOrder{0.0, FracKind::Integral}.validate()), DomainError);
    EXPECT_NO_THROW((FracOrder{2.5, FracKind::Integral}.validate()));
    EXPECT_THROW((FracOrder{2.0, FracKind::Derivative}.validate()), DomainError);
    EXPECT_THROW((FracOrder{0.0, FracKind::Derivative}.validate()), DomainError);
    EXPECT_NO_THROW((FracOrder{1.5, FracKind::Derivative}.validate()));
    EXPECT_DOUBLE_EQ((FracOrder{0.3, FracKind::Integral}.signed_order()), -0.3);
}

TEST(GlWeights, Recurrence) {
    const auto w = gl_weights(0.5, 4);
    ASSERT_EQ(w.size(), 4u);
    EXPECT_DOUBLE_EQ(w[0], 1.0);
    EXPECT_DOUBLE_EQ(w[1], -0.5);
    EXPECT_DOUBLE_EQ(w[2], -0.125);
    EXPECT_DOUBLE_EQ(w[3], -0.0625);
    // order 1 is the backward difference
    const auto d = gl_weights(1.0, 5);
    EXPECT_DOUBLE_EQ(d[0], 1.0);
    EXPECT_DOUBLE_EQ(d[1], -1.0);
    for (std::size_t k = 2; k < d.size(); ++k) EXPECT_DOUBLE_EQ(d[k], 0.0);
}

TEST(GlWeights, DerivativeWeightsSumToZeroSlowly) {
    // sum_{k<n} w_k = binom(n - 1 - a, n - 1) > 0 and decreasing to 0 for 0 < a < 1
    const auto w = gl_weights(0.5, 10000);
    double s = 0.0;
    double prev = 2.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        s += w[k];
        if (k > 0) EXPECT_LT(s, prev);
        prev = s;
    }
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 0.01);
}

TEST(GlDerivative, MonomialHalfOrder) {
    const double h = 1e-4;
    const auto d = gl_fractional_derivative(monomial(1.0, h, 10001), 0.5, h);
    expect_rel(d.values[10000], 2.0 / std::sqrt(kPi), 1e-3);
}

TEST(GlDerivative, OrderNearOneIsOrdinaryDerivative) {
    const double h = 1e-4;
    const auto d = gl_fractional_derivative(monomial(2.0, h, 10001), 0.999999, h);
    for (std::size_t i : {1000u, 5000u, 10000u}) EXPECT_NEAR(d.values[i], 2.0 * d.t[i], 1e-3);
}

TEST(GlDerivative, SemigroupSpotCheck) {
    const double h = 1e-4;
    const auto once = gl_fractional_derivative(monomial(1.0, h, 10001), 0.5, h);
    const auto twice = gl_fractional_derivative(once, 0.5, h);
    EXPECT_NEAR(twice.values[10000], 1.0, 1e-2);
}

TEST(GlDerivative, IntegralThenDerivativeIsIdentity) {
    const double h = 1e-3;
    const auto f = monomial(1.5, h, 2001);
    const auto i = gl_fractional(f, {0.5, FracKind::Integral}, h);
    const auto d = gl_fractional(i, {0.5, FracKind::Derivative}, h);
    // weights of (1-B)^-a and (1-B)^a multiply to 1, so this is exact up to rounding
    for (std::size_t k = 0; k < f.size(); k += 100) EXPECT_NEAR(d.values[k], f.values[k], 1e-12);
}

TEST(GlDerivative, RejectsNonUniformGrid) {
    TimeCurve s;
    s.t = {0.0, 0.1, 0.3};
    s.values = {0.0, 1.0, 2.0};
    EXPECT_THROW(gl_fractional_derivative(s, 0.5, 0.1), GridError);
}
