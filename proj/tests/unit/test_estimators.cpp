#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brownspec/errors.hpp"
#include "brownspec/estimators.hpp"
#include "brownspec/simkit.hpp"
#include "brownspec/spectra.hpp"

using namespace brownspec;

namespace {

constexpr double kPi = std::numbers::pi;

// Ensemble with dims axes filled by f(traj, axis, k) for velocity and g for position.
template <class F, class G>
Ensemble synthetic(std::size_t n_traj, std::size_t n, int dims, double dt, F f, G g) {
    Ensemble e;
    e.dt = dt;
    e.n_steps = n;
    e.dims = dims;
    e.trajectories.resize(n_traj);
    for (std::size_t j = 0; j < n_traj; ++j) {
        auto& t = e.trajectories[j];
        t.velocity.resize(static_cast<std::size_t>(dims) * n);
        t.position.resize(static_cast<std::size_t>(dims) * n);
        for (int a = 0; a < dims; ++a) {
            for (std::size_t k = 0; k < n; ++k) {
                t.velocity[static_cast<std::size_t>(a) * n + k] = f(j, a, k);
                t.position[static_cast<std::size_t>(a) * n + k] = g(j, a, k);
            }
        }
    }
    return e;
}

auto zero = [](std::size_t, int, std::size_t) { return 0.0; };

SimConfig viscous_config(std::size_t n_traj, std::size_t n_steps) {
    SimConfig c;
    c.medium = canonical_medium(MediumKind::Viscous, {});
    c.dt = 0.05;
    c.n_steps = n_steps;
    c.n_traj = n_traj;
    c.seed = 77;
    c.allow_coarse_step = true;
    return c;
}

} // namespace

TEST(WelchConfig, Validation) {
    WelchConfig c;
    c.segment_length = 1024;
    EXPECT_NO_THROW(c.validate(4096));
    EXPECT_EQ(c.hop(), 512u);
    EXPECT_THROW(c.validate(512), ConfigError);
    c.overlap = 0.95;
    EXPECT_THROW(c.validate(4096), ConfigError);
    c.overlap = 0.0;
    EXPECT_EQ(c.hop(), 1024u);
    c.segment_length = 1;
    EXPECT_THROW(c.validate(4096), ConfigError);
}

TEST(SampleAccumulator, MeanAndStandardError) {
    SampleAccumulator a(2);
    a.add({1.0, 10.0});
    EXPECT_EQ(a.std_error()[0], 0.0);
    a.add({3.0, 10.0});
    a.add({5.0, 10.0});
    EXPECT_DOUBLE_EQ(a.mean()[0], 3.0);
    EXPECT_NEAR(a.std_error()[0], 2.0 / std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(a.std_error()[1], 0.0, 1e-14);
    EXPECT_EQ(a.count(), 3u);
}

TEST(Welch, WhiteNoiseIsFlat) {
    const double dt = 0.1, sigma = 2.0;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd(0.0, sigma);
    const auto e = synthetic(20, 1 << 14, 2, dt, [&](std::size_t, int, std::size_t) { return nd(rng); }, zero);
    WelchConfig w;
    w.segment_length = 512;
    const auto s = welch_psd_estimate(e, w);
    const double want = 2.0 * sigma * sigma * dt; // two axes
    ASSERT_EQ(s.curve.size(), 257u);
    EXPECT_NEAR(s.curve.omega[1], 2.0 * kPi / (512 * dt), 1e-12);
    double mean = 0.0;
    for (std::size_t j = 2; j + 2 < s.curve.size(); ++j) {
        EXPECT_LE(std::abs(s.curve.values[j] - want), 5.0 * s.std_error[j]);
        mean += s.curve.values[j] / static_cast<double>(s.curve.size() - 4);
    }
    EXPECT_NEAR(mean, want, 0.01 * want);
    // integral over omega > 0 returns pi <v.v>
    double integral = 0.0;
    const double dw = s.curve.omega[1];
    for (std::size_t j = 0; j < s.curve.size(); ++j) {
        integral += (j == 0 || j + 1 == s.curve.size() ? 0.5 : 1.0) * s.curve.values[j] * dw;
    }
    EXPECT_NEAR(integral, kPi * 2.0 * sigma * sigma, 0.02 * kPi * 2.0 * sigma * sigma);
}

TEST(Welch, SinePeaksAtItsBin) {
    const double dt = 0.01;
    const std::size_t L = 1024, j0 = 37;
    const double w0 = 2.0 * kPi * j0 / (L * dt);
    const auto e = synthetic(1, 8 * L, 1, dt, [&](std::size_t, int, std::size_t k) { return std::sin(w0 * k * dt); },
                             zero);
    WelchConfig w;
    w.segment_length = L;
    const auto s = welch_psd(e, w);
    const auto it = std::max_element(s.values.begin(), s.values.end());
    EXPECT_EQ(static_cast<std::size_t>(it - s.values.begin()), j0);
}

TEST(Welch, ThreadCountDoesNotChangeResult) {
    const auto e = simulate(viscous_config(8, 4096));
    WelchConfig w;
    w.segment_length = 512;
    const auto a = welch_psd_estimate(e, w, 1);
    const auto b = welch_psd_estimate(e, w, 3);
    EXPECT_EQ(a.curve.values, b.curve.values);
}

TEST(Welch, ViscousSpectrumWithinTenPercent) {
    auto c = viscous_config(60, 1 << 13);
    c.dt = 0.01;
    c.allow_coarse_step = false;
    const auto e = simulate(c);
    WelchConfig w;
    w.segment_length = 2048;
    const auto s = welch_psd(e, w);
    const double eta = std::get<Viscous>(e.medium.params).eta;
    for (std::size_t j = 1; j < s.size(); ++j) {
        if (s.omega[j] < 0.1 || s.omega[j] > 5.0) continue;
        const double want = psd_viscous(e.medium.ctx, eta, s.omega[j]);
        EXPECT_NEAR(s.values[j] / want, 1.0, 0.15) << "omega " << s.omega[j];
    }
}

TEST(Msd, ZeroAndBallistic) {
    const double dt = 0.5, u = 3.0;
    const auto still = synthetic(3, 50, 3, dt, zero, [](std::size_t, int, std::size_t) { return 7.0; });
    for (double v : ensemble_msd(still).values) EXPECT_EQ(v, 0.0);
    const auto ball = synthetic(3, 50, 2, dt, [&](std::size_t, int, std::size_t) { return u; },
                                [&](std::size_t, int, std::size_t k) { return 1.0 + u * k * dt; });
    const auto m = ensemble_msd(ball);
    EXPECT_EQ(m.kind, CurveKind::MSD);
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_NEAR(m.values[k], 2.0 * u * u * m.t[k] * m.t[k], 1e-9);
    const auto ta = time_averaged_msd(ball, 10);
    ASSERT_EQ(ta.curve.size(), 11u);
    for (std::size_t k = 0; k < ta.curve.size(); ++k) {
        EXPECT_NEAR(ta.curve.values[k], 2.0 * u * u * ta.curve.t[k] * ta.curve.t[k], 1e-9);
    }
}

TEST(Msd, ViscousEnsembleMatchesClosedForm) {
    auto c = viscous_config(200, 400);
    c.dt = 0.01;
    c.allow_coarse_step = false;
    const auto e = simulate(c);
    const auto m = ensemble_msd_estimate(e);
    const double eta = std::get<Viscous>(e.medium.params).eta;
    for (std::size_t k = 10; k < m.curve.size(); k += 30) {
        const double want = msd_viscous(e.medium.ctx, eta, m.curve.t[k]);
        EXPECT_LE(std::abs(m.curve.values[k] - want), 4.0 * m.std_error[k]) << "t " << m.curve.t[k];
    }
}

TEST(Vacf, ConstantVelocity) {
    const auto e = synthetic(2, 40, 3, 0.1, [](std::size_t, int a, std::size_t) { return 1.0 + a; }, zero);
    const auto c = ensemble_vacf(e, 5);
    EXPECT_EQ(c.kind, CurveKind::VACF);
    ASSERT_EQ(c.size(), 6u);
    for (double v : c.values) EXPECT_NEAR(v, 1.0 + 4.0 + 9.0, 1e-12);
}

TEST(Vacf, ViscousDecay) {
    const auto e = simulate(viscous_config(40, 4096));
    const auto c = ensemble_vacf_estimate(e, 60);
    const double eta = std::get<Viscous>(e.medium.params).eta;
    for (std::size_t k = 0; k < c.curve.size(); k += 5) {
        const double want = vacf_viscous(e.medium.ctx, eta, c.curve.t[k]);
        EXPECT_LE(std::abs(c.curve.values[k] - want), 4.0 * c.std_error[k] + 1e-3) << "t " << c.curve.t[k];
    }
}

TEST(Stationarity, SingleOriginIsTrivial) {
    const auto e = synthetic(2, 16, 1, 1.0, [](std::size_t, int, std::size_t k) { return double(k); }, zero);
    const auto r = stationarity_check(e, 1);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.max_abs_difference, 0.0);
}

TEST(Stationarity, OuPassesRampFails) {
    const auto e = simulate(viscous_config(40, 4096));
    EXPECT_TRUE(stationarity_check(e, 4).pass);
    auto ramp = e;
    for (auto& t : ramp.trajectories) {
        for (int a = 0; a < ramp.dims; ++a) {
            for (std::size_t k = 0; k < ramp.n_steps; ++k) {
                t.velocity[static_cast<std::size_t>(a) * ramp.n_steps + k] *= 1.0 + 3.0 * k / ramp.n_steps;
            }
        }
    }
    const auto r = stationarity_check(ramp, 4);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_z, r.threshold);
}

TEST(LogLogSlope, PowerLawAndErrors) {
    const auto x = log_grid(1.0, 100.0, 20);
    std::vector<double> y;
    for (double v : x) y.push_back(5.0 * std::pow(v, -1.5));
    EXPECT_NEAR(loglog_slope(x, y, 1.0, 100.0), -1.5, 1e-12);
    EXPECT_THROW(loglog_slope(x, y, 200.0, 300.0), DomainError);
}
