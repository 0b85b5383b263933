#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "brownspec/errors.hpp"
#include "brownspec/estimators.hpp"
#include "brownspec/simkit.hpp"

using namespace brownspec;

namespace {

SimConfig base(MediumKind k, NormalizedParams p = {}) {
    SimConfig c;
    c.medium = canonical_medium(k, p);
    c.dt = 0.01;
    c.n_steps = 4096;
    c.n_traj = 64;
    c.seed = 11;
    return c;
}

// Mean of v^2 per axis over every sample of every trajectory, with the
// standard error taken across trajectories.
std::pair<double, double> velocity_variance(const Ensemble& e) {
    SampleAccumulator acc(1);
    for (std::size_t j = 0; j < e.trajectories.size(); ++j) {
        double s = 0.0;
        for (int a = 0; a < e.dims; ++a) {
            const double* v = e.velocity(j, a);
            for (std::size_t k = 0; k < e.n_steps; ++k) s += v[k] * v[k];
        }
        acc.add({s / static_cast<double>(e.dims * e.n_steps)});
    }
    return {acc.mean()[0], acc.std_error()[0]};
}

std::pair<double, double> position_variance(const Ensemble& e) {
    SampleAccumulator acc(1);
    for (std::size_t j = 0; j < e.trajectories.size(); ++j) {
        double s = 0.0;
        for (int a = 0; a < e.dims; ++a) {
            const double* x = e.position(j, a);
            for (std::size_t k = 0; k < e.n_steps; ++k) s += x[k] * x[k];
        }
        acc.add({s / static_cast<double>(e.dims * e.n_steps)});
    }
    return {acc.mean()[0], acc.std_error()[0]};
}

} // namespace

TEST(Scheme, NamesRoundTrip) {
    for (Scheme s : {Scheme::Auto, Scheme::ExactOU, Scheme::MarkovEmbedding, Scheme::SpectralNoiseGL,
                     Scheme::SemiImplicitEuler}) {
        EXPECT_EQ(parse_scheme(scheme_name(s)), s);
    }
    EXPECT_THROW(parse_scheme("rk4"), ConfigError);
}

TEST(Scheme, ResolveDefaultsAndRejectsMismatch) {
    EXPECT_EQ(resolve_scheme(base(MediumKind::Viscous)), Scheme::ExactOU);
    EXPECT_EQ(resolve_scheme(base(MediumKind::Maxwell)), Scheme::MarkovEmbedding);
    EXPECT_EQ(resolve_scheme(base(MediumKind::Subdiffusive)), Scheme::SpectralNoiseGL);
    auto c = base(MediumKind::Viscous);
    c.scheme = Scheme::MarkovEmbedding;
    EXPECT_THROW(resolve_scheme(c), ConfigError);
}

TEST(Stability, Verdicts) {
    auto c = base(MediumKind::Viscous);
    EXPECT_EQ(stability_report(c).verdict, Verdict::Pass);
    EXPECT_NEAR(*stability_report(c).dt_over_tau, 0.01, 1e-14);
    NormalizedParams p;
    p.omegaR_tau = 50.0;
    auto m = base(MediumKind::HarmonicTrap, p);
    m.dt = 0.01; // omegaR dt = 0.5
    const auto r = stability_report(m);
    EXPECT_NEAR(*r.omegaR_dt, 0.5, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::Warn);
    c.dt = 1.0;
    EXPECT_EQ(stability_report(c).verdict, Verdict::Fail);
}

TEST(Stability, CoarseStepNeedsOptIn) {
    auto c = base(MediumKind::Viscous);
    c.dt = 0.5;
    c.n_traj = 1;
    EXPECT_THROW(simulate(c), ConfigError);
    c.allow_coarse_step = true;
    EXPECT_NO_THROW(simulate(c));
}

TEST(Simulate, ConfigValidation) {
    auto c = base(MediumKind::Viscous);
    c.n_steps = 1;
    EXPECT_THROW(simulate(c), ConfigError);
    c = base(MediumKind::Viscous);
    c.dt = -1.0;
    EXPECT_THROW(simulate(c), ConfigError);
    c = base(MediumKind::Viscous);
    c.medium.params = Viscous{-2.0};
    EXPECT_THROW(simulate(c), ConfigError);
}

TEST(Simulate, ShapeAndOrigin) {
    auto c = base(MediumKind::Viscous);
    c.n_traj = 3;
    c.n_steps = 100;
    const auto e = simulate(c);
    ASSERT_EQ(e.trajectories.size(), 3u);
    EXPECT_EQ(e.dims, 3);
    for (const auto& t : e.trajectories) {
        EXPECT_EQ(t.velocity.size(), 300u);
        EXPECT_EQ(t.position.size(), 300u);
    }
    // r = 0 at the start of burn-in, so the recorded origin has diffused away
    c.burn_in = 0;
    const auto z = simulate(c);
    for (int a = 0; a < 3; ++a) EXPECT_EQ(z.position(0, a)[0], 0.0);
}

TEST(Simulate, ViscousEquipartition) {
    const auto e = simulate(base(MediumKind::Viscous));
    const auto [mean, se] = velocity_variance(e);
    const double want = e.medium.ctx.kT / e.medium.ctx.m;
    EXPECT_LE(std::abs(mean - want), 3.0 * se + 1e-12) << mean << " +- " << se;
}

TEST(Simulate, TrapPositionVariance) {
    NormalizedParams p;
    p.omegaR_tau = 1.0;
    const auto e = simulate(base(MediumKind::HarmonicTrap, p));
    const double G = std::get<HarmonicTrap>(e.medium.params).G;
    const auto [mean, se] = position_variance(e);
    const double want = e.medium.ctx.kT / (e.medium.ctx.six_pi_R() * G);
    EXPECT_LE(std::abs(mean - want), 3.0 * se) << mean << " +- " << se << " want " << want;
}

TEST(Simulate, SemiImplicitEulerTrapVariance) {
    NormalizedParams p;
    p.omegaR_tau = 1.0;
    auto c = base(MediumKind::HarmonicTrap, p);
    c.scheme = Scheme::SemiImplicitEuler;
    c.dt = 0.002;
    c.n_steps = 16384;
    const auto e = simulate(c);
    const auto [mean, se] = velocity_variance(e);
    EXPECT_LE(std::abs(mean - 1.0), 3.0 * se + 0.01);
}

TEST(Simulate, MaxwellAndJeffreysEquipartition) {
    NormalizedParams p;
    p.omegaR_tau = 2.0;
    p.xi = 0.5;
    for (MediumKind k : {MediumKind::Maxwell, MediumKind::Jeffreys}) {
        const auto e = simulate(base(k, p));
        const auto [mean, se] = velocity_variance(e);
        EXPECT_LE(std::abs(mean - 1.0), 3.0 * se) << medium_name(k) << " " << mean << " +- " << se;
    }
}

TEST(Simulate, SiJeffreysStaysOnThermalScale) {
    // SI units put the state components 12 orders apart; regression for the propagator scaling
    SimConfig c;
    c.medium.ctx.kT = 4.11e-21;
    c.medium.ctx.N = 3;
    c.medium.ctx.R = 1e-6;
    c.medium.ctx.m = 4.398e-15;
    c.medium.params = Jeffreys{100.0, 2e-3, 1e-3};
    c.dt = 5e-9;
    c.n_steps = 4096;
    c.n_traj = 32;
    c.seed = 5;
    const auto e = simulate(c);
    const auto [mean, se] = velocity_variance(e);
    const double want = c.medium.ctx.kT / c.medium.ctx.m;
    EXPECT_LE(std::abs(mean - want), 3.0 * se) << mean << " +- " << se << " want " << want;
}

TEST(Simulate, SubdiffusiveVelocityVariance) {
    auto c = base(MediumKind::Subdiffusive);
    c.dt = 0.005;
    c.n_steps = 2048;
    const auto e = simulate(c);
    const auto [mean, se] = velocity_variance(e);
    EXPECT_LE(std::abs(mean - 1.0), 3.0 * se + 0.02) << mean << " +- " << se;
}

TEST(Simulate, DeterministicAcrossThreadsAndSplits) {
    auto c = base(MediumKind::Maxwell);
    c.n_traj = 6;
    c.n_steps = 512;
    c.threads = 1;
    const auto a = simulate(c);
    c.threads = 4;
    const auto b = simulate(c);
    const auto tail = simulate_range(c, 4, 2);
    for (std::size_t j = 0; j < 6; ++j) {
        EXPECT_EQ(a.trajectories[j].velocity, b.trajectories[j].velocity);
        EXPECT_EQ(a.trajectories[j].position, b.trajectories[j].position);
    }
    EXPECT_EQ(tail.first_index, 4u);
    EXPECT_EQ(tail.trajectories[1].velocity, a.trajectories[5].velocity);
    c.seed += 1;
    EXPECT_NE(simulate(c).trajectories[0].velocity, a.trajectories[0].velocity);
}

TEST(Rng, TrajectoryStreamsDiffer) {
    auto r0 = trajectory_rng(1, 0), r1 = trajectory_rng(1, 1), r0b = trajectory_rng(1, 0);
    const auto x = r0();
    EXPECT_NE(x, r1());
    EXPECT_EQ(x, r0b());
}

TEST(ColoredNoise, WhiteNoiseVariance) {
    TimeCurve cov;
    cov.t = {0.0};
    cov.values = {4.0};
    const auto x = synthesize_colored_noise(cov, 1 << 16, 3);
    double s = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        if (i + 1 < x.size()) s1 += x[i] * x[i + 1];
    }
    const double n = static_cast<double>(x.size());
    EXPECT_NEAR(s / n, 4.0, 4.0 * 5.0 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s1 / n, 0.0, 4.0 * 5.0 / std::sqrt(n));
}

TEST(ColoredNoise, ExponentialCovarianceRecovered) {
    const double h = 0.1;
    TimeCurve cov;
    for (int k = 0; k < 400; ++k) {
        cov.t.push_back(k * h);
        cov.values.push_back(std::exp(-k * h));
    }
    const std::size_t n = 1 << 12;
    std::vector<double> c(4, 0.0);
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        const auto x = synthesize_colored_noise(cov, n, 100 + r);
        for (std::size_t lag = 0; lag < c.size(); ++lag) {
            double s = 0.0;
            for (std::size_t i = 0; i + lag < n; ++i) s += x[i] * x[i + lag];
            c[lag] += s / static_cast<double>(n - lag) / reps;
        }
    }
    for (std::size_t lag = 0; lag < c.size(); ++lag) EXPECT_NEAR(c[lag], std::exp(-0.1 * lag), 0.03);
}

TEST(ColoredNoise, PowerLawCovarianceIsEmbeddable) {
    // fractional Gaussian noise increments, H = 0.25
    const double H = 0.25;
    TimeCurve cov;
    for (int k = 0; k < 2048; ++k) {
        cov.t.push_back(k);
        cov.values.push_back(0.5 * (std::pow(k + 1.0, 2 * H) - 2.0 * std::pow(k, 2 * H) +
                                    std::pow(std::abs(k - 1.0), 2 * H)));
    }
    CirculantSampler s(cov.values, 2048);
    EXPECT_EQ(s.size(), 2048u);
    EXPECT_LT(s.clipped_fraction(), 1e-6);
    auto rng = trajectory_rng(9, 0);
    std::vector<double> out;
    s.sample(rng, out);
    EXPECT_EQ(out.size(), 2048u);
}

TEST(ColoredNoise, IndefiniteCovarianceThrows) {
    TimeCurve cov;
    cov.t = {0.0, 1.0};
    cov.values = {1.0, 2.0};
    EXPECT_THROW(synthesize_colored_noise(cov, 64, 1), IndefiniteCovariance);
}
