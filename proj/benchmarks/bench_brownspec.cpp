#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "brownspec/estimators.hpp"
#include "brownspec/simkit.hpp"
#include "brownspec/specfun.hpp"
#include "brownspec/spectra.hpp"

using namespace brownspec;

namespace {

const MediumKind kKinds[] = {MediumKind::Viscous,  MediumKind::HarmonicTrap, MediumKind::Maxwell,
                             MediumKind::Jeffreys, MediumKind::Subdiffusive, MediumKind::Hydrodynamic};

void BM_PsdMaster(benchmark::State& st) {
    const auto m = canonical_medium(kKinds[st.range(0)], {});
    const auto grid = log_grid(1e-3, 1e3, 400);
    for (auto _ : st) benchmark::DoNotOptimize(psd_master_curve(m, grid));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.size()));
    st.SetLabel(std::string(medium_name(kKinds[st.range(0)])));
}
BENCHMARK(BM_PsdMaster)->DenseRange(0, 5);

void BM_PsdClosedForm(benchmark::State& st) {
    const auto m = canonical_medium(kKinds[st.range(0)], {});
    const auto grid = log_grid(1e-3, 1e3, 400);
    for (auto _ : st) {
        for (double w : grid) benchmark::DoNotOptimize(psd_closed_form(m, w));
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.size()));
    st.SetLabel(std::string(medium_name(kKinds[st.range(0)])));
}
BENCHMARK(BM_PsdClosedForm)->DenseRange(0, 5);

void BM_ErfcxComplex(benchmark::State& st) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<std::complex<double>> z(1024);
    for (auto& x : z) x = {std::abs(u(rng)), u(rng)};
    for (auto _ : st) {
        for (const auto& x : z) benchmark::DoNotOptimize(erfcx_complex(x));
    }
    st.SetItemsProcessed(st.iterations() * 1024);
}
BENCHMARK(BM_ErfcxComplex);

void BM_GlDerivative(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    TimeCurve f;
    f.t = uniform_times(1e-3, n);
    for (double t : f.t) f.values.push_back(t * t);
    for (auto _ : st) benchmark::DoNotOptimize(gl_fractional_derivative(f, 0.5, 1e-3));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_GlDerivative)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

SimConfig sim_config(MediumKind k, std::size_t n_steps) {
    SimConfig c;
    c.medium = canonical_medium(k, {});
    c.dt = k == MediumKind::Subdiffusive || k == MediumKind::Hydrodynamic ? 0.005 : 0.01;
    c.n_steps = n_steps;
    c.n_traj = 1;
    c.seed = 3;
    c.burn_in = 0;
    return c;
}

// One trajectory; steps per second is the figure of merit.
void BM_SimulateTrajectory(benchmark::State& st) {
    const auto k = kKinds[st.range(0)];
    const auto n = static_cast<std::size_t>(st.range(1));
    const auto cfg = sim_config(k, n);
    for (auto _ : st) benchmark::DoNotOptimize(simulate(cfg));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
    st.SetLabel(std::string(medium_name(k)));
}
BENCHMARK(BM_SimulateTrajectory)
    ->Args({0, 1 << 14})
    ->Args({1, 1 << 14})
    ->Args({2, 1 << 14})
    ->Args({4, 1 << 12})
    ->Args({4, 1 << 14})
    ->Args({5, 1 << 14})
    ->Unit(benchmark::kMillisecond);

void BM_ColoredNoise(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    std::vector<double> cov(n);
    for (std::size_t k = 0; k < n; ++k) cov[k] = std::exp(-0.01 * static_cast<double>(k));
    CirculantSampler s(cov, n);
    auto rng = trajectory_rng(1, 0);
    std::vector<double> out;
    for (auto _ : st) {
        s.sample(rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ColoredNoise)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Welch(benchmark::State& st) {
    auto cfg = sim_config(MediumKind::Viscous, 1 << 14);
    cfg.n_traj = 8;
    const auto e = simulate(cfg);
    WelchConfig w;
    w.segment_length = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(welch_psd(e, w));
    st.SetItemsProcessed(st.iterations() * 8 * (1 << 14));
}
BENCHMARK(BM_Welch)->Arg(1024)->Arg(8192);

void BM_TimeAveragedMsd(benchmark::State& st) {
    auto cfg = sim_config(MediumKind::Viscous, 1 << 14);
    cfg.n_traj = 4;
    const auto e = simulate(cfg);
    for (auto _ : st) benchmark::DoNotOptimize(time_averaged_msd(e, static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_TimeAveragedMsd)->Arg(100)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
