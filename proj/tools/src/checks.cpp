#include "brownspec_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "brownspec/errors.hpp"
#include "brownspec/estimators.hpp"
#include "brownspec/simkit.hpp"
#include "brownspec/specfun.hpp"
#include "brownspec/spectra.hpp"

namespace brownspec::cli::checks {

namespace {

constexpr MediumKind kAllKinds[] = {MediumKind::Viscous,  MediumKind::HarmonicTrap, MediumKind::Maxwell,
                                    MediumKind::Jeffreys, MediumKind::Subdiffusive, MediumKind::Hydrodynamic};

CheckResult make(std::string name, double metric, double tol) {
    return {std::move(name), metric, tol, std::isfinite(metric) && metric <= tol};
}

// Runs body, turning a library error into a failed check with an infinite metric.
CheckResult guarded(const std::string& name, double tol, const std::function<double()>& body) {
    try {
        return make(name, body(), tol);
    } catch (const Error&) {
        return make(name, std::numeric_limits<double>::infinity(), tol);
    }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double slope_fit(const std::vector<double>& t, const std::vector<double>& c) {
    return loglog_slope(t, c, t.front(), t.back());
}

std::string kind_key(MediumKind k) { return std::string(medium_name(k)); }

} // namespace

std::vector<CheckResult> master_equivalence(std::size_t n_omega) {
    const NormalizedParams sets[3] = {{0.5, 0.1, 0.3, 0.2}, {1.0, 1.0, 0.5, 0.46}, {5.0, 3.0, 0.8, 2.0}};
    std::vector<CheckResult> out;
    for (MediumKind k : kAllKinds) {
        out.push_back(guarded("master_vs_closed." + kind_key(k), 1e-10, [&] {
            double worst = 0.0;
            for (const auto& p : sets) {
                const MediumSpec med = canonical_medium(k, p);
                for (double w : log_grid(1e-3, 1e3, n_omega)) {
                    worst = std::max(worst, rel(psd_master(med, w), psd_closed_form(med, w)));
                }
            }
            return worst;
        }));
    }
    return out;
}

std::vector<CheckResult> limit_ladder() {
    std::vector<CheckResult> out;
    const auto grid = log_grid(1e-3, 1e3, 50);
    out.push_back(guarded("limit.jeffreys_xi0_is_maxwell", 1e-12, [&] {
        double worst = 0.0;
        for (double a : {0.5, 2.0, 10.0}) {
            NormalizedParams p;
            p.omegaR_tau = a;
            p.xi = 0.0;
            const MediumSpec j = canonical_medium(MediumKind::Jeffreys, p);
            const MediumSpec m = canonical_medium(MediumKind::Maxwell, p);
            for (double w : grid) worst = std::max(worst, rel(psd_master(j, w), psd_master(m, w)));
        }
        return worst;
    }));
    const MediumSpec visc = canonical_medium(MediumKind::Viscous, {});
    out.push_back(guarded("limit.subdiffusive_alpha1_is_viscous", 1e-10, [&] {
        NormalizedParams p;
        p.alpha = 1.0;
        const MediumSpec s = canonical_medium(MediumKind::Subdiffusive, p);
        double worst = 0.0;
        for (double w : grid) worst = std::max(worst, rel(psd_master(s, w), psd_master(visc, w)));
        return worst;
    }));
    out.push_back(guarded("limit.trap_G0_is_viscous", 1e-10, [&] {
        MediumSpec t = visc;
        t.params = HarmonicTrap{0.0, std::get<Viscous>(visc.params).eta};
        double worst = 0.0;
        for (double w : grid) worst = std::max(worst, rel(psd_master(t, w), psd_master(visc, w)));
        return worst;
    }));
    out.push_back(guarded("limit.maxwell_omegaRtau50_near_viscous", 0.01, [&] {
        NormalizedParams p;
        p.omegaR_tau = 50.0;
        const MediumSpec m = canonical_medium(MediumKind::Maxwell, p);
        double worst = 0.0;
        for (double w : log_grid(0.1, 10.0, 50)) worst = std::max(worst, rel(psd_master(m, w), psd_master(visc, w)));
        return worst;
    }));
    return out;
}

std::vector<CheckResult> trap_peak() {
    std::vector<CheckResult> out;
    out.push_back(guarded("trap.peak_is_one_at_omegaR", 1e-12, [&] {
        double worst = 0.0;
        for (double a : {0.25, 1.0, 5.0}) {
            NormalizedParams p;
            p.omegaR_tau = a;
            const MediumSpec med = canonical_medium(MediumKind::HarmonicTrap, p);
            const auto c = psd_master_curve(med, {a, a * (1 - 1e-3), a * (1 + 1e-3)}, Normalization::Normalized);
            worst = std::max(worst, std::abs(c.values[0] - 1.0));
            // neighbours must sit below the peak
            if (!(c.values[1] < c.values[0] && c.values[2] < c.values[0])) return std::numeric_limits<double>::infinity();
        }
        return worst;
    }));
    return out;
}

std::vector<CheckResult> gl_accuracy() {
    struct Case {
        double p, alpha;
    };
    std::vector<CheckResult> out;
    const double h = 1e-4;
    const std::size_t n = 10001;
    for (const Case c : {Case{1.0, 0.5}, Case{2.0, 0.5}, Case{2.0, 0.75}}) {
        const std::string name = "gl.t^" + std::to_string(static_cast<int>(c.p)) + "_alpha_" +
                                 (c.alpha == 0.5 ? std::string("0.5") : std::string("0.75"));
        out.push_back(guarded(name, 1e-3, [&] {
            TimeCurve s;
            for (std::size_t i = 0; i < n; ++i) {
                s.t.push_back(static_cast<double>(i) * h);
                s.values.push_back(std::pow(s.t.back(), c.p));
            }
            const TimeCurve d = gl_fractional_derivative(s, c.alpha, h);
            const double pref = gamma_fn(c.p + 1.0) / gamma_fn(c.p + 1.0 - c.alpha);
            double worst = 0.0;
            for (std::size_t i = 1000; i < n; i += 10) {
                worst = std::max(worst, rel(d.values[i], pref * std::pow(s.t[i], c.p - c.alpha)));
            }
            return worst;
        }));
    }
    return out;
}

std::vector<CheckResult> fourier_identity() {
    const MediumSpec med = canonical_medium(MediumKind::Viscous, {});
    const double eta = std::get<Viscous>(med.params).eta;
    const double tau = *dimensionless_groups(med).tau;
    const auto grid = log_grid(1e-2 / tau, 1e2 / tau, 30);
    std::vector<CheckResult> out;
    out.push_back(guarded("fdt.two_re_transform_analytic", 1e-10, [&] {
        double worst = 0.0;
        for (double w : grid) {
            worst = std::max(worst, rel(2.0 * vacf_viscous_transform(med.ctx, eta, w).real(),
                                        psd_viscous(med.ctx, eta, w)));
        }
        return worst;
    }));
    out.push_back(guarded("fdt.two_re_transform_quadrature", 5e-3, [&] {
        double worst = 0.0;
        for (double w : grid) {
            const double s =
                psd_from_vacf_numeric([&](double t) { return vacf_viscous(med.ctx, eta, t); }, w, tau);
            worst = std::max(worst, rel(s, psd_viscous(med.ctx, eta, w)));
        }
        return worst;
    }));
    return out;
}

std::vector<CheckResult> msd_vacf_loop() {
    std::vector<CheckResult> out;
    out.push_back(guarded("fdt.vacf_from_msd", 1e-4, [&] {
        // h = 2^-10 keeps every sample time exact in binary; tau = 1000 h
        const double h = 1.0 / 1024.0;
        const double tau = 1000.0 * h;
        const MediumSpec base = canonical_medium(MediumKind::Viscous, {});
        const double eta = base.ctx.m_R() / tau;
        TimeCurve msd;
        msd.kind = CurveKind::MSD;
        for (std::size_t i = 0; i <= 10100; ++i) {
            msd.t.push_back(static_cast<double>(i) * h);
            msd.values.push_back(msd_viscous(base.ctx, eta, msd.t.back()));
        }
        const TimeCurve v = vacf_from_msd(msd);
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v.t[i] < 0.1 * tau - 1e-12 || v.t[i] > 10.0 * tau + 1e-12) continue;
            worst = std::max(worst, rel(v.values[i], vacf_viscous(base.ctx, eta, v.t[i])));
        }
        return worst;
    }));
    return out;
}

std::vector<CheckResult> hydrodynamic_consistency(std::size_t n_omega) {
    std::vector<CheckResult> out;
    for (double g : {0.46, 0.55}) {
        NormalizedParams p;
        p.gamma_ratio = g;
        const MediumSpec med = canonical_medium(MediumKind::Hydrodynamic, p);
        const auto& h = std::get<Hydrodynamic>(med.params);
        const double lam = *dimensionless_groups(med).lambda;
        const std::string tag = g == 0.46 ? "0.46" : "0.55";
        const auto vacf = [&](double t) { return vacf_hydrodynamic(med.ctx, h.eta, h.rho_f, h.rho_p, t); };
        out.push_back(guarded("hydro.transform_vs_closed.gamma_" + tag, 5e-3, [&] {
            double worst = 0.0;
            for (double y : log_grid(1e-2, 1e2, n_omega)) {
                const double w = y / lam;
                worst = std::max(worst, rel(psd_from_vacf_numeric(vacf, w, lam),
                                            psd_hydrodynamic(med.ctx, h.eta, h.rho_f, h.rho_p, w)));
            }
            return worst;
        }));
        out.push_back(guarded("hydro.vacf_t0.gamma_" + tag, 1e-10, [&] {
            return rel(vacf(0.0), med.ctx.N * med.ctx.kT / med.effective_mass());
        }));
        out.push_back(guarded("hydro.tail_slope.gamma_" + tag, 0.05, [&] {
            const auto t = log_grid(1e3 * lam, 1e5 * lam, 50);
            std::vector<double> c;
            for (double x : t) c.push_back(vacf(x));
            return std::abs(slope_fit(t, c) + 1.5);
        }));
    }
    return out;
}

std::vector<CheckResult> sum_rules() {
    std::vector<CheckResult> out;
    for (MediumKind k : kAllKinds) {
        out.push_back(guarded("sum_rule." + kind_key(k), 5e-3, [&] {
            const SumRule s = equipartition_integral(canonical_medium(k, {}));
            return rel(s.integral, s.expected);
        }));
    }
    return out;
}

namespace {

SimConfig base_sim(MediumKind k, const NormalizedParams& p, std::size_t n_traj, std::uint64_t seed,
                   unsigned threads) {
    SimConfig cfg;
    cfg.medium = canonical_medium(k, p);
    cfg.dt = 0.01;
    cfg.n_steps = std::size_t{1} << 14;
    cfg.n_traj = n_traj;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
}

double welch_worst(const SpectrumEstimate& est, const MediumSpec& med, double lo, double hi) {
    double worst = 0.0;
    for (std::size_t j = 1; j < est.curve.size(); ++j) {
        const double w = est.curve.omega[j];
        if (w < lo || w > hi) continue;
        worst = std::max(worst, rel(est.curve.values[j], psd_closed_form(med, w)));
    }
    return worst;
}

} // namespace

std::vector<CheckResult> linear_media_simulation(const SimScale& sc) {
    std::vector<CheckResult> out;
    // Segment 2^13 at dt = 0.01 puts omega = 0.1 at bin 2, clear of the detrend bias.
    WelchConfig wc;
    wc.segment_length = std::size_t{1} << 13;

    {
        const SimConfig cfg = base_sim(MediumKind::Viscous, {}, sc.viscous_traj, sc.seed, sc.threads);
        const double tau = *dimensionless_groups(cfg.medium).tau;
        const std::size_t max_lag = static_cast<std::size_t>(std::lround(20.0 * tau / cfg.dt));
        WelchAccumulator welch(wc, cfg.dt, cfg.n_steps);
        MsdAccumulator msd(cfg.dt, cfg.n_steps, max_lag);
        const std::size_t batch = 50;
        for (std::size_t first = 0; first < cfg.n_traj; first += batch) {
            const Ensemble e = simulate_range(cfg, first, std::min(batch, cfg.n_traj - first));
            welch.add(e, sc.threads);
            msd.add(e, sc.threads);
        }
        const auto W = welch.result();
        out.push_back(make("sim.viscous_welch_psd", welch_worst(W, cfg.medium, 0.1 / tau, 5.0 / tau), sc.psd_tolerance));
        const auto M = msd.result();
        const double eta = std::get<Viscous>(cfg.medium.params).eta;
        double worst = 0.0;
        for (std::size_t k = 1; k < M.curve.size(); ++k) {
            const double t = M.curve.t[k];
            if (t < 0.1 * tau - 1e-12) continue;
            worst = std::max(worst, rel(M.curve.values[k], msd_viscous(cfg.medium.ctx, eta, t)));
        }
        out.push_back(make("sim.viscous_msd", worst, 0.05));
    }
    {
        NormalizedParams p;
        p.omegaR_tau = 1.0;
        const SimConfig cfg = base_sim(MediumKind::HarmonicTrap, p, sc.trap_traj, sc.seed + 1, sc.threads);
        const Ensemble e = simulate(cfg);
        SampleAccumulator acc(1);
        for (std::size_t i = 0; i < e.trajectories.size(); ++i) {
            double s = 0.0;
            for (int a = 0; a < e.dims; ++a) {
                const double* x = e.position(i, a);
                for (std::size_t n = 0; n < e.n_steps; ++n) s += x[n] * x[n];
            }
            acc.add({s / static_cast<double>(e.n_steps * static_cast<std::size_t>(e.dims))});
        }
        const double G = std::get<HarmonicTrap>(cfg.medium.params).G;
        const double expected = cfg.medium.ctx.kT / (cfg.medium.ctx.six_pi_R() * G);
        out.push_back(make("sim.trap_position_variance_z", std::abs(acc.mean()[0] - expected) / acc.std_error()[0], 3.0));
    }
    {
        NormalizedParams p;
        p.omegaR_tau = 1.0;
        const SimConfig cfg = base_sim(MediumKind::Maxwell, p, sc.maxwell_traj, sc.seed + 2, sc.threads);
        const double tau = *dimensionless_groups(cfg.medium).tau;
        WelchAccumulator welch(wc, cfg.dt, cfg.n_steps);
        const std::size_t batch = 50;
        for (std::size_t first = 0; first < cfg.n_traj; first += batch) {
            welch.add(simulate_range(cfg, first, std::min(batch, cfg.n_traj - first)), sc.threads);
        }
        out.push_back(
            make("sim.maxwell_welch_psd", welch_worst(welch.result(), cfg.medium, 0.1 / tau, 5.0 / tau), sc.psd_tolerance));
    }
    return out;
}

std::vector<CheckResult> subdiffusive_simulation(const SimScale& sc) {
    std::vector<CheckResult> out;
    NormalizedParams p;
    p.alpha = 0.5;
    {
        SimConfig cfg = base_sim(MediumKind::Subdiffusive, p, sc.subdiff_msd_traj, sc.seed + 3, sc.threads);
        cfg.dt = 0.02;
        const double lam = *dimensionless_groups(cfg.medium).lambda;
        const Ensemble e = simulate(cfg);
        const auto M = sc.subdiff_time_averaged ? time_averaged_msd(e, cfg.n_steps - 1, sc.threads)
                                                : ensemble_msd_estimate(e);
        const double s = loglog_slope(M.curve.t, M.curve.values, 3.0 * lam, 300.0 * lam);
        out.push_back(make("sim.subdiffusive_msd_slope_dev", std::abs(s - p.alpha), 0.05));
    }
    {
        SimConfig cfg = base_sim(MediumKind::Subdiffusive, p, sc.subdiff_psd_traj, sc.seed + 4, sc.threads);
        cfg.dt = 0.005;
        cfg.n_steps = std::size_t{1} << 12;
        const double lam = *dimensionless_groups(cfg.medium).lambda;
        WelchConfig wc;
        wc.segment_length = 1024;
        const auto S = welch_psd_estimate(simulate(cfg), wc, sc.threads);
        const double s = loglog_slope(S.curve.omega, S.curve.values, 5.0 / lam, 50.0 / lam);
        out.push_back(make("sim.subdiffusive_psd_slope_dev", std::abs(s + (3.0 - p.alpha)), 0.1));
    }
    return out;
}

} // namespace brownspec::cli::checks
