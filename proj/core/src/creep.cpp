#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "brownspec/errors.hpp"
#include "brownspec/rheology.hpp"
#include "quadrature.hpp"

namespace brownspec {

namespace {

using detail::QuadPiece;

// Frequencies where the named networks change behaviour; used as panel breaks.
std::vector<double> feature_frequencies(const RheoNetwork& net) {
    const auto& p = net.params();
    std::vector<double> f;
    if (p.m_R > 0.0) {
        if (p.G > 0.0) f.push_back(std::sqrt(p.G / p.m_R));
        if (p.eta > 0.0) f.push_back(p.eta / p.m_R);
        if (p.eta_inf > 0.0) f.push_back(p.eta_inf / p.m_R);
        if (p.mu_alpha > 0.0 && p.alpha != 2.0) f.push_back(std::pow(p.mu_alpha / p.m_R, 1.0 / (2.0 - p.alpha)));
    }
    if (p.G > 0.0 && p.eta > 0.0) f.push_back(p.G / p.eta);
    return f;
}

// Appends [a, b] to panels, split at every feature frequency inside it.
void add_panels(std::vector<std::pair<double, double>>& panels, double a, double b,
                const std::vector<double>& breaks) {
    std::vector<double> pts{a};
    for (double x : breaks) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) panels.emplace_back(pts[i], pts[i + 1]);
}

// One non-adaptive pass over all panels sets the scale, then panels whose
// error exceeds their share of rel_tol * |total| are refined.
template <class F>
QuadPiece integrate_panels(const F& f, const std::vector<std::pair<double, double>>& panels, double rel_tol,
                           double extra_scale) {
    std::vector<QuadPiece> first(panels.size());
    double crude = extra_scale;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        first[i] = detail::gk_adaptive(f, panels[i].first, panels[i].second, 0.0, 0);
        crude += std::abs(first[i].value);
    }
    const double share = rel_tol * crude / static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    QuadPiece total;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const QuadPiece p = first[i].error <= share
                                ? first[i]
                                : detail::gk_adaptive(f, panels[i].first, panels[i].second, share);
        total.value += p.value;
        total.error += p.error;
    }
    return total;
}

} // namespace

NumericCreep creep_compliance_numeric(const RheoNetwork& net, const std::vector<double>& t_grid,
                                      const CreepOptions& opts) {
    const auto lf = low_frequency_term(net);
    if (lf.zero || lf.exponent > 1.0) {
        throw DomainError("creep_compliance_numeric: Re phi/omega^2 is not integrable at omega = 0 "
                          "(low-frequency modulus exponent above 1)");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i]) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
            throw GridError("creep_compliance_numeric: t_grid must be finite, non-negative and ascending");
        }
    }

    const auto re_phi = [&](double w) { return fluidity(net, w).real(); };
    const double phi0 = re_phi(0.0);
    const auto breaks = feature_frequencies(net);

    NumericCreep out;
    out.curve.t = t_grid;
    out.curve.kind = CurveKind::Generic;
    out.curve.values.resize(t_grid.size());
    out.error_estimate.resize(t_grid.size());

    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        if (t == 0.0) {
            out.curve.values[i] = 0.0;
            out.error_estimate[i] = 0.0;
            continue;
        }
        const auto kernel = [t](double w) {
            const double s = std::sin(0.5 * w * t);
            return 2.0 * s * s;
        };
        const auto g = [&](double w) {
            if (w == 0.0) return phi0 * t * t / 2.0;
            return re_phi(w) * kernel(w) / (w * w);
        };
        const double P = 2.0 * std::numbers::pi / t;
        const double W = P * opts.periods;

        std::vector<std::pair<double, double>> wpanels, upanels;
        // [0, P] on log panels, four per decade, then one panel per period up to W.
        const double w_min = P * 1e-12;
        const double head = g(0.5 * w_min) * w_min;
        double a = w_min;
        while (a < P) {
            const double b = std::min(P, a * std::pow(10.0, 0.25));
            add_panels(wpanels, a, b, breaks);
            a = b;
        }
        for (int j = 1; j < opts.periods; ++j) add_panels(wpanels, j * P, (j + 1) * P, breaks);
        // Non-oscillatory tail: int_W^inf Re phi / omega^2 = (1/W) int_0^1 Re phi(W/u) du.
        const auto h = [&](double u) { return u == 0.0 ? 0.0 : re_phi(W / u) / W; };
        std::vector<double> ubreaks;
        for (double f : breaks) {
            if (f > W) ubreaks.push_back(W / f);
        }
        double ub = 1.0;
        while (ub > 1e-16) {
            const double ua = ub * std::pow(10.0, -0.25);
            add_panels(upanels, ua, ub, ubreaks);
            ub = ua;
        }
        const QuadPiece pw = integrate_panels(g, wpanels, opts.rel_tol, 0.0);
        const QuadPiece pu = integrate_panels(h, upanels, opts.rel_tol, std::abs(pw.value));
        QuadPiece total{head + pw.value + pu.value, pw.error + pu.error};
        // Oscillatory tail int_W^inf (Re phi/omega^2) cos(omega t) ~ -h'(W)/t^2 since cos(W t) = 1.
        const double dw = 1e-4 * W;
        const auto hw = [&](double w) { return re_phi(w) / (w * w); };
        const double dh = (hw(W + dw) - hw(W - dw)) / (2.0 * dw);
        const double osc = -dh / (t * t);
        total.value -= osc;
        total.error += std::abs(osc) * 1e-2;

        const double J = 2.0 / std::numbers::pi * total.value;
        const double err = 2.0 / std::numbers::pi * total.error;
        out.curve.values[i] = J;
        out.error_estimate[i] = err;
        if (err > opts.warn_tol * std::abs(J)) out.accuracy_warning = true;
    }
    return out;
}

} // namespace brownspec
