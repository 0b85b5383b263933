#include "brownspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "brownspec/errors.hpp"
#include "quadrature.hpp"
#include "brownspec/specfun.hpp"

namespace brownspec {

namespace {

constexpr double kPi = std::numbers::pi;

#ifdef BROWNSPEC_TAMPER_PREFACTOR
constexpr double kMasterScale = 1.0 + 1e-6;
#else
constexpr double kMasterScale = 1.0;
#endif

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be finite and > 0 (got " << v << ")";
        throw DomainError(os.str());
    }
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be finite and >= 0 (got " << v << ")";
        throw DomainError(os.str());
    }
}

double fluid_mass(const PhysicalContext& ctx, double rho_f) {
    return 4.0 / 3.0 * kPi * ctx.R * ctx.R * ctx.R * rho_f;
}

struct HydroDerived {
    double M;     // m + m_f/2
    double m_R;   // M/(6 pi R)
    double mu;    // R sqrt(rho_f eta)
    double zeta;  // 6 pi R eta
    double z;     // 6 pi R^2 sqrt(rho_f eta)
    double lambda;
    double gamma_ratio;
};

HydroDerived hydro_derived(const PhysicalContext& ctx, double eta, double rho_f) {
    HydroDerived h{};
    h.M = ctx.m + 0.5 * fluid_mass(ctx, rho_f);
    h.m_R = h.M / ctx.six_pi_R();
    h.mu = ctx.R * std::sqrt(rho_f * eta);
    h.zeta = ctx.six_pi_R() * eta;
    h.z = ctx.six_pi_R() * ctx.R * std::sqrt(rho_f * eta);
    h.lambda = (h.m_R / h.mu) * (h.m_R / h.mu);
    h.gamma_ratio = eta * h.m_R / (h.mu * h.mu);
    return h;
}

void check_sphere_mass(const PhysicalContext& ctx, double rho_p) {
    const double m_sphere = 4.0 / 3.0 * kPi * ctx.R * ctx.R * ctx.R * rho_p;
    if (std::abs(ctx.m - m_sphere) > 1e-6 * m_sphere) {
        std::ostringstream os;
        os << "hydrodynamic medium needs m = (4/3) pi R^3 rho_p = " << m_sphere << " kg (got m = " << ctx.m << ")";
        throw DomainError(os.str());
    }
    if (ctx.rho_p && std::abs(*ctx.rho_p - rho_p) > 1e-12 * rho_p) {
        throw DomainError("context rho_p disagrees with the hydrodynamic medium rho_p");
    }
}

double subdiff_lambda(double m_R, double mu, double alpha) { return std::pow(m_R / mu, 1.0 / (2.0 - alpha)); }

} // namespace

std::string_view medium_name(MediumKind k) {
    switch (k) {
    case MediumKind::Viscous: return "viscous";
    case MediumKind::HarmonicTrap: return "trap";
    case MediumKind::Maxwell: return "maxwell";
    case MediumKind::Jeffreys: return "jeffreys";
    case MediumKind::Subdiffusive: return "subdiffusive";
    case MediumKind::Hydrodynamic: return "hydrodynamic";
    }
    return "unknown";
}

MediumKind MediumSpec::kind() const { return static_cast<MediumKind>(params.index()); }

void MediumSpec::validate() const {
    ctx.validate();
    std::visit(overloaded{
                   [](const Viscous& p) { require_positive(p.eta, "eta"); },
                   [](const HarmonicTrap& p) {
                       require_nonnegative(p.G, "G");
                       require_positive(p.eta, "eta");
                   },
                   [](const Maxwell& p) {
                       require_positive(p.G, "G");
                       require_positive(p.eta, "eta");
                   },
                   [](const Jeffreys& p) {
                       require_positive(p.G, "G");
                       require_positive(p.eta, "eta");
                       require_nonnegative(p.eta_inf, "eta_inf");
                   },
                   [](const Subdiffusive& p) {
                       require_positive(p.mu_alpha, "mu_alpha");
                       if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
                           std::ostringstream os;
                           os << "subdiffusive alpha must lie in (0, 1] (got " << p.alpha << ")";
                           throw DomainError(os.str());
                       }
                   },
                   [this](const Hydrodynamic& p) {
                       require_positive(p.eta, "eta");
                       require_positive(p.rho_f, "rho_f");
                       require_positive(p.rho_p, "rho_p");
                       check_sphere_mass(ctx, p.rho_p);
                   },
               },
               params);
}

double MediumSpec::effective_mass() const {
    if (auto h = std::get_if<Hydrodynamic>(&params)) return ctx.m + 0.5 * fluid_mass(ctx, h->rho_f);
    return ctx.m;
}

double MediumSpec::m_R() const { return effective_mass() / ctx.six_pi_R(); }

RheoNetwork analogue_network(const MediumSpec& medium) {
    const double mR = medium.m_R();
    return std::visit(overloaded{
                          [&](const Viscous& p) { return RheoNetwork::interviscous(p.eta, mR); },
                          [&](const HarmonicTrap& p) { return RheoNetwork::inertoviscoelastic(p.G, p.eta, mR); },
                          [&](const Maxwell& p) { return RheoNetwork::maxwell_inerter(p.G, p.eta, mR); },
                          [&](const Jeffreys& p) { return RheoNetwork::jeffreys_inerter(p.G, p.eta, p.eta_inf, mR); },
                          [&](const Subdiffusive& p) { return RheoNetwork::springpot_inerter(p.mu_alpha, p.alpha, mR); },
                          [&](const Hydrodynamic& p) {
                              const auto h = hydro_derived(medium.ctx, p.eta, p.rho_f);
                              return RheoNetwork::hydrodynamic(p.eta, h.mu, h.m_R);
                          },
                      },
                      medium.params);
}

DimensionlessGroups dimensionless_groups(const MediumSpec& medium) {
    DimensionlessGroups g;
    const double mR = medium.m_R();
    std::visit(overloaded{
                   [&](const Viscous& p) { g.tau = mR / p.eta; },
                   [&](const HarmonicTrap& p) {
                       g.tau = mR / p.eta;
                       g.omegaR_tau = std::sqrt(p.G * mR) / p.eta;
                   },
                   [&](const Maxwell& p) {
                       g.tau = mR / p.eta;
                       g.omegaR_tau = std::sqrt(p.G * mR) / p.eta;
                   },
                   [&](const Jeffreys& p) {
                       g.tau = mR / p.eta;
                       g.omegaR_tau = std::sqrt(p.G * mR) / p.eta;
                       g.xi = p.eta_inf / p.eta;
                   },
                   [&](const Subdiffusive& p) { g.lambda = subdiff_lambda(mR, p.mu_alpha, p.alpha); },
                   [&](const Hydrodynamic& p) {
                       const auto h = hydro_derived(medium.ctx, p.eta, p.rho_f);
                       g.tau = h.m_R / p.eta;
                       g.lambda = h.lambda;
                       g.gamma_ratio = h.gamma_ratio;
                   },
               },
               medium.params);
    return g;
}

double frequency_scale(const MediumSpec& medium) {
    const auto g = dimensionless_groups(medium);
    if (medium.kind() == MediumKind::Subdiffusive || medium.kind() == MediumKind::Hydrodynamic) return *g.lambda;
    return *g.tau;
}

double psd_reference(const MediumSpec& medium) {
    const double P = medium.ctx.thermal_prefactor();
    const double mR = medium.m_R();
    return std::visit(overloaded{
                          [&](const Viscous& p) { return P / p.eta; },
                          [&](const HarmonicTrap& p) { return P / p.eta; },
                          [&](const Maxwell& p) { return P / p.eta; },
                          [&](const Jeffreys& p) { return P / p.eta; },
                          [&](const Subdiffusive& p) {
                              return P * std::pow(p.mu_alpha * std::pow(mR, 1.0 - p.alpha), -1.0 / (2.0 - p.alpha));
                          },
                          [&](const Hydrodynamic& p) {
                              const auto h = hydro_derived(medium.ctx, p.eta, p.rho_f);
                              return P * h.m_R / (h.mu * h.mu);
                          },
                      },
                      medium.params);
}

double psd_master(const MediumSpec& medium, double omega) {
    const auto net = analogue_network(medium);
    return kMasterScale * medium.ctx.thermal_prefactor() * fluidity(net, omega).real();
}

SpectrumCurve psd_master_curve(const MediumSpec& medium, const std::vector<double>& omega, Normalization norm) {
    medium.validate();
    const auto net = analogue_network(medium);
    const double P = kMasterScale * medium.ctx.thermal_prefactor();
    SpectrumCurve c;
    c.normalization = norm;
    c.omega.resize(omega.size());
    c.values.resize(omega.size());
    if (norm == Normalization::Dimensional) {
        for (std::size_t i = 0; i < omega.size(); ++i) {
            c.omega[i] = omega[i];
            c.values[i] = P * fluidity(net, omega[i]).real();
        }
    } else {
        // omega holds dimensionless frequencies here.
        const double scale = frequency_scale(medium);
        const double ref = psd_reference(medium);
        for (std::size_t i = 0; i < omega.size(); ++i) {
            c.omega[i] = omega[i];
            c.values[i] = P * fluidity(net, omega[i] / scale).real() / ref;
        }
    }
    return c;
}

namespace normalized {

double viscous(double x) { return 1.0 / (1.0 + x * x); }

double trap(double a, double x) {
    if (a == 0.0) return viscous(x);
    const double d = a * a - x * x;
    return x * x / (d * d + x * x);
}

double maxwell(double a, double x) {
    const double a2 = a * a, a4 = a2 * a2;
    const double d = a2 - x * x;
    return a4 / (d * d + x * x * a4);
}

double jeffreys(double a, double xi, double x) {
    const double a2 = a * a;
    const double num = a2 * ((1.0 + xi) * a2 + (xi / a2) * x * x);
    const double d1 = (1.0 + xi) * a2 - x * x;
    const double d2 = x * (1.0 + xi / a2) * a2;
    return num / (d1 * d1 + d2 * d2);
}

double subdiffusive(double alpha, double y) {
    const auto ph = frac_power_iomega(1.0, alpha); // cos + i sin of alpha pi/2
    const double ya = std::pow(y, alpha);
    const double d1 = ya * ph.real() - y * y;
    const double d2 = ya * ph.imag();
    return std::pow(y, 1.0 + alpha) * ph.imag() / (d1 * d1 + d2 * d2);
}

double hydrodynamic(double g, double y) {
    constexpr double c = std::numbers::sqrt2 / 2.0;
    const double r = std::sqrt(y);
    const double num = g + r * c;
    const double d2 = y + r * c;
    return num / (num * num + d2 * d2);
}

} // namespace normalized

double psd_viscous(const PhysicalContext& ctx, double eta, double omega) {
    ctx.validate();
    require_positive(eta, "eta");
    const double tau = ctx.m_R() / eta;
    return ctx.thermal_prefactor() / eta * normalized::viscous(omega * tau);
}

double psd_trap(const PhysicalContext& ctx, double G, double eta, double omega) {
    ctx.validate();
    require_nonnegative(G, "G");
    require_positive(eta, "eta");
    const double tau = ctx.m_R() / eta;
    const double a = std::sqrt(G * ctx.m_R()) / eta;
    return ctx.thermal_prefactor() / eta * normalized::trap(a, std::abs(omega) * tau);
}

double psd_maxwell(const PhysicalContext& ctx, double G, double eta, double omega) {
    ctx.validate();
    require_positive(G, "G");
    require_positive(eta, "eta");
    const double tau = ctx.m_R() / eta;
    const double a = std::sqrt(G * ctx.m_R()) / eta;
    return ctx.thermal_prefactor() / eta * normalized::maxwell(a, std::abs(omega) * tau);
}

double psd_jeffreys(const PhysicalContext& ctx, double G, double eta, double eta_inf, double omega) {
    ctx.validate();
    require_positive(G, "G");
    require_positive(eta, "eta");
    require_nonnegative(eta_inf, "eta_inf");
    const double tau = ctx.m_R() / eta;
    const double a = std::sqrt(G * ctx.m_R()) / eta;
    return ctx.thermal_prefactor() / eta * normalized::jeffreys(a, eta_inf / eta, std::abs(omega) * tau);
}

double psd_subdiffusive(const PhysicalContext& ctx, double mu_alpha, double alpha, double omega) {
    MediumSpec m{Subdiffusive{mu_alpha, alpha}, ctx};
    m.validate();
    const double lambda = subdiff_lambda(ctx.m_R(), mu_alpha, alpha);
    return psd_reference(m) * normalized::subdiffusive(alpha, std::abs(omega) * lambda);
}

double psd_hydrodynamic(const PhysicalContext& ctx, double eta, double rho_f, double rho_p, double omega) {
    MediumSpec m{Hydrodynamic{eta, rho_f, rho_p}, ctx};
    m.validate();
    const auto h = hydro_derived(ctx, eta, rho_f);
    return psd_reference(m) * normalized::hydrodynamic(h.gamma_ratio, std::abs(omega) * h.lambda);
}

double psd_closed_form(const MediumSpec& medium, double omega) {
    const auto& c = medium.ctx;
    return std::visit(overloaded{
                          [&](const Viscous& p) { return psd_viscous(c, p.eta, omega); },
                          [&](const HarmonicTrap& p) { return psd_trap(c, p.G, p.eta, omega); },
                          [&](const Maxwell& p) { return psd_maxwell(c, p.G, p.eta, omega); },
                          [&](const Jeffreys& p) { return psd_jeffreys(c, p.G, p.eta, p.eta_inf, omega); },
                          [&](const Subdiffusive& p) { return psd_subdiffusive(c, p.mu_alpha, p.alpha, omega); },
                          [&](const Hydrodynamic& p) { return psd_hydrodynamic(c, p.eta, p.rho_f, p.rho_p, omega); },
                      },
                      medium.params);
}

MediumSpec canonical_medium(MediumKind kind, const NormalizedParams& p, int N) {
    PhysicalContext ctx;
    ctx.kT = 1.0;
    ctx.N = N;
    ctx.R = 1.0 / (6.0 * kPi); // 6 pi R = 1, so m_R = m
    ctx.m = 1.0;
    switch (kind) {
    case MediumKind::Viscous: return {Viscous{1.0}, ctx};
    case MediumKind::HarmonicTrap:
        require_nonnegative(p.omegaR_tau, "omegaRtau");
        return {HarmonicTrap{p.omegaR_tau * p.omegaR_tau, 1.0}, ctx};
    case MediumKind::Maxwell:
        require_positive(p.omegaR_tau, "omegaRtau");
        return {Maxwell{p.omegaR_tau * p.omegaR_tau, 1.0}, ctx};
    case MediumKind::Jeffreys:
        require_positive(p.omegaR_tau, "omegaRtau");
        require_nonnegative(p.xi, "xi");
        return {Jeffreys{p.omegaR_tau * p.omegaR_tau, 1.0, p.xi}, ctx};
    case MediumKind::Subdiffusive: return {Subdiffusive{1.0, p.alpha}, ctx};
    case MediumKind::Hydrodynamic: {
        if (!(p.gamma_ratio > 1.0 / 9.0) || !std::isfinite(p.gamma_ratio)) {
            throw DomainError("gamma must exceed 1/9 (rho_p/rho_f = (9 gamma - 1)/2 > 0)");
        }
        const double rho_f = 1.0;
        const double rho_p = (9.0 * p.gamma_ratio - 1.0) / 2.0;
        auto c = PhysicalContext::sphere(1.0, N, 1.0, rho_p);
        c.rho_f = rho_f;
        const double M = c.m + 0.5 * fluid_mass(c, rho_f);
        const double mR = M / c.six_pi_R();
        const double eta = mR * mR / (c.R * c.R * rho_f); // lambda = 1
        return {Hydrodynamic{eta, rho_f, rho_p}, c};
    }
    }
    throw DomainError("unknown medium kind");
}

double vacf_viscous(const PhysicalContext& ctx, double eta, double t) {
    ctx.validate();
    require_positive(eta, "eta");
    const double tau = ctx.m_R() / eta;
    return ctx.N * ctx.kT / ctx.m * std::exp(-std::abs(t) / tau);
}

std::complex<double> vacf_viscous_transform(const PhysicalContext& ctx, double eta, double omega) {
    ctx.validate();
    require_positive(eta, "eta");
    const double tau = ctx.m_R() / eta;
    return ctx.N * ctx.kT / ctx.m / std::complex<double>(1.0 / tau, omega);
}

std::complex<double> vacf_hydrodynamic_complex(const PhysicalContext& ctx, double eta, double rho_f, double rho_p,
                                               double t) {
    MediumSpec med{Hydrodynamic{eta, rho_f, rho_p}, ctx};
    med.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("vacf_hydrodynamic needs finite t >= 0");
    const auto h = hydro_derived(ctx, eta, rho_f);
    using C = std::complex<double>;
    const C disc = std::sqrt(C(h.z * h.z - 4.0 * h.zeta * h.M, 0.0));
    const C a = (h.z + disc) / (2.0 * h.M);
    const C b = (h.z - disc) / (2.0 * h.M);
    const double amp = ctx.N * ctx.kT / h.M;
    const double st = std::sqrt(t);

    const double umin2 = std::min(std::norm(a), std::norm(b)) * t;
    if (umin2 > 60.0) {
        // Large-argument series of x erfcx(x sqrt t); the k = 0 terms cancel.
        // (b^-2k - a^-2k)/(b - a) = -(sum_j a^j b^(2k-1-j)) / (ab)^2k, free of cancellation.
        C sum = 0.0;
        double coef = 1.0; // (2k-1)!!/(2t)^k with sign
        C ab2 = 1.0;
        const C ab = a * b;
        double prev = INFINITY;
        for (int k = 1; k <= 30; ++k) {
            coef *= -(2.0 * k - 1.0) / (2.0 * t);
            ab2 *= ab * ab;
            C poly = 0.0;
            C ap = 1.0;
            const int n = 2 * k;
            for (int j = 0; j < n; ++j) {
                poly += ap * std::pow(b, n - 1 - j);
                ap *= a;
            }
            const C term = coef * (-poly / ab2);
            const double mag = std::abs(term);
            if (mag > prev) break;
            sum += term;
            prev = mag;
            if (mag < 1e-17 * std::abs(sum)) break;
        }
        return amp * sum / std::sqrt(kPi * t);
    }
    if (std::abs(b - a) < 1e-5 * std::abs(a + b)) {
        // Double root: derivative of x erfcx(x sqrt t) at the mean root.
        const C x = 0.5 * (a + b);
        const C u = x * st;
        return amp * ((1.0 + 2.0 * u * u) * erfcx_complex(u) - 2.0 * u / std::sqrt(kPi));
    }
    return amp * (b * erfcx_complex(b * st) - a * erfcx_complex(a * st)) / (b - a);
}

double vacf_hydrodynamic(const PhysicalContext& ctx, double eta, double rho_f, double rho_p, double t) {
    return vacf_hydrodynamic_complex(ctx, eta, rho_f, rho_p, t).real();
}

double msd_viscous(const PhysicalContext& ctx, double eta, double t) {
    ctx.validate();
    require_positive(eta, "eta");
    // Evaluated in extended precision and rounded once: second differences of
    // these samples amplify per-sample rounding by 1/h^2.
    const long double tau = static_cast<long double>(ctx.m_R()) / eta;
    const long double x = std::abs(static_cast<long double>(t)) / tau;
    long double shape;
    if (x < 0.5L) {
        long double term = x * x / 2.0L, sum = 0.0L;
        for (int k = 2; k < 60 && term != 0.0L; ++k) {
            sum += term;
            term *= -x / static_cast<long double>(k + 1);
        }
        shape = sum;
    } else {
        shape = x + std::expm1(-x);
    }
    return static_cast<double>(static_cast<long double>(ctx.thermal_prefactor()) * tau / eta * shape);
}

TimeCurve msd_from_network(const MediumSpec& medium, const std::vector<double>& t_grid) {
    medium.validate();
    const auto net = analogue_network(medium);
    const double P = medium.ctx.thermal_prefactor();
    TimeCurve out;
    out.t = t_grid;
    out.kind = CurveKind::MSD;
    out.values.resize(t_grid.size());
    if (net.kind() == NetworkKind::Interviscous) {
        for (std::size_t i = 0; i < t_grid.size(); ++i) out.values[i] = P * creep_compliance_closed(net, t_grid[i]);
        return out;
    }
    const auto J = creep_compliance_numeric(net, t_grid);
    for (std::size_t i = 0; i < t_grid.size(); ++i) out.values[i] = P * J.curve.values[i];
    return out;
}

TimeCurve vacf_from_msd(const TimeCurve& msd) {
    const double h = msd.uniform_step();
    const std::size_t n = msd.size();
    if (n < 4) throw GridError("vacf_from_msd needs at least four samples");
    const auto& f = msd.values;
    TimeCurve out;
    out.t = msd.t;
    out.kind = CurveKind::VACF;
    out.values.resize(n);
    const double s = 0.5 / (h * h);
    for (std::size_t k = 1; k + 1 < n; ++k) out.values[k] = s * (f[k + 1] - 2.0 * f[k] + f[k - 1]);
    out.values[0] = s * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]);
    out.values[n - 1] = s * (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]);
    return out;
}

namespace {

template <class F>
double gk(const F& f, double a, double b, double abs_tol) {
    return detail::gk_adaptive(f, a, b, abs_tol).value;
}

} // namespace

double psd_from_vacf_numeric(const std::function<double(double)>& vacf, double omega, double time_scale) {
    require_positive(time_scale, "time_scale");
    require_nonnegative(omega, "omega");
    const auto f = [&](double t) { return vacf(t) * std::cos(omega * t); };
    const double c0 = vacf(0.0);
    const double tol = 1e-12 * std::abs(c0) * time_scale;
    double total = 0.0;
    // Log panels resolve cusps at t = 0 and the approach to the first period.
    const double t0 = 1e-10 * time_scale;
    total += c0 * t0;
    const double period = omega > 0.0 ? 2.0 * kPi / omega : INFINITY;
    const double log_end = omega > 0.0 ? period : 50.0 * time_scale;
    double a = t0;
    while (a < log_end) {
        const double b = std::min(log_end, a * std::pow(10.0, 0.25));
        total += gk(f, a, b, tol);
        a = b;
    }
    if (omega == 0.0) {
        // Power-law tails are not handled at omega = 0; the log panels run to 50 time scales.
        return 2.0 * total;
    }
    // Whole periods out to T, then the tail by parts (sin(omega T) = 0, cos = 1).
    const double T = std::max(64.0 * period, 50.0 * time_scale);
    const auto n_periods = static_cast<std::size_t>(std::ceil(T / period));
    for (std::size_t j = 1; j < n_periods; ++j) total += gk(f, j * period, (j + 1) * period, tol);
    const double Tend = n_periods * period;
    const double dt = 1e-4 * Tend;
    const double dC = (vacf(Tend + dt) - vacf(Tend - dt)) / (2.0 * dt);
    total += -dC / (omega * omega);
    return 2.0 * total;
}

SumRule equipartition_integral(const MediumSpec& medium) {
    medium.validate();
    const auto net = analogue_network(medium);
    const double P = medium.ctx.thermal_prefactor();
    const auto S = [&](double w) { return P * fluidity(net, w).real(); };
    const double ts = frequency_scale(medium);

    std::vector<double> breaks;
    const auto& np = net.params();
    if (np.G > 0.0 && np.m_R > 0.0) breaks.push_back(std::sqrt(np.G / np.m_R));
    if (np.G > 0.0 && np.eta > 0.0) breaks.push_back(np.G / np.eta);
    breaks.push_back(1.0 / ts);

    const double lo = 1e-10 / ts;
    const double hi = 1e8 / ts;
    SumRule r;
    r.expected = kPi * medium.ctx.N * medium.ctx.kT / medium.effective_mass();
    const double tol = 1e-13 * r.expected;
    r.integral = S(0.5 * lo) * lo;
    double a = lo;
    while (a < hi) {
        const double b = std::min(hi, a * std::pow(10.0, 0.125));
        std::vector<double> pts{a};
        for (double x : breaks) {
            if (x > a && x < b) pts.push_back(x);
        }
        pts.push_back(b);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) r.integral += gk(S, pts[i], pts[i + 1], tol);
        a = b;
    }
    const double s_hi = S(hi);
    r.tail_exponent = -std::log(s_hi / S(0.5 * hi)) / std::log(2.0);
    if (!(r.tail_exponent > 1.0)) throw DomainError("equipartition_integral: spectrum tail does not decay faster than 1/omega");
    r.tail = s_hi * hi / (r.tail_exponent - 1.0);
    r.integral += r.tail;
    return r;
}

} // namespace brownspec
