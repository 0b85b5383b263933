#include "brownspec/simkit.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include "brownspec/errors.hpp"
#include "brownspec/fft.hpp"
#include "brownspec/specfun.hpp"

namespace brownspec {

std::string_view scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Auto: return "auto";
    case Scheme::ExactOU: return "exact_ou";
    case Scheme::MarkovEmbedding: return "markov_embedding";
    case Scheme::SpectralNoiseGL: return "spectral_gl";
    case Scheme::SemiImplicitEuler: return "semi_implicit_euler";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::Auto, Scheme::ExactOU, Scheme::MarkovEmbedding, Scheme::SpectralNoiseGL,
                     Scheme::SemiImplicitEuler}) {
        if (scheme_name(s) == name) return s;
    }
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Warn: return "warn";
    case Verdict::Fail: return "fail";
    }
    return "unknown";
}

Scheme resolve_scheme(const SimConfig& cfg) {
    const MediumKind k = cfg.medium.kind();
    Scheme def = Scheme::ExactOU;
    std::vector<Scheme> allowed;
    switch (k) {
    case MediumKind::Viscous: allowed = {Scheme::ExactOU}; break;
    case MediumKind::HarmonicTrap: allowed = {Scheme::ExactOU, Scheme::SemiImplicitEuler}; break;
    case MediumKind::Maxwell:
    case MediumKind::Jeffreys:
        def = Scheme::MarkovEmbedding;
        allowed = {Scheme::MarkovEmbedding};
        break;
    case MediumKind::Subdiffusive:
    case MediumKind::Hydrodynamic:
        def = Scheme::SpectralNoiseGL;
        allowed = {Scheme::SpectralNoiseGL};
        break;
    }
    if (cfg.scheme == Scheme::Auto) return def;
    if (std::find(allowed.begin(), allowed.end(), cfg.scheme) == allowed.end()) {
        throw ConfigError("scheme '" + std::string(scheme_name(cfg.scheme)) + "' is not compatible with medium '" +
                          std::string(medium_name(k)) + "'");
    }
    return cfg.scheme;
}

StabilityReport stability_report(const SimConfig& cfg) {
    StabilityReport r;
    const auto& med = cfg.medium;
    const double dt = cfg.dt;
    const auto g = dimensionless_groups(med);
    double extra = 0.0;
    if (g.tau) r.dt_over_tau = dt / *g.tau;
    if (g.omegaR_tau && g.tau) r.omegaR_dt = *g.omegaR_tau / *g.tau * dt;
    if (g.lambda) r.dt_over_lambda = dt / *g.lambda;
    if (auto p = std::get_if<Maxwell>(&med.params)) r.dt_relaxation = dt * p->G / p->eta;
    if (auto p = std::get_if<Jeffreys>(&med.params)) {
        r.dt_relaxation = dt * p->G / p->eta;
        extra = dt * p->eta_inf / med.m_R();
    }
    for (const auto& v : {r.dt_over_tau, r.omegaR_dt, r.dt_over_lambda, r.dt_relaxation}) {
        if (v) r.max_product = std::max(r.max_product, *v);
    }
    r.max_product = std::max(r.max_product, extra);
    if (r.max_product < kStabilityPass) {
        r.verdict = Verdict::Pass;
    } else if (r.max_product < kStabilityWarn) {
        r.verdict = Verdict::Warn;
    } else {
        r.verdict = Verdict::Fail;
    }
    return r;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergenceFactor = 1e9;

[[noreturn]] void diverged(std::size_t step, double value) {
    std::ostringstream os;
    os << "simulation diverged at step " << step << " (state component " << value << ")";
    throw DivergenceError(os.str(), step);
}

// Exact discretization of dX = A X dt + noise with diffusion matrix Q (Van Loan).
struct LinearPropagator {
    Eigen::MatrixXd Phi;
    Eigen::MatrixXd Lnoise; // Lnoise Lnoise^T = discrete noise covariance
};

// State components are rescaled by their thermal sizes first; SI entries of A
// span many decades and the unscaled exponential loses the small ones.
LinearPropagator van_loan(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q, double dt,
                          const Eigen::VectorXd& scale) {
    const Eigen::Index n = A.rows();
    const Eigen::VectorXd inv = scale.cwiseInverse();
    const Eigen::MatrixXd As = inv.asDiagonal() * A * scale.asDiagonal();
    const Eigen::MatrixXd Qs = inv.asDiagonal() * Q * inv.asDiagonal();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    C.topLeftCorner(n, n) = -As * dt;
    C.topRightCorner(n, n) = Qs * dt;
    C.bottomRightCorner(n, n) = As.transpose() * dt;
    const Eigen::MatrixXd E = C.exp();
    const Eigen::MatrixXd Phi = E.bottomRightCorner(n, n).transpose();
    Eigen::MatrixXd S = Phi * E.topRightCorner(n, n);
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    LinearPropagator p;
    p.Phi = scale.asDiagonal() * Phi * inv.asDiagonal();
    p.Lnoise = scale.asDiagonal() * es.eigenvectors() * ev.asDiagonal();
    return p;
}

struct Physics {
    double kT;
    double mass; // effective mass per axis
    double six_pi_R;
    int dims;
};

class Stepper {
public:
    virtual ~Stepper() = default;
    // Simulates one trajectory: burn steps discarded, then n_rec samples recorded.
    virtual void run(std::mt19937_64& rng, std::size_t burn, std::size_t n_rec, Trajectory& out) const = 0;
};

class ViscousOU final : public Stepper {
public:
    ViscousOU(const Physics& ph, double eta, double dt) : ph_(ph), dt_(dt) {
        const double tau = ph.mass / (ph.six_pi_R * eta);
        decay_ = std::exp(-dt / tau);
        kick_ = std::sqrt(ph.kT / ph.mass * (-std::expm1(-2.0 * dt / tau)));
        vmax_ = kDivergenceFactor * std::sqrt(ph.kT / ph.mass);
    }

    void run(std::mt19937_64& rng, std::size_t burn, std::size_t n_rec, Trajectory& out) const override {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d = ph_.dims;
        out.velocity.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        out.position.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        std::vector<double> v(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d), 0.0);
        const double sv = std::sqrt(ph_.kT / ph_.mass);
        for (auto& vi : v) vi = sv * gauss(rng);
        const std::size_t total = burn + n_rec;
        for (std::size_t s = 0; s < total; ++s) {
            if (s >= burn) {
                const std::size_t k = s - burn;
                for (int a = 0; a < d; ++a) {
                    out.velocity[static_cast<std::size_t>(a) * n_rec + k] = v[static_cast<std::size_t>(a)];
                    out.position[static_cast<std::size_t>(a) * n_rec + k] = x[static_cast<std::size_t>(a)];
                }
            }
            if (s + 1 == total) break;
            for (int a = 0; a < d; ++a) {
                auto& vi = v[static_cast<std::size_t>(a)];
                const double vn = decay_ * vi + kick_ * gauss(rng);
                x[static_cast<std::size_t>(a)] += 0.5 * dt_ * (vi + vn);
                vi = vn;
                if (!(std::abs(vn) < vmax_)) diverged(s + 1, vn);
            }
        }
    }

private:
    Physics ph_;
    double dt_;
    double decay_ = 0.0, kick_ = 0.0, vmax_ = 0.0;
};

// Linear Gaussian state per axis: (x, v) for the trap, (x, v, z) for Maxwell/Jeffreys.
class LinearExact final : public Stepper {
public:
    LinearExact(const Physics& ph, LinearPropagator prop, Eigen::VectorXd stationary_sd, Eigen::VectorXd limits)
        : ph_(ph), prop_(std::move(prop)), sd0_(std::move(stationary_sd)), limits_(std::move(limits)) {}

    void run(std::mt19937_64& rng, std::size_t burn, std::size_t n_rec, Trajectory& out) const override {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d = ph_.dims;
        const Eigen::Index n = prop_.Phi.rows();
        out.velocity.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        out.position.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        std::vector<Eigen::VectorXd> X(static_cast<std::size_t>(d), Eigen::VectorXd::Zero(n));
        for (auto& xa : X) {
            for (Eigen::Index i = 1; i < n; ++i) xa(i) = sd0_(i) * gauss(rng);
        }
        Eigen::VectorXd xi(n);
        const std::size_t total = burn + n_rec;
        for (std::size_t s = 0; s < total; ++s) {
            if (s >= burn) {
                const std::size_t k = s - burn;
                for (int a = 0; a < d; ++a) {
                    out.position[static_cast<std::size_t>(a) * n_rec + k] = X[static_cast<std::size_t>(a)](0);
                    out.velocity[static_cast<std::size_t>(a) * n_rec + k] = X[static_cast<std::size_t>(a)](1);
                }
            }
            if (s + 1 == total) break;
            for (int a = 0; a < d; ++a) {
                auto& xa = X[static_cast<std::size_t>(a)];
                for (Eigen::Index i = 0; i < n; ++i) xi(i) = gauss(rng);
                xa = prop_.Phi * xa + prop_.Lnoise * xi;
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (!(std::abs(xa(i)) < limits_(i))) diverged(s + 1, xa(i));
                }
            }
        }
    }

private:
    Physics ph_;
    LinearPropagator prop_;
    Eigen::VectorXd sd0_;
    Eigen::VectorXd limits_;
};

class TrapEuler final : public Stepper {
public:
    TrapEuler(const Physics& ph, double k, double zeta, double dt) : ph_(ph), dt_(dt) {
        a_v_ = zeta / ph.mass;
        a_x_ = k / ph.mass;
        kick_ = std::sqrt(2.0 * ph.kT * zeta * dt) / ph.mass;
        vmax_ = kDivergenceFactor * std::sqrt(ph.kT / ph.mass);
        xmax_ = k > 0.0 ? kDivergenceFactor * std::sqrt(ph.kT / k) : INFINITY;
    }

    void run(std::mt19937_64& rng, std::size_t burn, std::size_t n_rec, Trajectory& out) const override {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d = ph_.dims;
        out.velocity.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        out.position.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        std::vector<double> v(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d), 0.0);
        const double sv = std::sqrt(ph_.kT / ph_.mass);
        for (auto& vi : v) vi = sv * gauss(rng);
        const std::size_t total = burn + n_rec;
        for (std::size_t s = 0; s < total; ++s) {
            if (s >= burn) {
                const std::size_t k = s - burn;
                for (int a = 0; a < d; ++a) {
                    out.velocity[static_cast<std::size_t>(a) * n_rec + k] = v[static_cast<std::size_t>(a)];
                    out.position[static_cast<std::size_t>(a) * n_rec + k] = x[static_cast<std::size_t>(a)];
                }
            }
            if (s + 1 == total) break;
            for (int a = 0; a < d; ++a) {
                auto& vi = v[static_cast<std::size_t>(a)];
                auto& xa = x[static_cast<std::size_t>(a)];
                vi += dt_ * (-a_v_ * vi - a_x_ * xa) + kick_ * gauss(rng);
                xa += dt_ * vi;
                if (!(std::abs(vi) < vmax_)) diverged(s + 1, vi);
                if (!(std::abs(xa) < xmax_)) diverged(s + 1, xa);
            }
        }
    }

private:
    Physics ph_;
    double dt_;
    double a_v_ = 0.0, a_x_ = 0.0, kick_ = 0.0, vmax_ = 0.0, xmax_ = 0.0;
};

// Implicit GL memory scheme
//   (M/dt)(v_n - v_{n-1}) + sum_{k=0}^{n} z_k v_{n-k} = f_n,   x_n = x_{n-1} + dt v_n,
// with stationary Gaussian force f synthesized by circulant embedding.
class MemoryGL final : public Stepper {
public:
    MemoryGL(const Physics& ph, double dt, std::vector<double> z, const std::vector<double>& noise_cov,
             std::size_t total)
        : ph_(ph), dt_(dt), z_(std::move(z)), sampler_(noise_cov, total) {
        a0_ = ph.mass / dt + z_[0];
        vmax_ = kDivergenceFactor * std::sqrt(ph.kT / ph.mass);
        // Reversed kernel so the history sum runs forward in memory.
        zrev_.assign(z_.rbegin(), z_.rend());
    }

    void run(std::mt19937_64& rng, std::size_t burn, std::size_t n_rec, Trajectory& out) const override {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d = ph_.dims;
        const std::size_t total = burn + n_rec; // states s = 0..total-1, s = 0 is the initial state
        const std::size_t K = z_.size() - 1;    // longest lag kept
        out.velocity.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        out.position.assign(static_cast<std::size_t>(d) * n_rec, 0.0);
        std::vector<double> v(total), f;
        const double sv = std::sqrt(ph_.kT / ph_.mass);
        const double m_dt = ph_.mass / dt_;
        const std::size_t Z = zrev_.size(); // zrev_[Z-1-k] = z_k
        for (int a = 0; a < d; ++a) {
            v.assign(total, 0.0);
            v[0] = sv * gauss(rng);
            sampler_.sample(rng, f);
            double x = 0.0;
            for (std::size_t s = 1; s < total; ++s) {
                const std::size_t lo = s > K ? s - K : 0;
                // sum_{k=1}^{s-lo} z_k v_{s-k} = sum_{j=lo}^{s-1} zrev_[Z-1-(s-j)] v_j
                const double* zp = zrev_.data() + (Z - 1 - s);
                double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
                std::size_t j = lo;
                for (; j + 4 <= s; j += 4) {
                    acc0 += zp[j] * v[j];
                    acc1 += zp[j + 1] * v[j + 1];
                    acc2 += zp[j + 2] * v[j + 2];
                    acc3 += zp[j + 3] * v[j + 3];
                }
                for (; j < s; ++j) acc0 += zp[j] * v[j];
                const double hist = (acc0 + acc1) + (acc2 + acc3);
                const double vn = (f[s - 1] + m_dt * v[s - 1] - hist) / a0_;
                if (!(std::abs(vn) < vmax_)) diverged(s, vn);
                v[s] = vn;
                x += dt_ * vn;
                if (s >= burn) {
                    const std::size_t k = s - burn;
                    out.velocity[static_cast<std::size_t>(a) * n_rec + k] = vn;
                    out.position[static_cast<std::size_t>(a) * n_rec + k] = x;
                }
            }
            if (burn == 0) out.velocity[static_cast<std::size_t>(a) * n_rec] = v[0];
        }
    }

private:
    Physics ph_;
    double dt_;
    std::vector<double> z_;
    std::vector<double> zrev_;
    CirculantSampler sampler_;
    double a0_ = 0.0, vmax_ = 0.0;
};

std::size_t default_burn_in(const SimConfig& cfg) {
    const auto& med = cfg.medium;
    const auto g = dimensionless_groups(med);
    double slow = 0.0;
    if (g.tau) slow = std::max(slow, 2.0 * *g.tau);
    if (g.lambda) slow = std::max(slow, *g.lambda);
    if (auto p = std::get_if<HarmonicTrap>(&med.params); p && p->G > 0.0) {
        slow = std::max(slow, p->eta / p->G); // overdamped position relaxation zeta/k
    }
    if (auto p = std::get_if<Maxwell>(&med.params)) slow = std::max(slow, 2.0 * p->eta / p->G);
    if (auto p = std::get_if<Jeffreys>(&med.params)) slow = std::max(slow, 2.0 * p->eta / p->G);
    return static_cast<std::size_t>(std::ceil(10.0 * slow / cfg.dt));
}

std::unique_ptr<Stepper> make_stepper(const SimConfig& cfg, Scheme scheme, std::size_t total) {
    const auto& med = cfg.medium;
    const auto& ctx = med.ctx;
    Physics ph{ctx.kT, med.effective_mass(), ctx.six_pi_R(), ctx.N};
    const double dt = cfg.dt;
    const double m = ph.mass;
    const double vlim = kDivergenceFactor * std::sqrt(ph.kT / m);

    if (auto p = std::get_if<Viscous>(&med.params)) return std::make_unique<ViscousOU>(ph, p->eta, dt);

    if (auto p = std::get_if<HarmonicTrap>(&med.params)) {
        const double k = ph.six_pi_R * p->G;
        const double zeta = ph.six_pi_R * p->eta;
        if (scheme == Scheme::SemiImplicitEuler) return std::make_unique<TrapEuler>(ph, k, zeta, dt);
        Eigen::MatrixXd A(2, 2), Q = Eigen::MatrixXd::Zero(2, 2);
        A << 0.0, 1.0, -k / m, -zeta / m;
        Q(1, 1) = 2.0 * ph.kT * zeta / (m * m);
        Eigen::VectorXd sd(2), lim(2);
        sd << 0.0, std::sqrt(ph.kT / m);
        lim << (k > 0.0 ? kDivergenceFactor * std::sqrt(ph.kT / k) : INFINITY), vlim;
        Eigen::VectorXd scale(2);
        scale << (k > 0.0 ? std::sqrt(ph.kT / k) : sd(1) * dt), sd(1);
        return std::make_unique<LinearExact>(ph, van_loan(A, Q, dt, scale), sd, lim);
    }

    if (med.kind() == MediumKind::Maxwell || med.kind() == MediumKind::Jeffreys) {
        double G, eta, eta_inf = 0.0;
        if (auto p = std::get_if<Maxwell>(&med.params)) {
            G = p->G;
            eta = p->eta;
        } else {
            const auto& q = std::get<Jeffreys>(med.params);
            G = q.G;
            eta = q.eta;
            eta_inf = q.eta_inf;
        }
        const double kz = ph.six_pi_R * G;
        const double theta = eta / G;
        const double ginf = ph.six_pi_R * eta_inf;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3), Q = Eigen::MatrixXd::Zero(3, 3);
        A(0, 1) = 1.0;
        A(1, 1) = -ginf / m;
        A(1, 2) = 1.0 / m;
        A(2, 1) = -kz;
        A(2, 2) = -1.0 / theta;
        Q(1, 1) = 2.0 * ph.kT * ginf / (m * m);
        Q(2, 2) = 2.0 * ph.kT * kz / theta;
        Eigen::VectorXd sd(3), lim(3);
        sd << 0.0, std::sqrt(ph.kT / m), std::sqrt(ph.kT * kz);
        lim << INFINITY, vlim, kDivergenceFactor * std::sqrt(ph.kT * kz);
        Eigen::VectorXd scale = sd;
        scale(0) = sd(1) * dt;
        return std::make_unique<LinearExact>(ph, van_loan(A, Q, dt, scale), sd, lim);
    }

    // GL memory media. The kernel and the force covariance are truncated consistently.
    const std::size_t K = cfg.memory_lag > 0 ? std::min(cfg.memory_lag, total) : total;
    std::vector<double> z(K + 1, 0.0);
    std::vector<double> cov(total, 0.0);
    if (auto p = std::get_if<Subdiffusive>(&med.params)) {
        const double c = ph.six_pi_R * p->mu_alpha * std::pow(dt, 1.0 - p->alpha);
        const auto w = gl_weights(p->alpha - 1.0, K + 1);
        for (std::size_t k = 0; k <= K; ++k) z[k] = c * w[k];
        // Sampled fluctuation-dissipation relation: spectrum (2 kT/dt) Re Z_d.
        cov[0] = 2.0 * ph.kT * z[0] / dt;
        for (std::size_t k = 1; k < total && k <= K; ++k) cov[k] = ph.kT * z[k] / dt;
    } else {
        const auto& h = std::get<Hydrodynamic>(med.params);
        const double zeta = ph.six_pi_R * h.eta;
        const double basset = ph.six_pi_R * ctx.R * std::sqrt(h.rho_f * h.eta);
        const double c = basset / std::sqrt(dt);
        const auto w = gl_weights(0.5, std::max<std::size_t>(K + 1, 2));
        for (std::size_t k = 0; k <= K; ++k) z[k] = c * w[k];
        z[0] += zeta;
        // Force covariance chosen so the scheme's own velocity autocovariance is
        // (kT/M) times its relaxation function: spectrum (kT/M)(a0^2 - |A - a0|^2),
        // A(B) = (M/dt)(1 - B) + Z_d(B). Untruncated kernels are summed to 4x the run.
        const std::size_t J = cfg.memory_lag > 0 ? K : 4 * total;
        std::vector<double> a = gl_weights(0.5, J + 1);
        for (auto& ak : a) ak *= c;
        a[0] += zeta + m / dt;
        a[1] -= m / dt;
        const double a0 = a[0];
        const std::size_t max_lag = total - 1;
        const std::vector<double> r_tail =
            J >= 2 ? fft::autocorrelation_sums(a.data() + 2, J - 1, max_lag) : std::vector<double>(max_lag + 1, 0.0);
        for (std::size_t k = 0; k <= max_lag; ++k) {
            const double a1k = (k + 1 <= J) ? a[k + 1] : 0.0;
            const double rk = a[1] * a1k + r_tail[k];
            cov[k] = (k == 0 ? ph.kT / m * (a0 * a0 - rk) : -ph.kT / m * rk);
        }
    }
    return std::make_unique<MemoryGL>(ph, dt, std::move(z), cov, total);
}

void validate_config(const SimConfig& cfg) {
    try {
        cfg.medium.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid medium: ") + e.what());
    }
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be finite and > 0");
    if (cfg.n_steps < 2) throw ConfigError("n_steps must be >= 2");
    if (cfg.n_traj < 1) throw ConfigError("n_traj must be >= 1");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    const auto rep = stability_report(cfg);
    if (rep.verdict != Verdict::Pass && !cfg.allow_coarse_step) {
        std::ostringstream os;
        os << "step too coarse: max(dt x rate) = " << rep.max_product << " (" << verdict_name(rep.verdict)
           << "; must be < " << kStabilityPass << " unless allow_coarse_step is set)";
        throw ConfigError(os.str());
    }
}

} // namespace

Ensemble simulate_range(const SimConfig& cfg, std::size_t first, std::size_t count) {
    validate_config(cfg);
    const Scheme scheme = resolve_scheme(cfg);
    const std::size_t burn = cfg.burn_in.value_or(default_burn_in(cfg));
    const std::size_t total = burn + cfg.n_steps;
    const auto stepper = make_stepper(cfg, scheme, total);

    Ensemble ens;
    ens.dt = cfg.dt;
    ens.n_steps = cfg.n_steps;
    ens.dims = cfg.medium.ctx.N;
    ens.medium = cfg.medium;
    ens.scheme = scheme;
    ens.seed = cfg.seed;
    ens.first_index = first;
    ens.trajectories.resize(count);

    std::vector<std::exception_ptr> errors(count);
    const auto work = [&](std::size_t i) {
        try {
            auto rng = trajectory_rng(cfg.seed, first + i);
            stepper->run(rng, burn, cfg.n_steps, ens.trajectories[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const unsigned T = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(count, 1));
    if (T <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < T; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < count; i += T) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return ens;
}

Ensemble simulate(const SimConfig& cfg) { return simulate_range(cfg, 0, cfg.n_traj); }

} // namespace brownspec
