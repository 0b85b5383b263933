#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "brownspec/curves.hpp"
#include "brownspec/spectra.hpp"

namespace brownspec {

enum class Scheme {
    Auto,              // pick the medium's default
    ExactOU,           // viscous OU update; exact Gaussian (x, v) propagator for the trap
    MarkovEmbedding,   // Maxwell/Jeffreys with one auxiliary OU stress variable per axis
    SpectralNoiseGL,   // subdiffusive/hydrodynamic: GL memory + circulant-embedding noise
    SemiImplicitEuler, // trap cross-check scheme
};

std::string_view scheme_name(Scheme s);
// Parses "auto", "exact_ou", "markov_embedding", "spectral_gl", "semi_implicit_euler".
Scheme parse_scheme(std::string_view name);

struct SimConfig {
    MediumSpec medium;
    double dt = 0.0;
    std::size_t n_steps = 0; // recorded samples per trajectory, the first at t = 0
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::Auto;
    std::optional<std::size_t> burn_in; // steps discarded before recording; default 10 slowest times
    bool allow_coarse_step = false;     // accept a non-pass stability verdict
    std::size_t memory_lag = 0;         // GL history truncation in steps, 0 = full history
    unsigned threads = 1;
};

// Scheme actually used for this medium (resolves Auto, rejects incompatible pairs).
Scheme resolve_scheme(const SimConfig& cfg);

enum class Verdict { Pass, Warn, Fail };
std::string_view verdict_name(Verdict v);

// Dimensionless step products and the verdict: max product < 0.1 passes,
// < 1 warns, otherwise fails.
struct StabilityReport {
    std::optional<double> dt_over_tau;
    std::optional<double> omegaR_dt;
    std::optional<double> dt_over_lambda;
    std::optional<double> dt_relaxation; // dt G/eta for Maxwell/Jeffreys
    double max_product = 0.0;
    Verdict verdict = Verdict::Pass;
};
StabilityReport stability_report(const SimConfig& cfg);

inline constexpr double kStabilityPass = 0.1;
inline constexpr double kStabilityWarn = 1.0;

struct Trajectory {
    // Axis-major: component a of sample k at index a * n_steps + k.
    std::vector<double> velocity;
    std::vector<double> position;
};

struct Ensemble {
    double dt = 0.0;
    std::size_t n_steps = 0;
    int dims = 1;
    MediumSpec medium;
    Scheme scheme = Scheme::Auto;
    std::uint64_t seed = 0;
    std::size_t first_index = 0; // trajectory index of trajectories[0]
    std::vector<Trajectory> trajectories;

    const double* velocity(std::size_t traj, int axis) const {
        return trajectories[traj].velocity.data() + static_cast<std::size_t>(axis) * n_steps;
    }
    const double* position(std::size_t traj, int axis) const {
        return trajectories[traj].position.data() + static_cast<std::size_t>(axis) * n_steps;
    }
};

// Validates cfg, then runs trajectories [0, n_traj). Throws ConfigError or DivergenceError.
Ensemble simulate(const SimConfig& cfg);
// Runs trajectories [first, first + count) of the same configuration; the
// result for a given index does not depend on how the range is split.
Ensemble simulate_range(const SimConfig& cfg, std::size_t first, std::size_t count);

// Per-trajectory generator: mt19937_64 seeded by SplitMix64 of (seed, index).
std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index);

// Stationary Gaussian series x_0..x_{n-1} whose autocovariance at lag k is
// cov.values[k] (lags beyond the curve are zero). cov.values are the covariance of
// the samples themselves: white noise of intensity A delta(t) sampled at step dt
// has cov.values = {A/dt, 0, 0, ...}. Uses circulant embedding; negative
// eigenvalues above -1e-10 max are clipped, larger ones throw IndefiniteCovariance.
std::vector<double> synthesize_colored_noise(const TimeCurve& cov, std::size_t n, std::uint64_t seed);

// Reusable circulant-embedding sampler for one covariance sequence.
class CirculantSampler {
public:
    CirculantSampler(const std::vector<double>& cov, std::size_t n);
    std::size_t size() const noexcept { return n_; }
    double clipped_fraction() const noexcept { return clipped_; }
    // Fills out[0..n) using rng.
    void sample(std::mt19937_64& rng, std::vector<double>& out) const;

private:
    std::size_t n_;
    std::size_t L_;
    std::vector<double> sqrt_eig_; // sqrt(lambda_j / L)
    double clipped_ = 0.0;
};

} // namespace brownspec
