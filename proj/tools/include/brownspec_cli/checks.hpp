#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "brownspec_cli/commands.hpp"

// Numerical checks shared by `brownspec verify` and the acceptance suite.
// Each returns one CheckResult per quantity, with the metric compared
// against the tolerance (metric <= tolerance passes unless noted).
namespace brownspec::cli::checks {

// Master formula against the six closed forms, worst relative error per medium.
std::vector<CheckResult> master_equivalence(std::size_t n_omega = 50);

// Jeffreys(xi = 0) vs Maxwell, Subdiffusive(alpha = 1) vs Viscous, Trap(G = 0)
// vs Viscous, Maxwell(omegaRtau = 50) vs Viscous on [0.1, 10].
std::vector<CheckResult> limit_ladder();

// Normalized trap peaks at 1 for omega tau = omegaRtau.
std::vector<CheckResult> trap_peak();

// GL derivative of t^p on t in [0.1, 1] at h = 1e-4.
std::vector<CheckResult> gl_accuracy();

// 2 Re of the one-sided VACF transform against the viscous PSD, analytic and
// by quadrature, on a 30-point grid.
std::vector<CheckResult> fourier_identity();

// vacf_from_msd on sampled viscous MSD (h = tau/1024) against the VACF on [tau/10, 10 tau].
std::vector<CheckResult> msd_vacf_loop();

// Hydrodynamic VACF: quadrature transform against the closed PSD, C(0) = N kT/M,
// long-time slope -3/2.
std::vector<CheckResult> hydrodynamic_consistency(std::size_t n_omega = 40);

// Sum rule int_0^inf S domega = pi N kT / M for the six canonical media.
std::vector<CheckResult> sum_rules();

struct SimScale {
    std::size_t viscous_traj = 500;
    std::size_t trap_traj = 200;
    std::size_t maxwell_traj = 500;
    std::size_t subdiff_psd_traj = 100;
    std::size_t subdiff_msd_traj = 200;
    double psd_tolerance = 0.10;
    bool subdiff_time_averaged = false; // MSD slope from the time-averaged MSD
    std::uint64_t seed = 20240611;
    unsigned threads = 1;
};

// Viscous Welch PSD and MSD, trap position variance, Maxwell Welch PSD.
std::vector<CheckResult> linear_media_simulation(const SimScale& scale);

// Subdiffusive (alpha = 1/2) MSD slope over [3, 300] lambda and PSD slope on [5, 50].
std::vector<CheckResult> subdiffusive_simulation(const SimScale& scale);

} // namespace brownspec::cli::checks
