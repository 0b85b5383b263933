#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "brownspec/curves.hpp"
#include "brownspec/rheology.hpp"

namespace brownspec {

struct Viscous {
    double eta;
};
struct HarmonicTrap {
    double G;
    double eta;
};
struct Maxwell {
    double G;
    double eta;
};
struct Jeffreys {
    double G;
    double eta;
    double eta_inf;
};
struct Subdiffusive {
    double mu_alpha;
    double alpha;
};
// Sphere of density rho_p in a fluid of density rho_f and viscosity eta.
struct Hydrodynamic {
    double eta;
    double rho_f;
    double rho_p;
};

using MediumParams = std::variant<Viscous, HarmonicTrap, Maxwell, Jeffreys, Subdiffusive, Hydrodynamic>;

enum class MediumKind { Viscous, HarmonicTrap, Maxwell, Jeffreys, Subdiffusive, Hydrodynamic };

std::string_view medium_name(MediumKind k);

struct MediumSpec {
    MediumParams params;
    PhysicalContext ctx;

    MediumKind kind() const;
    // Parameter domains, context validity, and for Hydrodynamic that
    // ctx.m == (4/3) pi R^3 rho_p. Throws DomainError.
    void validate() const;
    // m, or M = m + m_f/2 for Hydrodynamic.
    double effective_mass() const;
    // Distributed inertance of the analogue network, effective_mass()/(6 pi R).
    double m_R() const;
};

// Named network of the correspondence principle for this medium.
RheoNetwork analogue_network(const MediumSpec& medium);

DimensionlessGroups dimensionless_groups(const MediumSpec& medium);

// tau for Viscous/Trap/Maxwell/Jeffreys, lambda for Subdiffusive/Hydrodynamic.
double frequency_scale(const MediumSpec& medium);
// Figure normalization S_ref.
double psd_reference(const MediumSpec& medium);

// S(omega) = (N kT / 3 pi R) Re phi(omega) through the analogue network.
double psd_master(const MediumSpec& medium, double omega);
// Master formula on a grid. With Normalization::Normalized the grid is dimensionless
// (omega tau or omega lambda) and values are S/S_ref.
SpectrumCurve psd_master_curve(const MediumSpec& medium, const std::vector<double>& omega,
                               Normalization norm = Normalization::Dimensional);

// Closed forms, dimensional.
double psd_viscous(const PhysicalContext& ctx, double eta, double omega);
double psd_trap(const PhysicalContext& ctx, double G, double eta, double omega);
double psd_maxwell(const PhysicalContext& ctx, double G, double eta, double omega);
double psd_jeffreys(const PhysicalContext& ctx, double G, double eta, double eta_inf, double omega);
double psd_subdiffusive(const PhysicalContext& ctx, double mu_alpha, double alpha, double omega);
// ctx.m must be the mass of the sphere, (4/3) pi R^3 rho_p.
double psd_hydrodynamic(const PhysicalContext& ctx, double eta, double rho_f, double rho_p, double omega);
// Dispatches to the closed form of the medium.
double psd_closed_form(const MediumSpec& medium, double omega);

// Closed forms on the figure axes: x = omega tau, y = omega lambda.
namespace normalized {
double viscous(double x);
double trap(double omegaR_tau, double x);
double maxwell(double omegaR_tau, double x);
double jeffreys(double omegaR_tau, double xi, double x);
double subdiffusive(double alpha, double y);
double hydrodynamic(double gamma_ratio, double y);
} // namespace normalized

// Dimensionless inputs of the canonical media below.
struct NormalizedParams {
    double omegaR_tau = 1.0;
    double xi = 0.0;
    double alpha = 0.5;
    double gamma_ratio = 0.46;
};

// Medium in units where kT = 1 and the frequency scale (tau or lambda) is 1,
// carrying the requested dimensionless groups.
MediumSpec canonical_medium(MediumKind kind, const NormalizedParams& p, int N = 3);

// Time domain.
double vacf_viscous(const PhysicalContext& ctx, double eta, double t);
// One-sided transform int_0^inf C(t) exp(-i omega t) dt of the viscous VACF.
std::complex<double> vacf_viscous_transform(const PhysicalContext& ctx, double eta, double omega);
double vacf_hydrodynamic(const PhysicalContext& ctx, double eta, double rho_f, double rho_p, double t);
// Same expression before taking the real part; its imaginary part is round-off.
std::complex<double> vacf_hydrodynamic_complex(const PhysicalContext& ctx, double eta, double rho_f,
                                               double rho_p, double t);
double msd_viscous(const PhysicalContext& ctx, double eta, double t);
// (N kT / 3 pi R) J(t), closed-form creep where available, numeric otherwise.
TimeCurve msd_from_network(const MediumSpec& medium, const std::vector<double>& t_grid);
// Half the centered second difference; second-order one-sided stencils at the ends.
TimeCurve vacf_from_msd(const TimeCurve& msd);

// 2 int_0^inf C(t) cos(omega t) dt by panel quadrature, with an integration-by-parts
// tail. time_scale is the decay time of C used to place panels.
double psd_from_vacf_numeric(const std::function<double(double)>& vacf, double omega, double time_scale);

struct SumRule {
    double integral = 0.0; // int_0^inf S domega
    double expected = 0.0; // pi N kT / effective mass
    double tail = 0.0;     // analytic power-law tail beyond the last panel
    double tail_exponent = 0.0;
};
SumRule equipartition_integral(const MediumSpec& medium);

} // namespace brownspec
