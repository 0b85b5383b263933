#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "brownspec/curves.hpp"

namespace brownspec {

// Mechanical elements. Constants in SI: G [Pa], eta [Pa s], m_R [Pa s^2],
// mu_alpha [Pa s^alpha].
struct Spring {
    double G;
};
struct Dashpot {
    double eta;
};
struct Inerter {
    double m_R;
};
// Scott-Blair element, stress = mu_alpha d^alpha strain / dt^alpha.
struct Springpot {
    double mu_alpha;
    double alpha;
};

using Element = std::variant<Spring, Dashpot, Inerter, Springpot>;

// Complex modulus of a single element (conjugate-symmetric in omega).
std::complex<double> element_modulus(const Element& e, double omega);

enum class NetworkKind {
    Custom,
    Interviscous,       // Dashpot || Inerter
    Inertoviscoelastic, // Spring || Dashpot || Inerter
    MaxwellInerter,     // (Spring - Dashpot) || Inerter
    JeffreysInerter,    // (Spring - Dashpot) || Dashpot(eta_inf) || Inerter
    SpringpotInerter,   // Springpot || Inerter
    Hydrodynamic,       // Dashpot || Springpot(mu_3/2, 3/2) || Inerter
};

// Material symbols of a named network; unused fields stay zero.
struct NetworkParams {
    double G = 0.0;
    double eta = 0.0;
    double eta_inf = 0.0;
    double mu_alpha = 0.0;
    double alpha = 0.0;
    double m_R = 0.0;
};

class RheoNetwork {
public:
    enum class Node { Leaf, Parallel, Series };

    // Constants must be finite and >= 0; general springpots need alpha in [0, 1].
    static RheoNetwork leaf(Element e);
    static RheoNetwork parallel(std::vector<RheoNetwork> children);
    static RheoNetwork series(std::vector<RheoNetwork> children);

    static RheoNetwork interviscous(double eta, double m_R);
    static RheoNetwork inertoviscoelastic(double G, double eta, double m_R);
    static RheoNetwork maxwell_inerter(double G, double eta, double m_R);
    static RheoNetwork jeffreys_inerter(double G, double eta, double eta_inf, double m_R);
    static RheoNetwork springpot_inerter(double mu_alpha, double alpha, double m_R);
    // The only place a springpot of order 3/2 is admitted.
    static RheoNetwork hydrodynamic(double eta, double mu_3_2, double m_R);

    Node node() const noexcept { return node_; }
    const Element& element() const;
    const std::vector<RheoNetwork>& children() const noexcept { return children_; }
    NetworkKind kind() const noexcept { return kind_; }
    const NetworkParams& params() const noexcept { return params_; }

private:
    RheoNetwork() = default;
    static RheoNetwork make_leaf(Element e, bool allow_inerpot);
    RheoNetwork& tag(NetworkKind k, NetworkParams p);

    Node node_ = Node::Leaf;
    std::optional<Element> element_;
    std::vector<RheoNetwork> children_;
    NetworkKind kind_ = NetworkKind::Custom;
    NetworkParams params_{};
};

// G(omega) by recursive composition: Parallel sums moduli, Series sums
// compliances. A zero-modulus child makes a series node's modulus exactly 0.
std::complex<double> dynamic_modulus(const RheoNetwork& net, double omega);

// 1/G(omega); infinite == true when G(omega) == 0 (e.g. dashpot in series at DC).
struct Compliance {
    std::complex<double> value;
    bool infinite = false;
};
Compliance compliance(const RheoNetwork& net, double omega);

// Leading low-frequency behaviour G(omega) ~ coeff (i omega)^exponent.
// zero == true when G vanishes identically.
struct LowFrequencyTerm {
    double coeff = 0.0;
    double exponent = 0.0;
    bool zero = true;
};
LowFrequencyTerm low_frequency_term(const RheoNetwork& net);

// phi(omega) = i omega / G(omega). At omega = 0 the limit is taken from the
// low-frequency term. Throws PoleError where G vanishes at omega != 0, or
// where the limit diverges.
std::complex<double> fluidity(const RheoNetwork& net, double omega);

// Step-strain response. The delta(t) part is kept separately as a weight.
struct RelaxationValue {
    double impulse_weight = 0.0;
    double regular = 0.0;
};
RelaxationValue relaxation_modulus(const Element& e, double t);
// Supports elements, Maxwell (Spring - Dashpot) series pairs and parallel
// combinations of those; anything else throws UnsupportedTopology.
RelaxationValue relaxation_modulus(const RheoNetwork& net, double t);

// Step-stress response in closed form: springpot, spring, dashpot, Interviscous.
double creep_compliance_closed(const RheoNetwork& net, double t);

struct CreepOptions {
    double rel_tol = 1e-9;
    int periods = 64;       // oscillation periods integrated explicitly
    double warn_tol = 1e-3; // relative error estimate that raises accuracy_warning
};

struct NumericCreep {
    TimeCurve curve;
    std::vector<double> error_estimate;
    bool accuracy_warning = false;
};

// J(t) = (2/pi) int_0^inf Re phi(omega) (1 - cos omega t) / omega^2 domega.
// Needs a low-frequency modulus exponent <= 1; throws DomainError otherwise.
NumericCreep creep_compliance_numeric(const RheoNetwork& net, const std::vector<double>& t_grid,
                                      const CreepOptions& opts = {});

// Thermal and geometric constants.
struct PhysicalContext {
    double kT = 0.0; // J
    int N = 3;       // spatial dimensions
    double R = 0.0;  // m
    double m = 0.0;  // kg
    std::optional<double> rho_p; // kg/m^3
    std::optional<double> rho_f; // kg/m^3

    // Sphere of density rho_p, m = (4/3) pi R^3 rho_p.
    static PhysicalContext sphere(double kT, int N, double R, double rho_p);

    void validate() const;
    double six_pi_R() const;
    double m_R() const;           // m / (6 pi R)
    double thermal_prefactor() const; // N kT / (3 pi R)
};

struct DimensionlessGroups {
    std::optional<double> tau;         // m/(6 pi R eta), M for hydrodynamic
    std::optional<double> omegaR_tau;  // (1/eta) sqrt(G m / (6 pi R))
    std::optional<double> xi;          // eta_inf / eta
    std::optional<double> lambda;      // springpot or hydrodynamic time scale
    std::optional<double> gamma_ratio; // eta m_R / mu_3/2^2
};

} // namespace brownspec
