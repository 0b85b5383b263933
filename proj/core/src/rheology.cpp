#include "brownspec/rheology.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "brownspec/errors.hpp"
#include "brownspec/specfun.hpp"

namespace brownspec {

namespace {

void check_constant(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << name << " must be finite and >= 0 (got " << v << ")";
        throw DomainError(os.str());
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Modulus plus a magnitude yardstick for "G == 0": leaf |G|, parallel sum of
// child yardsticks, series harmonic combination. Cancellation shows up as
// |G| much smaller than the yardstick.
std::complex<double> modulus_with_scale(const RheoNetwork& net, double omega, double& scale) {
    switch (net.node()) {
    case RheoNetwork::Node::Leaf: {
        const auto g = element_modulus(net.element(), omega);
        scale = std::abs(g);
        return g;
    }
    case RheoNetwork::Node::Parallel: {
        std::complex<double> sum = 0.0;
        scale = 0.0;
        for (const auto& c : net.children()) {
            double sc = 0.0;
            sum += modulus_with_scale(c, omega, sc);
            scale += sc;
        }
        return sum;
    }
    case RheoNetwork::Node::Series: {
        std::complex<double> inv = 0.0;
        double inv_scale = 0.0;
        bool zero_child = false;
        for (const auto& c : net.children()) {
            double sc = 0.0;
            const auto g = modulus_with_scale(c, omega, sc);
            if (g == 0.0) {
                zero_child = true;
            } else {
                inv += 1.0 / g;
                inv_scale += 1.0 / sc;
            }
        }
        scale = 0.0;
        if (zero_child) return 0.0;
        scale = 1.0 / inv_scale;
        return 1.0 / inv;
    }
    }
    return 0.0;
}

} // namespace

std::complex<double> element_modulus(const Element& e, double omega) {
    return std::visit(overloaded{
                          [](const Spring& s) { return std::complex<double>(s.G, 0.0); },
                          [&](const Dashpot& d) { return std::complex<double>(0.0, d.eta * omega); },
                          [&](const Inerter& i) { return std::complex<double>(-i.m_R * omega * omega, 0.0); },
                          [&](const Springpot& s) { return s.mu_alpha * frac_power_iomega(omega, s.alpha); },
                      },
                      e);
}

RheoNetwork RheoNetwork::make_leaf(Element e, bool allow_inerpot) {
    std::visit(overloaded{
                   [](const Spring& s) { check_constant(s.G, "spring modulus G"); },
                   [](const Dashpot& d) { check_constant(d.eta, "dashpot viscosity eta"); },
                   [](const Inerter& i) { check_constant(i.m_R, "inertance m_R"); },
                   [&](const Springpot& s) {
                       check_constant(s.mu_alpha, "springpot constant mu_alpha");
                       const bool inerpot = allow_inerpot && s.alpha == 1.5;
                       if (!inerpot && !(s.alpha >= 0.0 && s.alpha <= 1.0)) {
                           std::ostringstream os;
                           os << "springpot order alpha must lie in [0, 1] (got " << s.alpha << ")";
                           throw DomainError(os.str());
                       }
                   },
               },
               e);
    RheoNetwork n;
    n.node_ = Node::Leaf;
    n.element_ = e;
    return n;
}

RheoNetwork RheoNetwork::leaf(Element e) { return make_leaf(e, false); }

RheoNetwork RheoNetwork::parallel(std::vector<RheoNetwork> children) {
    if (children.empty()) throw DomainError("parallel node needs at least one child");
    RheoNetwork n;
    n.node_ = Node::Parallel;
    n.children_ = std::move(children);
    return n;
}

RheoNetwork RheoNetwork::series(std::vector<RheoNetwork> children) {
    if (children.empty()) throw DomainError("series node needs at least one child");
    RheoNetwork n;
    n.node_ = Node::Series;
    n.children_ = std::move(children);
    return n;
}

RheoNetwork& RheoNetwork::tag(NetworkKind k, NetworkParams p) {
    kind_ = k;
    params_ = p;
    return *this;
}

RheoNetwork RheoNetwork::interviscous(double eta, double m_R) {
    auto n = parallel({leaf(Dashpot{eta}), leaf(Inerter{m_R})});
    n.tag(NetworkKind::Interviscous, {.eta = eta, .m_R = m_R});
    return n;
}

RheoNetwork RheoNetwork::inertoviscoelastic(double G, double eta, double m_R) {
    auto n = parallel({leaf(Spring{G}), leaf(Dashpot{eta}), leaf(Inerter{m_R})});
    n.tag(NetworkKind::Inertoviscoelastic, {.G = G, .eta = eta, .m_R = m_R});
    return n;
}

RheoNetwork RheoNetwork::maxwell_inerter(double G, double eta, double m_R) {
    auto n = parallel({series({leaf(Spring{G}), leaf(Dashpot{eta})}), leaf(Inerter{m_R})});
    n.tag(NetworkKind::MaxwellInerter, {.G = G, .eta = eta, .m_R = m_R});
    return n;
}

RheoNetwork RheoNetwork::jeffreys_inerter(double G, double eta, double eta_inf, double m_R) {
    auto n = parallel({series({leaf(Spring{G}), leaf(Dashpot{eta})}), leaf(Dashpot{eta_inf}), leaf(Inerter{m_R})});
    n.tag(NetworkKind::JeffreysInerter, {.G = G, .eta = eta, .eta_inf = eta_inf, .m_R = m_R});
    return n;
}

RheoNetwork RheoNetwork::springpot_inerter(double mu_alpha, double alpha, double m_R) {
    auto n = parallel({leaf(Springpot{mu_alpha, alpha}), leaf(Inerter{m_R})});
    n.tag(NetworkKind::SpringpotInerter, {.mu_alpha = mu_alpha, .alpha = alpha, .m_R = m_R});
    return n;
}

RheoNetwork RheoNetwork::hydrodynamic(double eta, double mu_3_2, double m_R) {
    auto n = parallel({leaf(Dashpot{eta}), make_leaf(Springpot{mu_3_2, 1.5}, true), leaf(Inerter{m_R})});
    n.tag(NetworkKind::Hydrodynamic, {.eta = eta, .mu_alpha = mu_3_2, .alpha = 1.5, .m_R = m_R});
    return n;
}

const Element& RheoNetwork::element() const {
    if (!element_) throw DomainError("element() called on a composite node");
    return *element_;
}

std::complex<double> dynamic_modulus(const RheoNetwork& net, double omega) {
    if (!std::isfinite(omega)) throw DomainError("dynamic_modulus: omega must be finite");
    double scale = 0.0;
    if (omega < 0.0) return std::conj(modulus_with_scale(net, -omega, scale));
    return modulus_with_scale(net, omega, scale);
}

Compliance compliance(const RheoNetwork& net, double omega) {
    const auto g = dynamic_modulus(net, omega);
    if (g == 0.0) return {std::complex<double>(INFINITY, 0.0), true};
    return {1.0 / g, false};
}

LowFrequencyTerm low_frequency_term(const RheoNetwork& net) {
    switch (net.node()) {
    case RheoNetwork::Node::Leaf:
        return std::visit(overloaded{
                              [](const Spring& s) { return LowFrequencyTerm{s.G, 0.0, s.G == 0.0}; },
                              [](const Dashpot& d) { return LowFrequencyTerm{d.eta, 1.0, d.eta == 0.0}; },
                              [](const Inerter& i) { return LowFrequencyTerm{i.m_R, 2.0, i.m_R == 0.0}; },
                              [](const Springpot& s) {
                                  return LowFrequencyTerm{s.mu_alpha, s.alpha, s.mu_alpha == 0.0};
                              },
                          },
                          net.element());
    case RheoNetwork::Node::Parallel: {
        LowFrequencyTerm best;
        for (const auto& c : net.children()) {
            const auto t = low_frequency_term(c);
            if (t.zero) continue;
            if (best.zero || t.exponent < best.exponent) {
                best = t;
            } else if (t.exponent == best.exponent) {
                best.coeff += t.coeff;
            }
        }
        return best;
    }
    case RheoNetwork::Node::Series: {
        double pmax = -1.0;
        double inv = 0.0;
        for (const auto& c : net.children()) {
            const auto t = low_frequency_term(c);
            if (t.zero) return LowFrequencyTerm{};
            if (t.exponent > pmax) {
                pmax = t.exponent;
                inv = 1.0 / t.coeff;
            } else if (t.exponent == pmax) {
                inv += 1.0 / t.coeff;
            }
        }
        return LowFrequencyTerm{1.0 / inv, pmax, false};
    }
    }
    return {};
}

std::complex<double> fluidity(const RheoNetwork& net, double omega) {
    if (!std::isfinite(omega)) throw DomainError("fluidity: omega must be finite");
    if (omega == 0.0) {
        const auto lf = low_frequency_term(net);
        if (lf.zero || lf.exponent > 1.0) {
            throw PoleError("fluidity has a pole at omega = 0 (free mass or zero network)", 0.0);
        }
        if (lf.exponent < 1.0) return 0.0;
        return 1.0 / lf.coeff;
    }
    double scale = 0.0;
    const double w = std::abs(omega);
    std::complex<double> g = modulus_with_scale(net, w, scale);
    if (omega < 0.0) g = std::conj(g);
    if (std::abs(g) <= 1e-13 * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "fluidity pole: G(omega) = 0 at resonance omega = " << omega << " rad/s";
        throw PoleError(os.str(), omega);
    }
    return std::complex<double>(0.0, omega) / g;
}

RelaxationValue relaxation_modulus(const Element& e, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("relaxation_modulus needs finite t > 0");
    return std::visit(overloaded{
                          [](const Spring& s) { return RelaxationValue{0.0, s.G}; },
                          [](const Dashpot& d) { return RelaxationValue{d.eta, 0.0}; },
                          [](const Inerter&) -> RelaxationValue {
                              throw UnsupportedTopology("relaxation_modulus: inerter response is a delta derivative");
                          },
                          [&](const Springpot& s) -> RelaxationValue {
                              if (s.alpha == 0.0) return {0.0, s.mu_alpha};
                              if (s.alpha == 1.0) return {s.mu_alpha, 0.0};
                              if (s.alpha > 1.0) {
                                  throw UnsupportedTopology("relaxation_modulus: springpot order above 1");
                              }
                              return {0.0, s.mu_alpha * std::pow(t, -s.alpha) / gamma_fn(1.0 - s.alpha)};
                          },
                      },
                      e);
}

RelaxationValue relaxation_modulus(const RheoNetwork& net, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("relaxation_modulus needs finite t > 0");
    switch (net.node()) {
    case RheoNetwork::Node::Leaf:
        return relaxation_modulus(net.element(), t);
    case RheoNetwork::Node::Parallel: {
        RelaxationValue sum;
        for (const auto& c : net.children()) {
            if (c.node() == RheoNetwork::Node::Leaf && std::holds_alternative<Inerter>(c.element()) &&
                std::get<Inerter>(c.element()).m_R == 0.0) {
                continue;
            }
            const auto r = relaxation_modulus(c, t);
            sum.impulse_weight += r.impulse_weight;
            sum.regular += r.regular;
        }
        return sum;
    }
    case RheoNetwork::Node::Series: {
        const auto& ch = net.children();
        if (ch.size() == 1) return relaxation_modulus(ch[0], t);
        if (ch.size() == 2 && ch[0].node() == RheoNetwork::Node::Leaf && ch[1].node() == RheoNetwork::Node::Leaf) {
            const Spring* s = nullptr;
            const Dashpot* d = nullptr;
            for (const auto& c : ch) {
                if (auto p = std::get_if<Spring>(&c.element())) s = p;
                if (auto p = std::get_if<Dashpot>(&c.element())) d = p;
            }
            if (s && d) {
                if (s->G == 0.0 || d->eta == 0.0) return {0.0, 0.0};
                return {0.0, s->G * std::exp(-s->G / d->eta * t)};
            }
        }
        throw UnsupportedTopology("relaxation_modulus: only spring-dashpot series pairs have a closed form");
    }
    }
    return {};
}

namespace {

// x - 1 + exp(-x), accurate for small x.
double ornstein_shape(double x) {
    if (x < 0.5) {
        double term = x * x / 2.0, sum = 0.0;
        for (int k = 2; k < 40 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
            sum += term;
            term *= -x / static_cast<double>(k + 1);
        }
        return sum;
    }
    return x + std::expm1(-x);
}

} // namespace

double creep_compliance_closed(const RheoNetwork& net, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("creep_compliance_closed needs finite t >= 0");
    if (net.kind() == NetworkKind::Interviscous) {
        const auto& p = net.params();
        if (p.eta == 0.0 && p.m_R == 0.0) throw DomainError("Interviscous network with zero eta and m_R");
        if (p.eta == 0.0) return t * t / (2.0 * p.m_R);
        if (p.m_R == 0.0) return t / p.eta;
        const double tau = p.m_R / p.eta;
        return tau / p.eta * ornstein_shape(t / tau);
    }
    if (net.kind() == NetworkKind::SpringpotInerter && net.params().m_R == 0.0) {
        return creep_compliance_closed(net.children().front(), t);
    }
    if (net.node() == RheoNetwork::Node::Leaf) {
        const auto& e = net.element();
        if (auto s = std::get_if<Springpot>(&e)) {
            if (s->alpha > 1.0) throw UnsupportedTopology("creep_compliance_closed: springpot order above 1");
            if (s->mu_alpha == 0.0) throw DomainError("springpot with mu_alpha = 0 has infinite compliance");
            if (t == 0.0) return s->alpha == 0.0 ? 1.0 / s->mu_alpha : 0.0;
            return std::pow(t, s->alpha) / (s->mu_alpha * gamma_fn(1.0 + s->alpha));
        }
        if (auto d = std::get_if<Dashpot>(&e)) {
            if (d->eta == 0.0) throw DomainError("dashpot with eta = 0 has infinite compliance");
            return t / d->eta;
        }
        if (auto s = std::get_if<Spring>(&e)) {
            if (s->G == 0.0) throw DomainError("spring with G = 0 has infinite compliance");
            return 1.0 / s->G;
        }
    }
    throw UnsupportedTopology("creep_compliance_closed: no closed form for this network; use creep_compliance_numeric");
}

PhysicalContext PhysicalContext::sphere(double kT, int N, double R, double rho_p) {
    PhysicalContext c;
    c.kT = kT;
    c.N = N;
    c.R = R;
    c.rho_p = rho_p;
    c.m = 4.0 / 3.0 * std::numbers::pi * R * R * R * rho_p;
    return c;
}

void PhysicalContext::validate() const {
    if (N < 1 || N > 3) throw DomainError("N must be 1, 2 or 3");
    if (!(kT > 0.0) || !std::isfinite(kT)) throw DomainError("kT must be finite and > 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("R must be finite and > 0");
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("m must be finite and > 0");
    if (rho_p && !(*rho_p > 0.0 && std::isfinite(*rho_p))) throw DomainError("rho_p must be finite and > 0");
    if (rho_f && !(*rho_f > 0.0 && std::isfinite(*rho_f))) throw DomainError("rho_f must be finite and > 0");
}

double PhysicalContext::six_pi_R() const { return 6.0 * std::numbers::pi * R; }
double PhysicalContext::m_R() const { return m / six_pi_R(); }
double PhysicalContext::thermal_prefactor() const {
    return static_cast<double>(N) * kT / (3.0 * std::numbers::pi * R);
}

} // namespace brownspec
