"""High-precision reference values frozen into the unit tests.

Every value is computed from first principles with mpmath (50 digits):
moduli from the element sums, spectra as (N kT / 3 pi R) Re(i w / G(w)),
creep compliances by numerical Laplace inversion of 1/(s G(s)), and the
hydrodynamic VACF by the cosine transform (1/pi) int_0^inf S(w) cos(w t) dw.
None of it calls the C++ code. Run: python3 reference_values.py
"""
import mpmath as mp

mp.mp.dps = 50


def show(label, x):
    if isinstance(x, mp.mpc):
        print(f"{label}: {mp.nstr(x.real, 17)} {mp.nstr(x.imag, 17)}")
    else:
        print(f"{label}: {mp.nstr(x, 17)}")


def springpot(mu, a, s):
    return mu * s**a


# Gamma
for x in ["1.75", "0.3", "-0.5", "4.5"]:
    show(f"gamma({x})", mp.gamma(mp.mpf(x)))

# erfcx(w) = exp(w^2) erfc(w)
for w in ["0", "0.5", "1", "5", "50", "-1", "-3"]:
    w = mp.mpf(w)
    show(f"erfcx({w})", mp.exp(w * w) * mp.erfc(w))
for w in [mp.mpc(1, 1), mp.mpc("0.5", -2), mp.mpc(-1, "0.5"), mp.mpc(0, 3), mp.mpc(4, -6), mp.mpc("0.01", "0.02")]:
    show(f"erfcx({mp.nstr(w, 6)})", mp.exp(w * w) * mp.erfc(w))

# (i w)^alpha
for w, a in [(4, "0.5"), ("2.5", "0.3"), ("0.2", "1.5")]:
    show(f"iw^a({w},{a})", mp.mpc(0, w) ** mp.mpf(a))


# Network moduli at s = i w (element laws: spring G, dashpot eta s, inerter m s^2, springpot mu s^a)
def maxwell_inerter(G, eta, mR, s):
    return 1 / (1 / G + 1 / (eta * s)) + mR * s**2


def jeffreys_inerter(G, eta, einf, mR, s):
    return maxwell_inerter(G, eta, mR, s) + einf * s


def hydro(eta, mu, mR, s):
    return eta * s + springpot(mu, mp.mpf(1.5), s) + mR * s**2


show("G_maxwell(2,3,0.5;0.7)", maxwell_inerter(2, 3, 0.5, mp.mpc(0, "0.7")))
show("G_jeffreys(2,3,0.4,0.5;1.3)", jeffreys_inerter(2, 3, mp.mpf("0.4"), mp.mpf("0.5"), mp.mpc(0, "1.3")))
show("G_hydro(1,0.8,1.5;2)", hydro(1, mp.mpf("0.8"), mp.mpf("1.5"), mp.mpc(0, 2)))
show("phi_hydro(1,0.8,1.5;2)", mp.mpc(0, 2) / hydro(1, mp.mpf("0.8"), mp.mpf("1.5"), mp.mpc(0, 2)))


# Creep compliance by Laplace inversion of 1/(s G(s))
def creep(Gs, t):
    return mp.invertlaplace(lambda s: 1 / (s * Gs(s)), t, method="talbot")


show("J_inertoviscoelastic(1,0.5,1;1.3)", creep(lambda s: 1 + 0.5 * s + s**2, mp.mpf("1.3")))
show("J_springpot_inerter(1,0.5,1;2)", creep(lambda s: springpot(1, mp.mpf(0.5), s) + s**2, 2))
show("J_maxwell_inerter(2,3,0.5;1.7)", creep(lambda s: maxwell_inerter(2, 3, 0.5, s), mp.mpf("1.7")))
show("J_jeffreys_inerter(2,3,0.4,0.5;1.7)", creep(lambda s: jeffreys_inerter(2, 3, 0.4, 0.5, s), mp.mpf("1.7")))
show("J_hydro(1,0.8,1.5;2.5)", creep(lambda s: hydro(1, 0.8, 1.5, s), mp.mpf("2.5")))


# Normalized spectra: Re(i w / G) with eta = m_R = 1 (tau = 1) or mu = m_R = 1 (lambda = 1)
def re_phi(Gs, w):
    return (mp.mpc(0, w) / Gs(mp.mpc(0, w))).real


show("trap(0.7;1.9)", re_phi(lambda s: mp.mpf(0.49) + s + s**2, mp.mpf("1.9")))
show("maxwell(1.5;0.8)", re_phi(lambda s: maxwell_inerter(mp.mpf(2.25), 1, 1, s), mp.mpf("0.8")))
show("jeffreys(1.5,0.3;0.8)", re_phi(lambda s: jeffreys_inerter(mp.mpf(2.25), 1, mp.mpf(0.3), 1, s), mp.mpf("0.8")))
show("subdiffusive(0.3;2.2)", re_phi(lambda s: springpot(1, mp.mpf(0.3), s) + s**2, mp.mpf("2.2")))
show("hydrodynamic(0.46;0.7)", re_phi(lambda s: hydro(mp.mpf("0.46"), 1, 1, s), mp.mpf("0.7")))
show("hydrodynamic(3;10)", re_phi(lambda s: hydro(3, 1, 1, s), 10))

# Hydrodynamic VACF, kT = 1, N = 3, R = 1, rho_f = 1, eta = 1, rho_p = (9 gamma - 1)/2 with gamma = 0.46
R, rho_f, eta = mp.mpf(1), mp.mpf(1), mp.mpf(1)
rho_p = (9 * mp.mpf("0.46") - 1) / 2
M = mp.mpf(4) / 3 * mp.pi * R**3 * (rho_p + rho_f / 2)
mR = M / (6 * mp.pi * R)
mu = R * mp.sqrt(rho_f * eta)
pref = 3 / (3 * mp.pi * R)
S = lambda w: pref * re_phi(lambda s: hydro(eta, mu, mR, s), w)
show("hydro M", M)
show("hydro lambda", (mR / mu) ** 2)
for t in ["0.3", "1", "3"]:
    t = mp.mpf(t)
    c = mp.quadosc(lambda w: S(w) * mp.cos(w * t), [0, mp.inf], omega=t) / mp.pi
    show(f"vacf_hydro(t={t})", c)

# Same VACF from the root form (N kT/M)(b erfcx(b sqrt t) - a erfcx(a sqrt t))/(b - a),
# a, b roots of M x^2 - z x + zeta, z = 6 pi R^2 sqrt(rho_f eta), zeta = 6 pi R eta.
# The quadrature above carries about 5e-8 relative error; the unit tests freeze these.
z = 6 * mp.pi * R**2 * mp.sqrt(rho_f * eta)
zeta = 6 * mp.pi * R * eta
disc = mp.sqrt(mp.mpc(z * z - 4 * zeta * M))
ra, rb = (z + disc) / (2 * M), (z - disc) / (2 * M)
erfcx_mp = lambda w: mp.exp(w * w) * mp.erfc(w)
for t in ["0.3", "1", "3"]:
    s = mp.sqrt(mp.mpf(t))
    show(f"vacf_hydro_roots(t={t})", mp.re(3 / M * (rb * erfcx_mp(rb * s) - ra * erfcx_mp(ra * s)) / (rb - ra)))
