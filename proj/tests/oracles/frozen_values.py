"""Independent reference values frozen into the C++ tests.

Uses mpmath (extended precision) for the one-dimensional quantities and
scipy nested adaptive quadrature at tightened tolerance for the
two-dimensional thermal-radiation integrals.  Nothing here shares code
with the C++ implementation.

Run:  python3 tests/oracles/frozen_values.py
"""
import mpmath as mp
import numpy as np
from scipy import integrate, special

mp.mp.dps = 40
kB = mp.mpf("1.380649e-16")
hbar = mp.mpf("1.054571817e-27")
c = mp.mpf("2.99792458e10")
alpha0 = mp.mpf("4.73e-23")
eps0 = mp.mpf("3.81")
a = mp.mpf("2.50e-4")
Rx = mp.mpf("2.69e-4")


def xi(T, l):
    return 2 * mp.pi * kB * T * l / hbar


def h_direct(eps, x_i, k):
    q = mp.sqrt(k**2 + x_i**2 / c**2)
    kw = mp.sqrt(k**2 + eps * x_i**2 / c**2)
    rtm = (eps * q - kw) / (eps * q + kw)
    rte = (q - kw) / (q + kw)
    return (2 * q**2 - x_i**2 / c**2) * rtm - x_i**2 / c**2 * rte


def scaled_g(z):
    z = mp.mpf(z)
    return mp.e**(-z) * 15 / z**5 * ((3 + z**2) * mp.sinh(z) - 3 * z * mp.cosh(z))


def kernel(q, averaged):
    if not averaged:
        return mp.mpf(1)
    return mp.besseli(1, 2 * q * a) * mp.e**(-2 * q * a) * scaled_g(2 * q * Rx)


def cp_force(x, T, averaged=False, lmax=10000):
    x = mp.mpf(x)
    xe = x - a - Rx if averaged else x
    r0 = (eps0 - 1) / (eps0 + 1)
    zero = alpha0 * r0 * mp.quad(lambda k: k**3 * mp.e**(-2 * k * xe) * kernel(k, averaged), [0, 1 / xe, mp.inf])
    series = mp.mpf(0)
    for l in range(1, lmax + 1):
        x_i = xi(T, l)
        qc = x_i / c
        if 2 * qc * xe > 600:
            break

        def integrand(q):
            k = mp.sqrt(q**2 - qc**2)
            return q * h_direct(eps0, x_i, k) * mp.e**(-2 * q * xe) * kernel(q, averaged)
        series += alpha0 * mp.quad(integrand, [qc, qc + 1 / xe, mp.inf])
    return -2 * kB * T * (zero + series), -2 * kB * T * zero


def f_value(eps, w, t, T):
    eps = mp.mpc(eps)
    p = eps - 1 - t**2
    sp = mp.sqrt(p)
    arg = abs(p) + mp.re(eps) - 1 - t**2
    planck = w**4 * t**2 / (mp.e**(hbar * w / (kB * T)) - 1)
    return planck * mp.sqrt(arg) * (1 / abs(sp + 1j * t)**2
                                    + (2 * t**2 + 1) * (t**2 + 1 + abs(p)) / abs(sp + 1j * eps * t)**2)


# Two-dimensional thermal integral in double precision (scipy), real eps.
kBf, hbarf, cf = float(kB), float(hbar), float(c)
af, Rf, al0 = float(a), float(Rx), float(alpha0)
Kf = 2 * np.sqrt(2) * hbarf * al0 / (np.pi * cf**4)


def gs_float(z):
    return float(scaled_g(z))


def fn_force(x, T, averaged=False):
    e = 3.81
    tm = np.sqrt(e - 1)
    wT = kBf * T / hbarf
    xe = x - af - Rf if averaged else x

    def f(w, t):
        p = e - 1 - t * t
        planck = w**4 * t * t / np.expm1(hbarf * w / (kBf * T))
        return planck * np.sqrt(2 * p) * (1 / (p + t * t) + (2 * t * t + 1) * (t * t + 1 + p) / (p + e * e * t * t))

    def inner(w):
        def g(phi):
            t = tm * np.sin(phi)
            v = f(w, t) * np.exp(-2 * w * t * xe / cf) * tm * np.cos(phi)
            if averaged:
                z1 = 2 * af * w * t / cf
                z2 = 2 * Rf * w * t / cf
                s2 = gs_float(z2) if z2 > 0 else 1.0
                v *= special.ive(1, z1) * s2
            return v
        return integrate.quad(g, 0, np.pi / 2, limit=400, epsabs=0, epsrel=1e-13)[0]
    val = integrate.quad(lambda u: inner(u * wT) * wT, 0, 100, limit=400, epsabs=0, epsrel=1e-12)[0]
    return -Kf * val


if __name__ == "__main__":
    T310 = mp.mpf(310)
    print("xi_1(310 K)            =", mp.nstr(xi(T310, 1), 17))
    print("scaled_i1(1)           =", mp.nstr(mp.besseli(1, 1) * mp.e**-1, 20))
    print("g(1)                   =", mp.nstr(scaled_g(1) * mp.e, 20))
    k = 1 / (2 * mp.mpf("7e-4"))
    print("h(3.81, xi1(310), 1/14um) =", mp.nstr(h_direct(eps0, xi(T310, 1), k), 20))
    w = kB * T310 / hbar
    print("f(3.81, kT/hbar, t=1, 310 K) =", mp.nstr(f_value(eps0, w, mp.mpf(1), T310), 20))
    tot, zero = cp_force("7e-4", T310)
    print("F_CP(7 um, 310 K)      =", mp.nstr(tot, 17), " zero-term", mp.nstr(zero, 17))
    tot, zero = cp_force("7e-4", T310, averaged=True)
    print("Phi_e(7 um, 310 K)     =", mp.nstr(tot, 17), " zero-term", mp.nstr(zero, 17))
    print("F_n(7 um, 310 K)       = %.15e" % fn_force(7e-4, 310.0))
    print("Phi_n(7 um, 479 K)     = %.15e" % fn_force(7e-4, 479.0, averaged=True))
