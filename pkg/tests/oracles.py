"""Independent reference evaluators used to freeze test fixtures.

These deliberately avoid the evaluation strategies of cfslab.specfun:
K0/K1 come from quadrature of their cosh integral representations, J and Y
from high-precision mpmath power series.  Run as a script to print the
frozen fixture table.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
from scipy.integrate import quad


def _k_integral(z: complex, weight_cosh: bool) -> complex:
    # rescaled integrand exp(-z(cosh t - 1)) keeps the quadrature O(1); the
    # exact factor exp(-z) is restored afterwards
    zc = complex(z)
    if zc.real <= 0:
        raise ValueError("integral representation needs Re z > 0")
    upper = float(np.arccosh(1.0 + 60.0 / abs(zc)) + 2.0)

    def f(t, part):
        v = np.exp(-zc * (np.cosh(t) - 1.0))
        if weight_cosh:
            v = v * np.cosh(t)
        return v.real if part == 0 else v.imag

    re = quad(f, 0, upper, args=(0,), limit=400, epsabs=1e-15, epsrel=1e-13)[0]
    im = quad(f, 0, upper, args=(1,), limit=400, epsabs=1e-15, epsrel=1e-13)[0]
    return complex(re, im) * np.exp(-zc)


def k0_integral(z: complex) -> complex:
    """K0(z) = int_0^inf exp(-z cosh t) dt, Re z > 0."""
    return _k_integral(z, weight_cosh=False)


def k1_integral(z: complex) -> complex:
    """K1(z) = int_0^inf exp(-z cosh t) cosh t dt, Re z > 0."""
    return _k_integral(z, weight_cosh=True)


def _mp_series_j(nu: int, z: complex, dps: int = 40) -> complex:
    with mp.workdps(dps):
        zm = mp.mpc(z)
        half = zm / 2
        total = mp.mpc(0)
        term_base = half**nu
        for k in range(0, 200):
            term = (-1) ** k * half ** (2 * k) * term_base / (
                mp.factorial(k) * mp.factorial(k + nu)
            )
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * max(abs(total), mp.mpf(1e-300)):
                break
        return complex(total)


def j0_series(z: complex) -> complex:
    return _mp_series_j(0, z)


def j1_series(z: complex) -> complex:
    return _mp_series_j(1, z)


def _harmonic(k: int) -> mp.mpf:
    return mp.fsum(mp.mpf(1) / i for i in range(1, k + 1)) if k else mp.mpf(0)


def y0_series(z: complex, dps: int = 40) -> complex:
    with mp.workdps(dps):
        zm = mp.mpc(z)
        q = (zm / 2) ** 2
        s = mp.mpc(0)
        for k in range(1, 200):
            term = (-1) ** (k + 1) * _harmonic(k) * q**k / mp.factorial(k) ** 2
            s += term
            if abs(term) < mp.mpf(10) ** (-dps) * max(abs(s), mp.mpf(1e-300)):
                break
        j0 = mp.mpc(_mp_series_j(0, z, dps))
        val = (2 / mp.pi) * ((mp.log(zm / 2) + mp.euler) * j0 + s)
        return complex(val)


def y1_series(z: complex, dps: int = 40) -> complex:
    with mp.workdps(dps):
        zm = mp.mpc(z)
        q = (zm / 2) ** 2
        s = mp.mpc(0)
        for k in range(0, 200):
            term = (
                (-1) ** k
                * (_harmonic(k) + _harmonic(k + 1))
                * q**k
                / (mp.factorial(k) * mp.factorial(k + 1))
            )
            s += term
            if abs(term) < mp.mpf(10) ** (-dps) * max(abs(s), mp.mpf(1e-300)):
                break
        j1 = mp.mpc(_mp_series_j(1, z, dps))
        val = (
            -2 / (mp.pi * zm)
            + (2 / mp.pi) * (mp.log(zm / 2) + mp.euler) * j1
            - (zm / (2 * mp.pi)) * s
        )
        return complex(val)


ORACLES = {
    "j0": j0_series,
    "j1": j1_series,
    "y0": y0_series,
    "y1": y1_series,
    "k0": k0_integral,
    "k1": k1_integral,
}


def strip_points(n: int, seed: int = 20240517, kind: str = "k") -> np.ndarray:
    """Random points on the validated strip around the positive real axis."""
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(np.log(0.05), np.log(50.0), n))
    if kind == "k":
        # keep |arg z| < pi/2 - margin so the cosh integral converges fast
        ang = rng.uniform(-1.2, 1.2, n)
        pts = r * np.exp(1j * ang)
        pts = pts[pts.real > 0.05]
    else:
        y = rng.uniform(-1.0, 1.0, n)
        pts = r + 1j * np.clip(y, -0.99, 0.99)
    return pts


if __name__ == "__main__":
    print("# frozen fixtures (function, z, value)")
    for name, z in [
        ("k1", 1.0),
        ("k1", 10.0),
        ("k0", 1.0),
        ("k0", 5.0),
        ("j1", 1.0),
        ("y1", 1.0),
        ("j0", 1.0),
        ("y0", 1.0),
        ("k1", 0.3 + 0.2j),
        ("k0", 7.0 + 0.9j),
        ("j1", 9.0 - 0.7j),
        ("y1", 14.0 + 0.5j),
        ("j1", 30.0 + 0.9j),
        ("y1", 42.0 - 0.8j),
        ("k1", 25.0 + 3.0j),
    ]:
        v = ORACLES[name](z)
        print(f'    ("{name}", {z!r}, {v!r}),')
