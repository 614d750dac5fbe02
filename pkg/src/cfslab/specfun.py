"""Complex-argument Bessel functions J0, J1, Y0, Y1, K0, K1.

Domain of validity: a strip around the positive real axis.  J/Y use the
ascending series for |z| <= 12 and Hankel asymptotics (truncated at the
smallest term) beyond; validated for |Im z| <= STRIP_HALF_WIDTH.  K uses the
ascending series for |z| <= 2 and a Steed continued fraction for larger
moduli, valid for Re z > 0.  All evaluators are vectorized over ndarrays and
return an absolute error estimate alongside the value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EULER_GAMMA = 0.57721566490153286061

# Half-width of the strip around R+ on which the J/Y hybrid is validated
# against the integral/series reference evaluators (delta of the analyticity
# strip; the underlying theory only needs it positive and small).
STRIP_HALF_WIDTH = 1.0

_SERIES_CROSSOVER_JY = 12.0
_SERIES_CROSSOVER_K = 2.0
_BRANCH_CUT_TOL = 1e-12
_EPS = np.finfo(float).eps


class BranchCutProximity(ValueError):
    """Argument within tolerance of the branch cut (-inf, 0]."""


class SpecfunDomainError(ValueError):
    """Argument outside the validated strip / half plane."""


@dataclass(frozen=True)
class BesselEval:
    value: complex
    est_error: float


def _check_branch_cut(z: np.ndarray) -> None:
    on_cut = (z.real <= 0.0) & (np.abs(z.imag) < _BRANCH_CUT_TOL)
    if np.any(on_cut):
        raise BranchCutProximity("argument within 1e-12 of the branch cut (-inf, 0]")


# ---------------------------------------------------------------------------
# ascending series

def _jy_series_core(z: np.ndarray):
    q = z * z / 4.0
    j0 = np.ones_like(z)
    j1s = np.ones_like(z)  # J1 = (z/2) * j1s
    sy0 = np.zeros_like(z)  # sum (-1)^{k+1} H_k q^k / (k!)^2
    sy1 = np.ones_like(z)  # sum (H_k + H_{k+1}) (-q)^k / (k! (k+1)!)
    term0 = np.ones_like(z)
    term1 = np.ones_like(z)
    mag = np.ones(z.shape, dtype=float)
    hk = 0.0
    for k in range(1, 90):
        hk1 = hk + 1.0 / k
        term0 = term0 * (-q) / (k * k)
        term1 = term1 * (-q) / (k * (k + 1))
        j0 += term0
        j1s += term1
        sy0 += -term0 * hk1
        sy1 += term1 * (hk1 + hk1 + 1.0 / (k + 1))
        mag = np.maximum(mag, np.abs(term0).astype(float))
        if np.all(np.abs(term0) < 1e-22 * np.maximum(np.abs(j0), 1e-280)):
            break
        hk = hk1
    return j0, j1s, sy0, sy1, mag, k


def _jy_series(z: np.ndarray):
    """J0, J1, Y0, Y1 by ascending series.

    The alternating sums cancel like exp(|z|); for |z| > 8 the accumulation
    runs in long-double precision so the crossover region stays below 1e-11
    relative error.
    """
    heavy = np.abs(z) > 8.0
    j0 = np.empty_like(z)
    j1s = np.empty_like(z)
    sy0 = np.empty_like(z)
    sy1 = np.empty_like(z)
    err = np.empty(z.shape, dtype=float)
    eps_used = {False: _EPS, True: float(np.finfo(np.longdouble).eps)}
    for mask, dtype in ((~heavy, complex), (heavy, np.clongdouble)):
        if not np.any(mask):
            continue
        a, b, c, d, mag, k = _jy_series_core(z[mask].astype(dtype))
        j0[mask] = a.astype(complex)
        j1s[mask] = b.astype(complex)
        sy0[mask] = c.astype(complex)
        sy1[mask] = d.astype(complex)
        err[mask] = eps_used[bool(dtype is np.clongdouble)] * mag * (k + 1) + _EPS
    j1 = 0.5 * z * j1s
    lg = np.log(z / 2.0) + EULER_GAMMA
    y0 = (2.0 / np.pi) * (lg * j0 + sy0)
    with np.errstate(divide="ignore", invalid="ignore"):
        y1 = -2.0 / (np.pi * z) + (2.0 / np.pi) * lg * j1 - (z / (2.0 * np.pi)) * sy1
    return j0, j1, y0, y1, err


def _ik_series(z: np.ndarray):
    """I0, I1 and the K0, K1 ascending series (|z| small, Re z > 0)."""
    q = z * z / 4.0
    i0 = np.ones_like(z)
    i1s = np.ones_like(z)
    sk0 = np.zeros_like(z)
    sk1 = np.ones_like(z)
    term0 = np.ones_like(z)
    term1 = np.ones_like(z)
    mag = np.ones(z.shape)
    hk = 0.0
    for k in range(1, 60):
        hk1 = hk + 1.0 / k
        term0 = term0 * q / (k * k)
        term1 = term1 * q / (k * (k + 1))
        i0 += term0
        i1s += term1
        sk0 += term0 * hk1
        sk1 += term1 * (hk1 + hk1 + 1.0 / (k + 1))
        mag = np.maximum(mag, np.abs(term0))
        if np.all(np.abs(term0) < 1e-18 * np.maximum(np.abs(i0), 1e-280)):
            break
        hk = hk1
    i1 = 0.5 * z * i1s
    lg = np.log(z / 2.0) + EULER_GAMMA
    k0 = -lg * i0 + sk0
    k1 = 1.0 / z + lg * i1 - (z / 4.0) * sk1
    err = _EPS * np.maximum(mag, np.abs(lg) * mag) * (k + 1)
    return k0, k1, err


# ---------------------------------------------------------------------------
# Hankel asymptotics for J/Y, |z| large

def _hankel_sums(nu: int, z: np.ndarray):
    """Sums S± = sum_k (±i)^k a_k(nu)/z^k truncated at the smallest term."""
    four_nu2 = 4.0 * nu * nu
    sp = np.ones_like(z)
    sm = np.ones_like(z)
    term = np.ones_like(z)
    best = np.full(z.shape, np.inf)
    frozen = np.zeros(z.shape, dtype=bool)
    ak = 1.0
    iz = 1.0 / z
    for k in range(1, 40):
        ak *= (four_nu2 - (2 * k - 1) ** 2) / (8.0 * k)
        term = term * iz
        contrib = ak * term
        size = np.abs(contrib)
        grow = size >= best
        frozen |= grow
        add = np.where(frozen, 0.0, 1.0)
        sp = sp + add * (1j**k) * contrib
        sm = sm + add * ((-1j) ** k) * contrib
        best = np.where(frozen, best, np.minimum(best, size))
        if np.all(frozen) or np.all(size < 1e-18):
            break
    err = np.where(np.isfinite(best), best, 0.0)
    return sp, sm, np.maximum(err, _EPS)


def _jy_asymptotic(z: np.ndarray):
    sp, sm, tail = _hankel_sums(0, z)
    pref = np.sqrt(2.0 / (np.pi * z))
    w0 = z - np.pi / 4.0
    h1_0 = pref * np.exp(1j * w0) * sp
    h2_0 = pref * np.exp(-1j * w0) * sm
    sp1, sm1, tail1 = _hankel_sums(1, z)
    w1 = z - 3.0 * np.pi / 4.0
    h1_1 = pref * np.exp(1j * w1) * sp1
    h2_1 = pref * np.exp(-1j * w1) * sm1
    j0 = 0.5 * (h1_0 + h2_0)
    y0 = (h1_0 - h2_0) / 2j
    j1 = 0.5 * (h1_1 + h2_1)
    y1 = (h1_1 - h2_1) / 2j
    err = np.abs(pref) * np.exp(np.abs(z.imag)) * np.maximum(tail, tail1)
    return j0, j1, y0, y1, err


# ---------------------------------------------------------------------------
# Steed continued fraction for K0, K1 (Re z > 0, |z| >~ 2)

def _k_continued_fraction(z: np.ndarray, max_iter: int = 40000):
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(z)
    q2 = np.ones_like(z)
    a1 = 0.25
    q = np.full_like(z, a1)
    c = np.full_like(z, a1)
    a = np.full_like(z, -a1)
    s = 1.0 + q * delh
    active = np.ones(z.shape, dtype=bool)
    delta = np.full(z.shape, np.inf)
    for i in range(2, max_iter):
        a = a - 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + np.where(active, delh, 0.0)
        dels = q * delh
        s = s + np.where(active, dels, 0.0)
        delta = np.where(active, np.abs(dels / s), delta)
        active &= delta > 1e-17
        if not active.any():
            break
    h = a1 * h
    k0 = np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) / s
    k1 = k0 * (z + 0.5 - h) / z
    err = np.abs(k0) * np.maximum(delta, _EPS)
    return k0, k1, err


# ---------------------------------------------------------------------------
# dispatching evaluators (array in, array + error out)

def jy_all(z: np.ndarray, need_y: bool = True):
    """J0, J1, Y0, Y1 and absolute error estimates for an array of arguments.

    J alone is entire; the branch-cut guard applies only when Y values are
    requested (need_y).  With need_y=False the Y outputs may be invalid.
    """
    z = np.asarray(z, dtype=complex)
    if need_y:
        _check_branch_cut(z)
    small = np.abs(z) <= _SERIES_CROSSOVER_JY
    j0 = np.empty_like(z)
    j1 = np.empty_like(z)
    y0 = np.empty_like(z)
    y1 = np.empty_like(z)
    err = np.empty(z.shape)
    if np.any(small):
        zs = z[small]
        a, b, c, d, e = _jy_series(zs)
        j0[small], j1[small], y0[small], y1[small], err[small] = a, b, c, d, e
    if np.any(~small):
        zl = z[~small]
        a, b, c, d, e = _jy_asymptotic(zl)
        j0[~small], j1[~small], y0[~small], y1[~small], err[~small] = a, b, c, d, e
    return j0, j1, y0, y1, err


def k_all(z: np.ndarray):
    """K0, K1 and absolute error estimates; requires Re z > 0 or |Im z| > 0."""
    z = np.asarray(z, dtype=complex)
    _check_branch_cut(z)
    if np.any(z.real <= 0):
        raise SpecfunDomainError("K evaluation requires Re z > 0")
    small = np.abs(z) <= _SERIES_CROSSOVER_K
    k0 = np.empty_like(z)
    k1 = np.empty_like(z)
    err = np.empty(z.shape)
    if np.any(small):
        a, b, e = _ik_series(z[small])
        k0[small], k1[small], err[small] = a, b, e
    if np.any(~small):
        a, b, e = _k_continued_fraction(z[~small])
        k0[~small], k1[~small], err[~small] = a, b, e
    if np.any(z.real > 705.0):
        # exp(-z) underflows double precision
        raise OverflowError("K underflows for Re z > 705")
    return k0, k1, err


def _scalar(fn_index: int, z: complex, family: str, need_y: bool = True) -> BesselEval:
    arr = np.array([z], dtype=complex)
    if family == "jy":
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = jy_all(arr, need_y=need_y)
    else:
        vals = k_all(arr)
    value = complex(vals[fn_index][0])
    err = float(vals[-1][0])
    return BesselEval(value, err)


def bessel_j0(z: complex) -> BesselEval:
    return _scalar(0, z, "jy", need_y=False)


def bessel_j1(z: complex) -> BesselEval:
    return _scalar(1, z, "jy", need_y=False)


def bessel_y0(z: complex) -> BesselEval:
    return _scalar(2, z, "jy")


def bessel_y1(z: complex) -> BesselEval:
    return _scalar(3, z, "jy")


def bessel_k0(z: complex) -> BesselEval:
    return _scalar(0, z, "k")


def bessel_k1(z: complex) -> BesselEval:
    return _scalar(1, z, "k")
