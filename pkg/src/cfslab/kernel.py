"""Regularized fermionic-projector kernels and derived scalar quantities.

Two mutually validating evaluation paths are provided: a momentum-space
quadrature path (after analytic angular reduction) and a closed-form Bessel
path.

Angular reduction.  With z = x - y, t = z^0, r = |z_vec|, w(k) = e^{-n eps
omega(k)} e^{i omega(k) t} and omega(k) = sqrt(k^2 + m^2), the 3D momentum
integrals reduce to radial ones through

    int d^3k F(|k|) e^{i k.z}       = 4 pi int_0^inf k^2 F(k) sinc(kr) dk
    int d^3k F(|k|) k^a e^{i k.z}   = -i (z^a/r) d/dr [ ... ]
                                    = 4 pi i z^a int_0^inf k^4 F(k) gm(kr) dk

with sinc(x) = sin(x)/x and gm(x) = (cos x - sinc x)/x^2 -> -1/3.  Hence

    v_0(z)  = -(1/(8 pi^3)) int_0^inf k^2        w(k) sinc(kr) dk
    beta(z) = +(m/(8 pi^3)) int_0^inf (k^2/omega) w(k) sinc(kr) dk
    v_a(z)  = +(i z^a/(8 pi^3)) int_0^inf (k^4/omega) w(k) gm(kr) dk .

For small eps these integrals cancel like eps^-3 on the real axis; off the
null cone the oscillatory tails are therefore integrated on contours rotated
into the complex k plane (the integrands are analytic in Re k > 0 away from
k = +-im), which removes the cancellation entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import quadrature as qd
from .minkowski import SpacetimePoint, slash
from .specfun import jy_all, k_all

EPS_MAX = 0.5  # in units of 1/m; all experiments use eps << 1/m

_I4 = np.eye(4, dtype=complex)
_GAMMA0 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)


class ConeProximity(ValueError):
    """Bessel-path argument too close to the branch point on the null cone."""


@dataclass(frozen=True)
class ModelParams:
    """Mass, regularization length and cutoff power of the damping factor."""

    m: float
    eps: float
    n: int = 2

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")
        if not 0 < self.eps < EPS_MAX:
            raise ValueError(f"eps must lie in (0, {EPS_MAX})")
        if self.n not in (1, 2):
            raise ValueError("cutoff power n must be 1 or 2")

    def omega(self, k):
        return np.sqrt(np.asarray(k, dtype=float) ** 2 + self.m**2)

    def damping(self, k):
        """g_eps(k)^n = exp(-n eps omega(k))."""
        return np.exp(-self.n * self.eps * self.omega(k))


def single_damping(p: ModelParams) -> ModelParams:
    """Equivalent parameters with n = 1 (the n-th power equals eps -> n eps)."""
    return replace(p, eps=p.n * p.eps, n=1)


@dataclass(frozen=True)
class KernelValue:
    matrix: np.ndarray
    est_error: float
    method: str


# ---------------------------------------------------------------------------
# quadrature path

def _sinc(x):
    return np.sinc(np.asarray(x) / np.pi)


def _gm(x):
    """(cos x - sinc x)/x^2, stable near 0 (limit -1/3)."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    out = (np.cos(xs) - _sinc(xs)) / (xs * xs)
    x2 = x * x
    series = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0
    return np.where(small, series, out)


_TAU_MIN = 0.05  # below this linear phase rate a tail is not rotated
_R_MIN = 1e-8


def _radial_oscillatory(envelope, t: float, r: float, neps: float, m: float,
                        kind: str, rel_tol: float, abs_tol: float):
    """integral_0^inf envelope(k) e^{i omega t} e^{-n eps omega} ang(kr) dk.

    ang is sinc for kind='sinc', gm for kind='gm'.  The head [0, k0] is done
    on the real axis; each e^{i sigma k r} half of the tail is rotated by
    +-pi/4 whenever its asymptotic phase rate tau_sigma = t + sigma r allows,
    which keeps the quadrature well-conditioned down to tiny eps.
    """

    def omega(k):
        return np.sqrt(k * k + m * m)

    def weight(k):
        return envelope(k) * np.exp((1j * t - neps) * omega(k))

    def full(k):
        ang = _sinc(k * r) if kind == "sinc" else _gm(k * r)
        return weight(k) * ang

    k0 = 4.0 * max(m, 1.0) + 8.0 / (1.0 + abs(t) + r)
    head = qd.integrate_interval(
        full, 0.0, k0, rel_tol=rel_tol, abs_tol=abs_tol,
        breakpoints=np.linspace(0, k0, 8)[1:-1],
    )
    value = head.value
    err = head.est_error
    n_eval = head.evaluations

    def tail_piece(h_sigma, sigma):
        """h_sigma(k) e^{i sigma k r} beyond k0, rotated if possible."""
        tau = t + sigma * r
        rate = neps if abs(tau) < _TAU_MIN else (abs(tau) * np.sqrt(0.5) + neps * np.sqrt(0.5))
        rot = 0.0 if abs(tau) < _TAU_MIN else np.sign(tau) * np.pi / 4.0
        phase = np.exp(1j * rot)

        def g(u):
            k = k0 + u * phase
            return weight(k) * h_sigma(k) * np.exp(1j * sigma * k * r) * phase

        res = qd.integrate_halfline(g, rel_tol=rel_tol, abs_tol=abs_tol, decay=rate)
        return res

    if r < _R_MIN:
        # no angular oscillation; single (possibly rotated) unsplit tail
        ang0 = 1.0 if kind == "sinc" else -1.0 / 3.0
        res = tail_piece(lambda k: ang0 * np.ones_like(k), sigma=0)
        value += res.value
        err += res.est_error
        n_eval += res.evaluations
    else:
        if kind == "sinc":
            halves = [(lambda k, s=s: s / (2j * k * r), s) for s in (+1, -1)]
        else:
            halves = [
                (lambda k, s=s: (0.5 + 1j * s / (2.0 * k * r)) / (k * r) ** 2, s)
                for s in (+1, -1)
            ]
        for h, s in halves:
            res = tail_piece(h, sigma=s)
            value += res.value
            err += res.est_error
            n_eval += res.evaluations
    return value, err, n_eval


def scalar_components(p: ModelParams, z, rel_tol: float = 1e-9):
    """(v0, v1, v2, v3, beta) of the kernel decomposition at argument z."""
    z = SpacetimePoint.of(z)
    t, rvec = z.t, z.spatial
    r = float(np.linalg.norm(rvec))
    neps = p.n * p.eps
    m = p.m
    scale = 1.0 / (8.0 * np.pi**3)
    abs_tol = rel_tol  # integrals are O(eps^-3); abs floor is irrelevant

    s0, e0, _ = _radial_oscillatory(
        lambda k: k * k, t, r, neps, m, "sinc", rel_tol, abs_tol)
    sb, eb, _ = _radial_oscillatory(
        lambda k: k * k / np.sqrt(k * k + m * m), t, r, neps, m, "sinc", rel_tol, abs_tol)
    v0 = -scale * s0
    beta = m * scale * sb
    err = scale * (e0 + m * eb)
    if r < _R_MIN:
        # odd integrand in k: vanishes exactly
        v = np.zeros(3, dtype=complex)
    else:
        sv, ev, _ = _radial_oscillatory(
            lambda k: k**4 / np.sqrt(k * k + m * m), t, r, neps, m, "gm", rel_tol, abs_tol)
        v = 1j * rvec.astype(complex) * scale * sv
        err += scale * ev * max(r, 1.0)
    return complex(v0), complex(v[0]), complex(v[1]), complex(v[2]), complex(beta), err


def kernel_p(p: ModelParams, x, y, rel_tol: float = 1e-9) -> KernelValue:
    """P^{n eps}(x, y) assembled from the radial quadrature components."""
    z = SpacetimePoint.of(x) - SpacetimePoint.of(y)
    v0, v1, v2, v3, beta, err = scalar_components(p, z, rel_tol=rel_tol)
    mat = beta * _I4 + slash(np.array([v0, -v1, -v2, -v3], dtype=complex))
    return KernelValue(mat, err, "quadrature")


# ---------------------------------------------------------------------------
# Bessel path (closed form, n = 1 only)

def kernel_bessel_batch(m: float, eps: float, xi: np.ndarray, cone_tol: float = 0.0):
    """P^eps(x, y) for a batch of difference vectors xi = y - x, shape (N, 4).

    Returns (matrices (N,4,4), est_error (N,)).  Uses the representation
    P = (i d-slash + m) T with T the K1 closed form; on the timelike side the
    K functions are rewritten through J1/Y1 of the reflected argument.
    """
    xi = np.asarray(xi, dtype=float)
    t = xi[:, 0]
    rvec = xi[:, 1:]
    xi0_eps = t - 1j * eps
    d2 = xi0_eps**2 - np.sum(rvec * rvec, axis=1)
    if cone_tol > 0.0 and np.any(np.abs(d2) < cone_tol):
        raise ConeProximity(
            f"|(xi - i eps e0)^2| below cone_tol={cone_tol:g}")

    n = xi.shape[0]
    T = np.empty(n, dtype=complex)
    Tp = np.empty(n, dtype=complex)
    err = np.zeros(n, dtype=float)

    space = d2.real < 0.0
    if np.any(space):
        s = np.sqrt(-d2[space])
        k0, k1, ek = k_all(m * s)
        T[space] = (m / (8.0 * np.pi**3)) * k1 / s
        Tp[space] = (m / (16.0 * np.pi**3)) * (m * k0 / s**2 + 2.0 * k1 / s**3)
        err[space] = (m / (8.0 * np.pi**3)) * ek * (1.0 / np.abs(s) + 1.0 / np.abs(s) ** 3 + m / np.abs(s) ** 2)
    tl = ~space
    if np.any(tl):
        u = np.sqrt(d2[tl])
        sg = -np.sign(t[tl])
        sg[sg == 0] = 1.0  # unreachable for eps > 0 (xi0 = 0 implies spacelike)
        j0, j1, y0, y1, ej = jy_all(m * u)
        h0 = y0 - 1j * sg * j0
        h1 = y1 - 1j * sg * j1
        T[tl] = (m / (16.0 * np.pi**2)) * h1 / u
        Tp[tl] = (m / (16.0 * np.pi**2)) * (0.5 * m * h0 / u**2 - h1 / u**3)
        err[tl] = (m / (16.0 * np.pi**2)) * ej * (
            2.0 / np.abs(u) + 2.0 / np.abs(u) ** 3 + m / np.abs(u) ** 2)

    # covariant components of xi^eps: (xi^0 - i eps, -xi_vec)
    cov = np.empty((n, 4), dtype=complex)
    cov[:, 0] = xi0_eps
    cov[:, 1:] = -rvec
    from .minkowski import gamma as _gamma

    mats = np.zeros((n, 4, 4), dtype=complex)
    for j in range(4):
        gj = _gamma(j)
        mats += cov[:, j, None, None] * gj[None, :, :]
    mats = -2j * Tp[:, None, None] * mats + (m * T)[:, None, None] * _I4[None, :, :]
    err_total = np.abs(err) * (2.0 * np.max(np.abs(cov), axis=1) + m)
    return mats, err_total


def kernel_p_bessel(p: ModelParams, x, y, cone_tol: float = 0.0) -> KernelValue:
    """Closed-form kernel evaluation; requires n = 1 (see single_damping)."""
    if p.n != 1:
        raise ValueError("Bessel path supports n = 1; substitute eps -> n eps first")
    xi = (SpacetimePoint.of(y) - SpacetimePoint.of(x)).as_array()[None, :]
    mats, err = kernel_bessel_batch(p.m, p.eps, xi, cone_tol=cone_tol)
    return KernelValue(mats[0], float(err[0]), "bessel")


# ---------------------------------------------------------------------------
# mass-shell pairings

def _momentum_cubature(p: ModelParams, n_rad: int, n_cos: int, n_phi: int,
                       k_scale: float | None = None):
    """Product rule for int d^3k with damping-adapted radial mapping.

    Radial nodes come from Gauss-Legendre on [0, 1) mapped by
    k = scale * s / (1 - s); returns (kvecs (N,3), weights (N,))."""
    xs, ws = np.polynomial.legendre.leggauss(n_rad)
    s = 0.5 * (xs + 1.0)
    wsr = 0.5 * ws
    scale = k_scale if k_scale is not None else max(2.0 / (p.n * p.eps * 3.0), 2.0 * p.m)
    k = scale * s / (1.0 - s)
    jac = scale / (1.0 - s) ** 2
    wr = wsr * jac * k * k
    xc, wc = np.polynomial.legendre.leggauss(n_cos)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    wphi = 2.0 * np.pi / n_phi
    kk, cc, pp = np.meshgrid(k, xc, phi, indexing="ij")
    ww = (wr[:, None, None] * wc[None, :, None] * wphi * np.ones_like(pp))
    sin_t = np.sqrt(1.0 - cc**2)
    kv = np.stack(
        [kk * sin_t * np.cos(pp), kk * sin_t * np.sin(pp), kk * cc], axis=-1
    ).reshape(-1, 3)
    return kv, ww.ravel()


def p_minus(m: float, kvec: np.ndarray) -> np.ndarray:
    """Negative-energy projector p_-(k) = (kslash + m)/(2 k^0) gamma^0, k^0 = -omega."""
    kvec = np.atleast_2d(np.asarray(kvec, dtype=float))
    om = np.sqrt(np.sum(kvec**2, axis=1) + m * m)
    cov = np.empty((kvec.shape[0], 4), dtype=complex)
    cov[:, 0] = -om
    cov[:, 1:] = -kvec
    from .minkowski import gamma as _gamma

    ksl = np.zeros((kvec.shape[0], 4, 4), dtype=complex)
    for j in range(4):
        ksl += cov[:, j, None, None] * _gamma(j)[None, :, :]
    proj = (ksl + m * _I4[None, :, :]) @ _GAMMA0 / (2.0 * (-om))[:, None, None]
    return proj


def kernel_apply_test(p: ModelParams, x, ghat, n_rad: int = 48, n_cos: int = 24,
                      n_phi: int = 24, k_scale: float | None = None) -> np.ndarray:
    """P^{n eps}(x, g) for shell data ghat(kvec) -> C^4 (the 4D transform of g
    restricted to the lower mass shell).

    Evaluates -int d^3k/(2pi)^2 p_-(k) gamma^0 g^n F(g) e^{-i k.x} by the
    product cubature; doubling n_rad/n_cos/n_phi gives a refinement check.
    """
    x = SpacetimePoint.of(x)
    kv, w = _momentum_cubature(p, n_rad, n_cos, n_phi, k_scale)
    om = np.sqrt(np.sum(kv**2, axis=1) + p.m**2)
    phase = np.exp(1j * (om * x.t + kv @ x.spatial))
    damp = np.exp(-p.n * p.eps * om)
    gvals = np.asarray(ghat(kv), dtype=complex).reshape(-1, 4)
    pm = p_minus(p.m, kv)
    integrand = np.einsum("nab,nb->na", pm @ _GAMMA0, gvals)
    vec = -(w * damp * phase)[:, None] * integrand / (2.0 * np.pi) ** 2
    return vec.sum(axis=0)


def kernel_pair(p: ModelParams, fhat, ghat, n_rad: int = 48, n_cos: int = 24,
                n_phi: int = 24, k_scale: float | None = None) -> complex:
    """P^{n eps}(f, g) = -int d^3k F(f)^dag p_- gamma^0 g^n F(g)."""
    kv, w = _momentum_cubature(p, n_rad, n_cos, n_phi, k_scale)
    om = np.sqrt(np.sum(kv**2, axis=1) + p.m**2)
    damp = np.exp(-p.n * p.eps * om)
    fv = np.asarray(fhat(kv), dtype=complex).reshape(-1, 4)
    gv = np.asarray(ghat(kv), dtype=complex).reshape(-1, 4)
    pm = p_minus(p.m, kv)
    quad = np.einsum("na,nab,nb->n", fv.conj(), pm @ _GAMMA0, gv)
    return complex(-np.sum(w * damp * quad))


# ---------------------------------------------------------------------------
# scalar diagnostics

def _gnorms(m: float, eps: float, rel_tol: float = 1e-11):
    """(||g_eps^2||_L1, ||g_eps^2/omega||_L1) as 3D integrals (4 pi radial)."""
    om = lambda k: np.sqrt(k * k + m * m)
    r1 = qd.integrate_halfline(
        lambda k: k * k * np.exp(-2.0 * eps * om(k)), rel_tol=rel_tol,
        abs_tol=0.0, decay=2.0 * eps)
    r2 = qd.integrate_halfline(
        lambda k: k * k / om(k) * np.exp(-2.0 * eps * om(k)), rel_tol=rel_tol,
        abs_tol=0.0, decay=2.0 * eps)
    return 4.0 * np.pi * r1.value.real, 4.0 * np.pi * r2.value.real


def nu_pm(p: ModelParams) -> tuple[float, float]:
    """Eigenvalues nu_+ > 0 > nu_- of P^{2 eps}(x, x)."""
    a, c = _gnorms(p.m, p.eps)
    pref = 1.0 / (2.0 * (2.0 * np.pi) ** 4)
    return pref * (a + p.m * c), pref * (-a + p.m * c)


def trace_vac(p: ModelParams) -> float:
    """tr F^eps(x) = 4 pi (nu_+ + nu_-); point independent."""
    np_, nm_ = nu_pm(p)
    return 4.0 * np.pi * (np_ + nm_)


def trace_vac_direct(p: ModelParams) -> float:
    """Same trace through 2m (2 pi)^-3 ||g^2/omega||_L1 (consistency route)."""
    _, c = _gnorms(p.m, p.eps)
    return 2.0 * p.m * c / (2.0 * np.pi) ** 3


def coincidence_kernel(p: ModelParams) -> np.ndarray:
    """P^{2 eps}(x, x) = pref (-||g^2|| gamma^0 + m ||g^2/omega|| I)."""
    a, c = _gnorms(p.m, p.eps)
    pref = 1.0 / (2.0 * (2.0 * np.pi) ** 4)
    return pref * (-a * _GAMMA0 + p.m * c * _I4)


def localized_inner(p: ModelParams, x, y, chi, zeta, method: str = "bessel") -> complex:
    """<u^eps_{x,chi} | u^eps_{y,zeta}> = -(2 pi)^-1 <<chi | P^{2eps}(x,y) zeta>>.

    The inner product of localized states doubles the damping, so the kernel
    is always evaluated at cutoff power 2 regardless of p.n.
    """
    p2 = replace(p, n=2)
    x = SpacetimePoint.of(x)
    y = SpacetimePoint.of(y)
    chi = np.asarray(chi, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    if np.allclose(x.as_array(), y.as_array()):
        mat = coincidence_kernel(p)
    elif method == "bessel":
        mat = kernel_p_bessel(single_damping(p2), x, y).matrix
    else:
        mat = kernel_p(p2, x, y).matrix
    val = np.conj(chi) @ _GAMMA0 @ (mat @ zeta)
    return complex(-val / (2.0 * np.pi))


def localized_norm_sq(p: ModelParams, chi) -> float:
    """||u^eps_{x,chi}||^2 via the component formula with nu_+-."""
    chi = np.asarray(chi, dtype=complex)
    np_, nm_ = nu_pm(p)
    lower = abs(chi[0]) ** 2 + abs(chi[1]) ** 2
    upper = abs(chi[2]) ** 2 + abs(chi[3]) ** 2
    return ((-nm_) * lower + np_ * upper) / (2.0 * np.pi)
