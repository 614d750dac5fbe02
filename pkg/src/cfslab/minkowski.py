"""Minkowski geometry and the Dirac (Clifford) algebra.

Signature convention (+,-,-,-), natural units.  The Dirac matrices are fixed
in the standard Dirac basis, gamma^0 = diag(1,1,-1,-1); all component
identities used elsewhere in the package hold in this basis only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

# Pauli matrices, building blocks of the spatial gammas.
_SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]

_GAMMA0 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)


def _spatial_gamma(alpha: int) -> np.ndarray:
    g = np.zeros((4, 4), dtype=complex)
    s = _SIGMA[alpha - 1]
    g[:2, 2:] = s
    g[2:, :2] = -s
    return g


_GAMMA = [_GAMMA0] + [_spatial_gamma(a) for a in (1, 2, 3)]
_GAMMA5 = 1j * _GAMMA[0] @ _GAMMA[1] @ _GAMMA[2] @ _GAMMA[3]


def gamma(j: int) -> np.ndarray:
    """Dirac matrix gamma^j in the standard Dirac basis (copy)."""
    if j not in (0, 1, 2, 3):
        raise IndexError(f"gamma index must be in 0..3, got {j}")
    return _GAMMA[j].copy()


def gamma5() -> np.ndarray:
    """gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3 (copy)."""
    return _GAMMA5.copy()


def spin_inner(psi: np.ndarray, phi: np.ndarray) -> complex:
    """Indefinite spin scalar product psi^dagger gamma^0 phi.

    Conjugate-linear in the first slot.  Accepts stacked spinors with the
    component axis last and contracts that axis.
    """
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    signed = phi.copy()
    signed[..., 2:] *= -1.0
    return np.sum(np.conj(psi) * signed, axis=-1)


def spin_adjoint(a: np.ndarray) -> np.ndarray:
    """Adjoint with respect to the spin scalar product: gamma^0 A^dagger gamma^0."""
    a = np.asarray(a, dtype=complex)
    return _GAMMA0 @ a.conj().swapaxes(-1, -2) @ _GAMMA0


class ConeClass(Enum):
    INTERIOR_TIMELIKE = "interior_timelike"
    NULL = "null"
    EXTERIOR_SPACELIKE = "exterior_spacelike"


@dataclass(frozen=True)
class SpacetimePoint:
    """Point (or difference vector) of R^{1,3}; t is the time component."""

    t: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def of(cls, v) -> "SpacetimePoint":
        if isinstance(v, SpacetimePoint):
            return v
        t, x1, x2, x3 = (float(c) for c in v)
        return cls(t, x1, x2, x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x1, self.x2, self.x3])

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    @property
    def radius(self) -> float:
        return float(np.sqrt(self.x1**2 + self.x2**2 + self.x3**2))

    def __add__(self, other: "SpacetimePoint") -> "SpacetimePoint":
        return SpacetimePoint(
            self.t + other.t, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3
        )

    def __sub__(self, other: "SpacetimePoint") -> "SpacetimePoint":
        return SpacetimePoint(
            self.t - other.t, self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3
        )

    def __neg__(self) -> "SpacetimePoint":
        return SpacetimePoint(-self.t, -self.x1, -self.x2, -self.x3)


def minkowski_square(xi) -> float:
    """xi . xi = t^2 - x1^2 - x2^2 - x3^2."""
    xi = SpacetimePoint.of(xi)
    return xi.t**2 - xi.x1**2 - xi.x2**2 - xi.x3**2


def cone_class(xi, tol: float = 1e-9) -> ConeClass:
    """Classify xi against the null cone.

    A vector counts as null when |xi.xi| <= tol * (t^2 + |x|^2); the band
    width is a classification input, never stored state.
    """
    xi = SpacetimePoint.of(xi)
    q = minkowski_square(xi)
    scale = xi.t**2 + xi.x1**2 + xi.x2**2 + xi.x3**2
    if abs(q) <= tol * max(scale, 1e-300):
        return ConeClass.NULL
    return ConeClass.INTERIOR_TIMELIKE if q > 0 else ConeClass.EXTERIOR_SPACELIKE


def slash(v: np.ndarray) -> np.ndarray:
    """Feynman slash of a covariant 4-vector: gamma^j v_j (complex entries allowed)."""
    v = np.asarray(v, dtype=complex)
    return sum(v[j] * _GAMMA[j] for j in range(4))


def clifford_basis() -> list[np.ndarray]:
    """The sixteen products I, gamma^j, gamma^j gamma^k (j<k), gamma^j gamma^5, gamma^5."""
    mats = [np.eye(4, dtype=complex)]
    mats += [_GAMMA[j] for j in range(4)]
    mats += [_GAMMA[j] @ _GAMMA[k] for j in range(4) for k in range(j + 1, 4)]
    mats += [_GAMMA[j] @ _GAMMA5 for j in range(4)]
    mats.append(_GAMMA5)
    return mats
