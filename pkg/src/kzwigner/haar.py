"""Euler-angle charts of SU(2) and SU(3), Haar densities and phase-space measures.

SU(3) elements are written as the ordered product

    e^{iα/2 λ₃} e^{iβ/2 λ₂} e^{iγ/2 λ₃} e^{iθ λ₅} e^{ia/2 λ₃} e^{ib/2 λ₂} e^{ic/2 λ₃} e^{iφ λ₈}

with normalized Haar density ``cos θ sin³θ sin β sin b / (64 √3 π⁵)`` on
α, a ∈ [0, 2π], β, b ∈ [0, π], γ, c ∈ [0, 4π], θ ∈ [0, π/2], φ ∈ [0, √3 π].
SU(2) uses the 3-2-3 chart ``e^{iα/2 σ₃} e^{iβ/2 σ₂} e^{iγ/2 σ₃}``.

Angle arrays are laid out as rows of ``SU3_ANGLES`` / ``SU2_ANGLES``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .swkernel import STRATUM_GENERIC, STRATUM_QUBIT, STRATUM_ZETA0, STRATUM_ZETAPI3

__all__ = [
    "SU2_ANGLES",
    "SU3_ANGLES",
    "SU2_RANGES",
    "SU3_RANGES",
    "EulerPointSU2",
    "EulerPointSU3",
    "PhaseSpaceMeasure",
    "QuadratureGrid",
    "su2_from_euler",
    "su3_from_euler",
    "su2_batch",
    "su3_batch",
    "haar_density_su3",
    "phase_measure",
    "sample_haar_su2",
    "sample_haar_su3",
    "quadrature_grid",
    "gauss_legendre",
    "chunk_generators",
    "UnsupportedStratumError",
    "haar_conjugation_average",
]

SQRT3 = np.sqrt(3.0)
TWO_PI = 2 * np.pi
SU2_ANGLES = ("alpha", "beta", "gamma")
SU2_RANGES = {"alpha": (0.0, TWO_PI), "beta": (0.0, np.pi), "gamma": (0.0, 2 * TWO_PI)}
SU3_ANGLES = ("alpha", "beta", "gamma", "theta", "a", "b", "c", "phi")
SU3_RANGES = {
    "alpha": (0.0, TWO_PI),
    "beta": (0.0, np.pi),
    "gamma": (0.0, 2 * TWO_PI),
    "theta": (0.0, np.pi / 2),
    "a": (0.0, TWO_PI),
    "b": (0.0, np.pi),
    "c": (0.0, 2 * TWO_PI),
    "phi": (0.0, SQRT3 * np.pi),
}
HAAR_SU3_CONST = 1.0 / (64 * SQRT3 * np.pi**5)
_RANGE_TOL = 1e-12
# Fixed chunk size for sampling so streams do not depend on worker count.
SAMPLE_CHUNK = 1 << 16


class UnsupportedStratumError(ValueError):
    pass


def _check_ranges(names, values, ranges):
    for name, value in zip(names, values):
        lo, hi = ranges[name]
        if not lo - _RANGE_TOL <= value <= hi + _RANGE_TOL:
            raise ValueError(f"Euler angle {name}={value} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class EulerPointSU2:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        _check_ranges(SU2_ANGLES, self.as_array(), SU2_RANGES)

    def as_array(self):
        return np.array([self.alpha, self.beta, self.gamma])


@dataclass(frozen=True)
class EulerPointSU3:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    theta: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        _check_ranges(SU3_ANGLES, self.as_array(), SU3_RANGES)

    def as_array(self):
        return np.array([getattr(self, n) for n in SU3_ANGLES])


# -- elementary factors, batched over a leading axis -------------------------

def _diag3(t):
    """exp(i t/2 λ₃) for an array of angles t, shape (..., 3, 3)."""
    out = np.zeros(np.shape(t) + (3, 3), dtype=complex)
    out[..., 0, 0] = np.exp(0.5j * t)
    out[..., 1, 1] = np.exp(-0.5j * t)
    out[..., 2, 2] = 1.0
    return out


def _rot2(t):
    """exp(i t/2 λ₂): real rotation in the (1, 2) plane."""
    c, s = np.cos(t / 2), np.sin(t / 2)
    out = np.zeros(np.shape(t) + (3, 3), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s
    out[..., 1, 0] = -s
    out[..., 1, 1] = c
    out[..., 2, 2] = 1.0
    return out


def _rot5(t):
    """exp(i t λ₅): real rotation in the (1, 3) plane."""
    c, s = np.cos(t), np.sin(t)
    out = np.zeros(np.shape(t) + (3, 3), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 2] = s
    out[..., 2, 0] = -s
    out[..., 2, 2] = c
    out[..., 1, 1] = 1.0
    return out


def _diag8(t):
    """exp(i t λ₈)."""
    out = np.zeros(np.shape(t) + (3, 3), dtype=complex)
    out[..., 0, 0] = out[..., 1, 1] = np.exp(1j * t / SQRT3)
    out[..., 2, 2] = np.exp(-2j * t / SQRT3)
    return out


def su3_batch(angles):
    """SU(3) matrices for an ``(M, 8)`` array of Euler angles (no range check)."""
    ang = np.atleast_2d(np.asarray(angles, dtype=float))
    al, be, ga, th, a, b, c, ph = ang.T
    u = _diag3(al)
    for factor in (_rot2(be), _diag3(ga), _rot5(th), _diag3(a), _rot2(b), _diag3(c), _diag8(ph)):
        u = u @ factor
    return u


def su2_batch(angles):
    """SU(2) matrices for an ``(M, 3)`` array of Euler angles (no range check)."""
    ang = np.atleast_2d(np.asarray(angles, dtype=float))
    al, be, ga = ang.T
    ea, eg = np.exp(0.5j * al), np.exp(0.5j * ga)
    c, s = np.cos(be / 2), np.sin(be / 2)
    u = np.empty((ang.shape[0], 2, 2), dtype=complex)
    u[:, 0, 0] = ea * c * eg
    u[:, 0, 1] = ea * s / eg
    u[:, 1, 0] = -s * eg / ea
    u[:, 1, 1] = c / (ea * eg)
    return u


def su2_from_euler(p):
    if not isinstance(p, EulerPointSU2):
        p = EulerPointSU2(*p)
    return su2_batch(p.as_array())[0]


def su3_from_euler(p):
    """Unitary for one Euler point (validated against the chart ranges)."""
    if not isinstance(p, EulerPointSU3):
        p = EulerPointSU3(*p)
    return su3_batch(p.as_array())[0]


def haar_density_su3(p):
    """Normalized Haar weight per unit coordinate volume.

    Accepts an :class:`EulerPointSU3` or an ``(..., 8)`` angle array.
    """
    ang = p.as_array() if isinstance(p, EulerPointSU3) else np.asarray(p, dtype=float)
    beta, theta, b = ang[..., 1], ang[..., 3], ang[..., 5]
    return HAAR_SU3_CONST * np.cos(theta) * np.sin(theta) ** 3 * np.sin(beta) * np.sin(b)


# -- phase-space measures ---------------------------------------------------

def _one(x):
    return np.ones_like(x)


def _cos_sin3(x):
    return np.cos(x) * np.sin(x) ** 3


_FACTORS = {"beta": np.sin, "b": np.sin, "theta": _cos_sin3}


@dataclass(frozen=True)
class PhaseSpaceMeasure:
    """Invariant measure on a coset, written on a subset of Euler angles.

    ``density(x) = normalization * prod_k factor_k(x_k)`` for the active angles.
    The normalization is fixed so that the total mass equals the dimension.
    """

    stratum: str
    dim: int
    active: tuple
    ranges: tuple
    normalization: float

    @property
    def all_angles(self):
        return SU2_ANGLES if self.dim == 2 else SU3_ANGLES

    def factor(self, name):
        return _FACTORS.get(name, _one)

    def density(self, *values):
        """Per-radian weight at the active-angle values ``values``."""
        out = self.normalization
        for name, value in zip(self.active, values):
            out = out * self.factor(name)(np.asarray(value, dtype=float))
        return out

    def total(self):
        return self.normalization * _unnormalized_mass(self.active, self.ranges)


def _unnormalized_mass(active, ranges):
    mass = 1.0
    for name, (lo, hi) in zip(active, ranges):
        f = _FACTORS.get(name, _one)
        mass *= integrate.quad(lambda x: float(f(np.float64(x))), lo, hi, epsabs=0, epsrel=1e-13)[0]
    return mass


_ACTIVE = {
    STRATUM_QUBIT: (2, ("alpha", "beta")),
    STRATUM_GENERIC: (3, ("beta", "gamma", "theta", "a", "b")),
    STRATUM_ZETA0: (3, ("beta", "theta", "b")),
    STRATUM_ZETAPI3: (3, ("beta", "theta", "b")),
}


@lru_cache(maxsize=None)
def phase_measure(stratum):
    """Invariant measure of the phase space attached to ``stratum``.

    Supported strata are ``"(12)"`` (qubit sphere), ``"(123)"``, ``"(1|23)"``
    and ``"(12|3)"``.  The overall constant is calibrated so the total mass
    equals N, i.e. the maximally mixed state has ∫W dΩ = 1.
    """
    if stratum not in _ACTIVE:
        raise UnsupportedStratumError(f"no phase-space chart for stratum {stratum!r}")
    dim, active = _ACTIVE[stratum]
    table = SU2_RANGES if dim == 2 else SU3_RANGES
    ranges = tuple(table[name] for name in active)
    norm = dim / _unnormalized_mass(active, ranges)
    return PhaseSpaceMeasure(stratum, dim, active, ranges, norm)


# -- quadrature ---------------------------------------------------------------

@lru_cache(maxsize=64)
def _leggauss(n):
    x, w = leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre(n, lo, hi):
    """``n`` Gauss-Legendre nodes and weights mapped to ``[lo, hi]``."""
    x, w = _leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1), half * w


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product nodes as full Euler-angle rows plus measure weights.

    Inactive angles are held at zero.
    """

    points: np.ndarray
    weights: np.ndarray
    measure: PhaseSpaceMeasure

    def __len__(self):
        return len(self.weights)

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def quadrature_grid(measure, nodes_per_dim):
    if nodes_per_dim < 2:
        raise ValueError("nodes_per_dim must be at least 2")
    axes, wts = [], []
    for name, (lo, hi) in zip(measure.active, measure.ranges):
        x, w = gauss_legendre(nodes_per_dim, lo, hi)
        axes.append(x)
        wts.append(w * measure.factor(name)(x))
    mesh = np.meshgrid(*axes, indexing="ij")
    wmesh = np.meshgrid(*wts, indexing="ij")
    weights = measure.normalization * np.prod(wmesh, axis=0).reshape(-1)
    names = measure.all_angles
    points = np.zeros((weights.size, len(names)))
    for name, values in zip(measure.active, mesh):
        points[:, names.index(name)] = values.reshape(-1)
    return QuadratureGrid(points, weights, measure)


# -- sampling -----------------------------------------------------------------

def chunk_generators(seed, count, chunk=SAMPLE_CHUNK):
    """Independent Philox streams, one per fixed-size chunk of ``count`` draws."""
    n_chunks = -(-count // chunk)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [min(chunk, count - i * chunk) for i in range(n_chunks)]
    return [(np.random.Generator(np.random.Philox(c)), s) for c, s in zip(children, sizes)]


def _draw_su3(rng, n):
    u = rng.random((n, 8))
    out = np.empty((n, 8))
    out[:, 0] = TWO_PI * u[:, 0]
    out[:, 1] = np.arccos(1 - 2 * u[:, 1])
    out[:, 2] = 2 * TWO_PI * u[:, 2]
    out[:, 3] = np.arcsin(u[:, 3] ** 0.25)
    out[:, 4] = TWO_PI * u[:, 4]
    out[:, 5] = np.arccos(1 - 2 * u[:, 5])
    out[:, 6] = 2 * TWO_PI * u[:, 6]
    out[:, 7] = SQRT3 * np.pi * u[:, 7]
    return out


def _draw_su2(rng, n):
    u = rng.random((n, 3))
    return np.column_stack([TWO_PI * u[:, 0], np.arccos(1 - 2 * u[:, 1]), 2 * TWO_PI * u[:, 2]])


def sample_haar_su3(count, seed):
    """``count`` Euler points distributed with the SU(3) Haar density.

    Returns an ``(count, 8)`` array with columns ordered as ``SU3_ANGLES``.
    Every factor of the density is separable, so each angle is drawn by
    inverting its one-dimensional CDF.
    """
    if count < 1:
        raise ValueError("count must be positive")
    return np.concatenate([_draw_su3(rng, n) for rng, n in chunk_generators(seed, count)])


def sample_haar_su2(count, seed):
    if count < 1:
        raise ValueError("count must be positive")
    return np.concatenate([_draw_su2(rng, n) for rng, n in chunk_generators(seed, count)])


_SU3_FACTORS = (
    ("alpha", _diag3),
    ("beta", _rot2),
    ("gamma", _diag3),
    ("theta", _rot5),
    ("a", _diag3),
    ("b", _rot2),
    ("c", _diag3),
    ("phi", _diag8),
)


def haar_conjugation_average(x, nodes=32):
    """E[U x U†] over Haar-random U ∈ SU(3), factor by factor.

    The Euler-chart Haar density is a product of one-dimensional densities, so
    the average is a nest of 1-D Gauss-Legendre averages, innermost factor
    first.  Covers the full group, unlike the reduced coset charts.
    """
    out = np.asarray(x, dtype=complex)
    for name, factor in reversed(_SU3_FACTORS):
        lo, hi = SU3_RANGES[name]
        t, w = gauss_legendre(nodes, lo, hi)
        w = w * _FACTORS.get(name, _one)(t)
        w = w / w.sum()
        f = factor(t)
        out = np.einsum("k,kij,jl,kml->im", w, f, out, f.conj())
    return out
