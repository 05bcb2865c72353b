"""Negativity (KZ) indicators, their closed forms and orbit-space probabilities.

The qutrit orbit space is the ordered simplex △OAC in the (ξ₃, ξ₈) plane with
O = (0, 0), A = (0, 1/2), C = (√3/2, 1/2).  The zero-negativity regions of the
two degenerate kernels are the triangles OAP (ζ = 0) and OSQ (ζ = π/3), with

    P = (√3/8, 1/8),  S = (0, 1/4),  Q = (√3/4, 1/4),  R = (1/√3, 1/2).

In eigenvalue terms W can only go negative for ζ = 0 when r₁ > 1/2 (line AP)
and for ζ = π/3 when r₃ < 1/6 (line SQ); the ζ = π/3 formula switches branch
at r₂ = 1/6 (line QR).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .integrate import IntegratorConfig, abs_integral_mc, abs_integral_quadrature
from .states import BlochState, SimplexDomainError, diagonalize, in_simplex
from .swkernel import (
    STRATUM_ZETA0,
    STRATUM_ZETAPI3,
    KernelModuli,
    spectrum_from_moduli,
    stratum_of,
)

__all__ = [
    "IndicatorResult",
    "IntegratorConfig",
    "ConvergenceError",
    "VERTICES",
    "REGIONS",
    "kz_numeric",
    "kz_closed",
    "kz_closed_qubit",
    "kz_closed_qutrit_zeta0",
    "kz_closed_qutrit_zetapi3",
    "classify_region",
    "classify_regions",
    "region_polygon",
    "euclidean_positive_fraction",
    "hs_density",
    "hs_orbit_integral",
    "global_indicator",
    "parse_degenerate_zeta",
]

SQRT3 = np.sqrt(3.0)
SINGULAR_TOL = 1e-10
INWARD_STEP = 1e-6

VERTICES = {
    "O": (0.0, 0.0),
    "A": (0.0, 0.5),
    "C": (SQRT3 / 2, 0.5),
    "P": (SQRT3 / 8, 0.125),
    "S": (0.0, 0.25),
    "Q": (SQRT3 / 4, 0.25),
    "R": (1 / SQRT3, 0.5),
}
# The same vertices as exact eigenvalue pairs (r₁, r₂).
_R_VERTICES = {
    "O": (Fraction(1, 3), Fraction(1, 3)),
    "A": (Fraction(1, 2), Fraction(1, 2)),
    "C": (Fraction(1), Fraction(0)),
    "P": (Fraction(1, 2), Fraction(1, 4)),
    "S": (Fraction(5, 12), Fraction(5, 12)),
    "Q": (Fraction(2, 3), Fraction(1, 6)),
    "R": (Fraction(5, 6), Fraction(1, 6)),
}
REGIONS = {
    "OAC": "OCA",
    "OAP": "OPA",
    "APC": "APC",
    "OSQ": "OQS",
    "ARQS": "ASQR",
    "CQR": "CRQ",
}
ZERO_REGION = {0: "OAP", 1: "OSQ"}
_ZETA_REGIONS = {0: ("OAP", "APC"), 1: ("OSQ", "ARQS", "CQR")}
_CENTROID = (SQRT3 / 6, 1 / 3)


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class IndicatorResult:
    """Value of an indicator together with how it was obtained.

    ``flags`` carries qualifiers such as ``"boundary-limit"`` when a closed
    form was evaluated next to a removable singularity.
    """

    value: float
    method: str
    error_estimate: float
    stratum: str
    converged: bool = True
    flags: tuple = ()


def parse_degenerate_zeta(zeta):
    """Map ζ ∈ {0, π/3} to 0 / 1; anything else raises."""
    if isinstance(zeta, str):
        zeta = {"0": 0.0, "pi/3": np.pi / 3}.get(zeta.strip().lower(), None)
        if zeta is None:
            raise ValueError("zeta must be '0' or 'pi/3'")
    if abs(zeta) < 1e-12:
        return 0
    if abs(zeta - np.pi / 3) < 1e-12:
        return 1
    raise ValueError(f"closed forms exist only for zeta in {{0, pi/3}}, got {zeta}")


# -- closed forms -------------------------------------------------------------

def kz_closed_qubit(r):
    """Qubit indicator as a function of the Bloch radius ``r``."""
    if not 0 <= r <= 1:
        raise ValueError(f"Bloch radius {r} outside [0, 1]")
    if r <= 1 / SQRT3:
        return 0.0
    return float(SQRT3 / 2 * (r + 1 / (3 * r)) - 1)


def _require_simplex(xi3, xi8):
    if not in_simplex(xi3, xi8):
        raise SimplexDomainError(f"(xi3, xi8) = ({xi3}, {xi8}) is outside the ordered simplex")


def _inward(xi3, xi8):
    dx, dy = _CENTROID[0] - xi3, _CENTROID[1] - xi8
    norm = np.hypot(dx, dy)
    return xi3 + INWARD_STEP * dx / norm, xi8 + INWARD_STEP * dy / norm


def _branch_apc(xi3, xi8):
    return (2 * (SQRT3 * xi3 + xi8) - 1) ** 3 / (36 * xi3 * (xi3 + SQRT3 * xi8))


def _branch_arqs(xi3, xi8):
    return (1 - 4 * xi8) ** 3 / (18 * (xi3**2 - 3 * xi8**2))


def _branch_cqr(xi3, xi8):
    return (2 * (SQRT3 * xi3 + xi8) + 1) ** 3 / (36 * xi3 * (xi3 + SQRT3 * xi8)) - 2


_DENOMINATORS = {
    "APC": lambda x, y: x * (x + SQRT3 * y),
    "ARQS": lambda x, y: x**2 - 3 * y**2,
    "CQR": lambda x, y: x * (x + SQRT3 * y),
}
_BRANCHES = {"APC": _branch_apc, "ARQS": _branch_arqs, "CQR": _branch_cqr}


def _closed(xi3, xi8, which):
    _require_simplex(xi3, xi8)
    region = classify_region(xi3, xi8, (0.0, np.pi / 3)[which])
    if region == ZERO_REGION[which]:
        return 0.0, ()
    if abs(_DENOMINATORS[region](xi3, xi8)) < SINGULAR_TOL:
        return float(_BRANCHES[region](*_inward(xi3, xi8))), ("boundary-limit",)
    return float(_BRANCHES[region](xi3, xi8)), ()


def kz_closed_qutrit_zeta0(xi3, xi8):
    """Indicator of the ζ = 0 (π₁ = π₂) kernel on the ordered simplex."""
    return _closed(xi3, xi8, 0)[0]


def kz_closed_qutrit_zetapi3(xi3, xi8):
    """Indicator of the ζ = π/3 (π₂ = π₃) kernel on the ordered simplex."""
    return _closed(xi3, xi8, 1)[0]


def kz_closed(xi3, xi8, zeta):
    which = parse_degenerate_zeta(zeta)
    value, flags = _closed(xi3, xi8, which)
    stratum = (STRATUM_ZETA0, STRATUM_ZETAPI3)[which]
    return IndicatorResult(value, "closed-form", 0.0, stratum, True, flags)


# -- regions ------------------------------------------------------------------

def classify_regions(xi3, xi8, zeta):
    """Vectorized :func:`classify_region`; returns an array of labels."""
    which = parse_degenerate_zeta(zeta)
    xi3 = np.asarray(xi3, dtype=float)
    xi8 = np.asarray(xi8, dtype=float)
    if which == 0:
        neg = xi3 > (1 - 2 * xi8) / (2 * SQRT3)
        return np.where(neg, "APC", "OAP")
    neg = xi8 > 0.25
    corner = xi3 > (1 + 2 * xi8) / (2 * SQRT3)
    return np.where(~neg, "OSQ", np.where(corner, "CQR", "ARQS"))


def classify_region(xi3, xi8, zeta):
    """Region of the ordered simplex containing (ξ₃, ξ₈) for a degenerate kernel.

    Points on the boundary of the zero region belong to the zero region.
    """
    _require_simplex(xi3, xi8)
    return str(classify_regions(xi3, xi8, zeta))


def region_polygon(region, exact=False):
    """Vertex list of ``region``; ``exact`` gives Fraction eigenvalue pairs (r₁, r₂)."""
    table = _R_VERTICES if exact else VERTICES
    return [table[v] for v in REGIONS[region]]


def _triangles(poly):
    return [(poly[0], poly[i], poly[i + 1]) for i in range(1, len(poly) - 1)]


def _shoelace(poly):
    area = 0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        area += x0 * y1 - x1 * y0
    return abs(area) / 2


def euclidean_positive_fraction(zeta):
    """Area of the zero-negativity region over the area of the simplex.

    Uses exact rational vertex coordinates in the eigenvalue plane, where area
    ratios equal those in the (ξ₃, ξ₈) plane.
    """
    which = parse_degenerate_zeta(zeta)
    ratio = _shoelace(region_polygon(ZERO_REGION[which], True)) / _shoelace(region_polygon("OAC", True))
    return float(ratio)


def hs_density(xi3, xi8):
    """Hilbert-Schmidt orbit-space density (8 / 9√3) ξ₃² (ξ₃²/3 - ξ₈²)²."""
    return 8 / (9 * SQRT3) * xi3**2 * (xi3**2 / 3 - xi8**2) ** 2


def _triangle_quad(f, tri, epsrel):
    (x0, y0), (x1, y1), (x2, y2) = tri
    jac = abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))

    def g(v, u):
        return f(x0 + u * (x1 - x0) + v * (x2 - x0), y0 + u * (y1 - y0) + v * (y2 - y0))

    val, _ = integrate.dblquad(g, 0.0, 1.0, 0.0, lambda u: 1.0 - u, epsabs=0.0, epsrel=epsrel)
    return jac * val


def hs_orbit_integral(region="OAC", epsrel=1e-12):
    """∫ w₃ over a named region (``"OAC"`` is the whole simplex)."""
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}; expected one of {sorted(REGIONS)}")
    return float(sum(_triangle_quad(hs_density, t, epsrel) for t in _triangles(region_polygon(region))))


@lru_cache(maxsize=None)
def _hs_exact(region):
    """Exact ∫ Π(rᵢ - rⱼ)² dr₁ dr₂ over ``region`` (Jacobian to ξ omitted)."""
    import sympy as sp

    u, v = sp.symbols("u v")
    total = sp.Integer(0)
    for (a, b, c) in _triangles(region_polygon(region, True)):
        a, b, c = ([sp.Rational(x.numerator, x.denominator) for x in p] for p in (a, b, c))
        r1 = a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0])
        r2 = a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1])
        r3 = 1 - r1 - r2
        jac = abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
        poly = sp.expand(((r1 - r2) * (r2 - r3) * (r1 - r3)) ** 2)
        total += jac * sp.integrate(sp.integrate(poly, (v, 0, 1 - u)), (u, 0, 1))
    return Fraction(int(sp.numer(total)), int(sp.denom(total)))


def _sample_simplex(n, seed, measure, block=1 << 20):
    """Rejection sampling on the bounding box of △OAC; returns (ξ₃, ξ₈) arrays."""
    hs_max = 1.0 / 144.0  # max of ξ₃²(ξ₃²/3 - ξ₈²)² on △OAC, attained at (1/2, 1/2)
    xs, ys, got = [], [], 0
    seeds = np.random.SeedSequence(seed)
    while got < n:
        rng = np.random.Generator(np.random.Philox(seeds.spawn(1)[0]))
        x = rng.random(block) * SQRT3 / 2
        y = rng.random(block) * 0.5
        keep = x / SQRT3 <= y
        if measure == "hilbert-schmidt":
            keep &= rng.random(block) * hs_max <= x**2 * (x**2 / 3 - y**2) ** 2
        xs.append(x[keep])
        ys.append(y[keep])
        got += int(keep.sum())
    return np.concatenate(xs)[:n], np.concatenate(ys)[:n]


def global_indicator(zeta, measure="euclidean", method="exact-region", samples=1_000_000, seed=0):
    """Probability Q that a random qutrit state has a nonnegative Wigner function.

    ``measure`` is ``"euclidean"`` (uniform eigenvalues) or
    ``"hilbert-schmidt"``; ``method`` is ``"exact-region"`` or ``"sampling"``.
    Q = 1 - P(δ > 0).
    """
    which = parse_degenerate_zeta(zeta)
    measure = {"hs": "hilbert-schmidt"}.get(measure, measure)
    if measure not in ("euclidean", "hilbert-schmidt"):
        raise ValueError(f"unknown measure {measure!r}")
    stratum = (STRATUM_ZETA0, STRATUM_ZETAPI3)[which]
    zero = ZERO_REGION[which]
    if method == "exact-region":
        if measure == "euclidean":
            value = euclidean_positive_fraction(zeta)
        else:
            value = float(_hs_exact(zero) / _hs_exact("OAC"))
        return IndicatorResult(value, "exact-region", 0.0, stratum)
    if method != "sampling":
        raise ValueError(f"unknown method {method!r}")
    x, y = _sample_simplex(samples, seed, measure)
    negative = classify_regions(x, y, zeta) != zero
    q = 1.0 - float(negative.mean())
    return IndicatorResult(q, "sampling", float(np.sqrt(q * (1 - q) / samples)), stratum)


# -- numeric indicator --------------------------------------------------------

def _as_state(state):
    if isinstance(state, BlochState):
        return state
    return BlochState.from_matrix(state)


def kz_numeric(state, m, cfg=None):
    """δ = ∫|W| dΩ - 1 by phase-space integration.

    ``cfg.method="quadrature"`` diagonalizes the state (the indicator depends
    only on its spectrum) and integrates on the chart of the kernel's stratum;
    ``"mc"`` samples the full group with the state as given.
    """
    cfg = cfg or IntegratorConfig()
    state = _as_state(state)
    if state.dim != m.dim:
        raise ValueError(f"state N={state.dim} with kernel N={m.dim}")
    spectrum = spectrum_from_moduli(m)
    stratum = stratum_of(spectrum)
    if cfg.method == "mc":
        value, err = abs_integral_mc(state.matrix, spectrum.pis, cfg)
        method = "monte-carlo"
    else:
        if state.dim not in (2, 3):
            raise ValueError("quadrature is available for N = 2, 3; use method='mc'")
        spec, _ = diagonalize(state.matrix)
        r = spec.r if state.dim == 3 else np.clip(spec, 0, None)
        est = abs_integral_quadrature(r, spectrum.pis, stratum, cfg)
        value, err = est.value, est.error_estimate
        method = "quadrature"
    label = stratum if isinstance(stratum, str) else str(stratum)
    return IndicatorResult(value - 1.0, method, float(err), label, bool(err <= cfg.tolerance))
