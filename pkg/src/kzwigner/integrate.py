"""Phase-space integrals of |W| for the negativity indicator.

Diagonal states are integrated on the Euler-angle chart of the kernel's
stratum.  At fixed values of the other active angles the Wigner function of a
diagonal state is a sinusoid in β, ``W = C0 + C1 cos β + C2 sin β``, so the
β integral of ``|W| sin β`` is evaluated exactly between its sign changes and
the remaining angles use tensor Gauss-Legendre nodes.  ``scheme="tensor"``
instead puts Gauss-Legendre nodes on β too (kinked integrand, slower
convergence) and exists for comparison.

On the five-angle chart W depends on γ and a only through γ + a, so that pair
collapses to one axis.  Non-diagonal states and N > 3 use Monte-Carlo over the
full group.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from . import backend as _backend
from ._fallback import line_coefficients
from .haar import (
    SU2_RANGES,
    SU3_RANGES,
    TWO_PI,
    chunk_generators,
    gauss_legendre,
    phase_measure,
    su2_batch,
    su3_batch,
    _draw_su2,
    _draw_su3,
)
from .swkernel import STRATUM_GENERIC, STRATUM_QUBIT, STRATUM_ZETAPI3
from .wigner import wigner_batch

__all__ = [
    "IntegratorConfig",
    "default_nodes",
    "max_nodes",
    "chart_spectrum",
    "abs_integral_fixed",
    "abs_integral_quadrature",
    "abs_integral_mc",
    "QuadratureEstimate",
]

METHODS = ("quadrature", "mc")
SCHEMES = ("split", "tensor")


@dataclass(frozen=True)
class IntegratorConfig:
    """Numerical settings shared by every |W| integral.

    ``nodes=None`` picks :func:`default_nodes` for the chart; the error
    estimate compares against half that many nodes.  ``tolerance`` is the largest
    acceptable error estimate; results above it are flagged unconverged.
    """

    method: str = "quadrature"
    nodes: int | None = None
    samples: int = 100_000
    seed: int = 0
    tolerance: float = 1e-4
    workers: int = 1
    backend: str = "auto"
    scheme: str = "split"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.nodes is not None and self.nodes < 4:
            raise ValueError("nodes must be at least 4 (the error estimate halves it)")
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")


def default_nodes(stratum):
    """Starting Gauss-Legendre nodes per angle.

    The kink of |W| off the β direction limits Gauss-Legendre to algebraic
    convergence; at 48 nodes |I(48) - I(24)| reaches 2e-4 near the edges of
    the simplex, at 128 it stays below about 3e-5.
    """
    return 128


def max_nodes(stratum):
    """Refinement cap: the five-angle chart costs n³ line integrals, the others n²."""
    return 256 if stratum == STRATUM_GENERIC else 512


def chart_spectrum(stratum, pis):
    """Kernel eigenvalues arranged for the Euler chart of ``stratum``.

    The three-angle charts (β, θ, b) describe cosets whose isolated eigenvalue
    sits in the third Cartan slot.  The π₂ = π₃ kernel is therefore moved to
    the Weyl-equivalent ordering (π₂, π₃, π₁); right multiplication by a
    permutation preserves the Haar measure, so ∫|W| is unchanged.
    """
    pis = np.asarray(pis, dtype=float)
    if stratum == STRATUM_ZETAPI3:
        return pis[[1, 2, 0]]
    return pis


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    error_estimate: float
    nodes: int


def _axes(measure, nodes):
    """Per-angle (nodes, weights·density factor); β is handled by the line integral."""
    table = SU2_RANGES if measure.dim == 2 else SU3_RANGES
    out = {}
    for name in measure.active:
        if name == "beta":
            continue
        lo, hi = table[name]
        x, w = gauss_legendre(nodes, lo, hi)
        out[name] = (x, w * measure.factor(name)(x))
    return out


def _line_values(c0, c1, c2, scheme, beta_rule, kern):
    if scheme == "split":
        return kern.abs_line_integral(c0, c1, c2)
    bx, bw = beta_rule
    vals = c0[..., None] + c1[..., None] * np.cos(bx) + c2[..., None] * np.sin(bx)
    return np.abs(vals) @ (bw * np.sin(bx))


def _qubit_sum(r, pis, measure, nodes, scheme, kern):
    ax, aw = _axes(measure, nodes)["alpha"]
    c0 = 0.5 * (r[0] + r[1]) * (pis[0] + pis[1])
    c1 = 0.5 * (r[0] - r[1]) * (pis[0] - pis[1])
    line = _line_values(np.array([c0]), np.array([c1]), np.array([0.0]), scheme,
                        gauss_legendre(nodes, 0.0, np.pi), kern)[0]
    return float(np.sum(aw)) * float(line)


def _qutrit_sum(r, pis, measure, nodes, cfg, kern):
    axes = _axes(measure, nodes)
    unit = (np.zeros(1), np.ones(1))
    if "a" in axes:
        # For diagonal states W depends on γ and a only through s = γ + a, with
        # period 2π in s, so the rectangle integral is 4π ∫_0^{2π} f(s) ds.
        sx, sw = gauss_legendre(nodes, 0.0, TWO_PI)
        axes["gamma"] = (sx, 2 * TWO_PI * sw)
        axes["a"] = unit
    (gx, gw) = axes.get("gamma", unit)
    (tx, tw) = axes["theta"]
    (ax, aw) = axes.get("a", unit)
    (bx, bw) = axes.get("b", unit)
    r = np.asarray(r, dtype=float)
    pis = np.asarray(pis, dtype=float)

    if cfg.scheme == "split":
        def task(k):
            return kern.qutrit_grid_sum(r, pis, gx, gw, tx, tw, ax, aw, bx, bw, k, k + 1)
    else:
        beta_rule = gauss_legendre(nodes, 0.0, np.pi)
        wgab = gw[:, None, None] * aw[None, :, None] * bw[None, None, :]

        def task(k):
            c = line_coefficients(r, pis, gx[:, None, None], tx[k], ax[None, :, None], bx[None, None, :])
            return tw[k] * float(np.sum(wgab * _line_values(*c, "tensor", beta_rule, kern)))

    # One task per θ node; partial sums are reduced in θ order whatever the pool size.
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(task, range(len(tx))))
    else:
        parts = [task(k) for k in range(len(tx))]
    return float(np.sum(parts))


def abs_integral_fixed(r, pis, stratum, nodes, cfg=None):
    """∫|W| dΩ for a diagonal state with descending spectrum ``r`` at fixed resolution.

    ``pis`` is the kernel spectrum in descending order; the chart ordering is
    applied here.
    """
    cfg = cfg or IntegratorConfig()
    kern = _backend.get(cfg.backend)
    measure = phase_measure(stratum)
    pis = chart_spectrum(stratum, pis)
    if stratum == STRATUM_QUBIT:
        raw = _qubit_sum(r, pis, measure, nodes, cfg.scheme, kern)
    else:
        raw = _qutrit_sum(r, pis, measure, nodes, cfg, kern)
    return measure.normalization * raw


def abs_integral_quadrature(r, pis, stratum, cfg=None):
    """∫|W| dΩ with a grid-halving error estimate ``|I(n) - I(n/2)|``.

    With ``cfg.nodes`` unset the grid doubles from :func:`default_nodes`
    until the estimate meets ``cfg.tolerance`` or :func:`max_nodes` is hit.
    States on the r₁ = r₂ edge need this: W is then constant along β and the
    kink lies entirely across the Gauss-Legendre directions.
    """
    cfg = cfg or IntegratorConfig()
    n = cfg.nodes or default_nodes(stratum)
    fine = abs_integral_fixed(r, pis, stratum, n, cfg)
    coarse = abs_integral_fixed(r, pis, stratum, n // 2, cfg)
    while cfg.nodes is None and abs(fine - coarse) > cfg.tolerance and 2 * n <= max_nodes(stratum):
        n *= 2
        coarse, fine = fine, abs_integral_fixed(r, pis, stratum, n, cfg)
    return QuadratureEstimate(fine, abs(fine - coarse), n)


def _haar_unitaries(dim, rng, n):
    if dim == 2:
        return su2_batch(_draw_su2(rng, n))
    if dim == 3:
        return su3_batch(_draw_su3(rng, n))
    return unitary_group.rvs(dim, size=n, random_state=rng).reshape(n, dim, dim)


def abs_integral_mc(rho, pis, cfg=None):
    """Monte-Carlo ∫|W| dΩ over the full group with total mass N.

    ``rho`` may be any density matrix; ``pis`` is the kernel spectrum in
    Cartan-slot order.  Returns ``(value, standard_error)``.
    """
    cfg = cfg or IntegratorConfig(method="mc")
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    total = 0.0
    total_sq = 0.0
    for rng, n in chunk_generators(cfg.seed, cfg.samples):
        w = np.abs(wigner_batch(rho, pis, _haar_unitaries(dim, rng, n)))
        total += float(np.sum(w))
        total_sq += float(np.sum(w * w))
    count = cfg.samples
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.0) * count / (count - 1)
    return dim * mean, dim * np.sqrt(var / count)
