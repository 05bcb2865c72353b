"""Stratonovich-Weyl kernels: moduli, spectra, matrices and degeneracy strata.

A kernel is ``Δ(Ω) = U (I + κ Σ_s μ_s λ_s) U† / N`` with the sum running over
the Cartan generators and ``κ = sqrt(N(N²-1)/2)``.  For qutrits the moduli are
``μ₃ = sin ζ``, ``μ₈ = cos ζ`` with ``ζ ∈ [0, π/3]``.

Stratum labels for qutrits follow the labelling used with the two closed-form
indicators: ``"(1|23)"`` is the ζ = 0 kernel (π₁ = π₂) and ``"(12|3)"`` the
ζ = π/3 kernel (π₂ = π₃).  This is the reverse of the usual convention of
putting the bar between *unequal* groups; it is kept so labels match the
published formulas they index.
"""
from dataclasses import dataclass, field

import numpy as np

from .liealg import (
    DimensionMismatchError,
    cartan_indices,
    generate_basis,
    is_special_unitary,
)

__all__ = [
    "ModuliError",
    "KernelModuli",
    "KernelSpectrum",
    "STRATUM_GENERIC",
    "STRATUM_ZETA0",
    "STRATUM_ZETAPI3",
    "STRATUM_QUBIT",
    "kappa",
    "spectrum_from_moduli",
    "kernel_matrix",
    "stratum_of",
    "multiplicities",
    "DEGENERACY_TOL",
]

DEGENERACY_TOL = 1e-9
STRATUM_GENERIC = "(123)"
STRATUM_ZETA0 = "(1|23)"
STRATUM_ZETAPI3 = "(12|3)"
STRATUM_QUBIT = "(12)"


class ModuliError(ValueError):
    pass


def kappa(dim):
    return np.sqrt(dim * (dim**2 - 1) / 2.0)


@dataclass(frozen=True)
class KernelModuli:
    """Point on the unit moduli sphere: coefficients of the N-1 Cartan generators."""

    dim: int
    mu: np.ndarray = field(repr=True)

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float).reshape(-1)
        if mu.size != self.dim - 1:
            raise ModuliError(f"N={self.dim} kernel needs {self.dim - 1} moduli, got {mu.size}")
        if abs(np.dot(mu, mu) - 1) > 1e-9:
            raise ModuliError(f"moduli {mu} are off the unit sphere")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def qubit(cls):
        return cls(2, [1.0])

    @classmethod
    def qutrit(cls, zeta):
        """Qutrit kernel with apex angle ``zeta`` in [0, π/3]."""
        if not -1e-12 <= zeta <= np.pi / 3 + 1e-12:
            raise ModuliError(f"zeta={zeta} outside [0, pi/3]")
        return cls(3, [np.sin(zeta), np.cos(zeta)])

    @property
    def zeta(self):
        if self.dim != 3:
            raise AttributeError("zeta is only defined for qutrit kernels")
        return float(np.arctan2(self.mu[0], self.mu[1]))


@dataclass(frozen=True)
class KernelSpectrum:
    pis: np.ndarray

    def __post_init__(self):
        pis = np.array(self.pis, dtype=float)
        pis.setflags(write=False)
        object.__setattr__(self, "pis", pis)

    @property
    def dim(self):
        return self.pis.size


def _cartan_diagonal(m):
    basis = generate_basis(m.dim)
    diag = np.zeros(m.dim)
    for coeff, idx in zip(m.mu, cartan_indices(m.dim)):
        diag += coeff * np.diag(basis[idx]).real
    return diag


def spectrum_from_moduli(m):
    """Kernel eigenvalues ``(1 + κ diag(Σ μ_s λ_s)) / N``.

    The eigenvalues are returned in Cartan-slot order, which is descending on
    the admissible moduli region; a non-descending result raises.
    """
    pis = (1 + kappa(m.dim) * _cartan_diagonal(m)) / m.dim
    if np.any(np.diff(pis) > 1e-12):
        raise ModuliError(f"moduli {m.mu} give a non-descending spectrum {pis}")
    return KernelSpectrum(pis)


def kernel_matrix(m, u):
    """Δ = U (I + κ Σ μ_s λ_s) U† / N."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (m.dim, m.dim):
        raise DimensionMismatchError(f"unitary of shape {u.shape} for N={m.dim}")
    if not is_special_unitary(u):
        raise ValueError("kernel_matrix needs a special unitary matrix")
    pis = (1 + kappa(m.dim) * _cartan_diagonal(m)) / m.dim
    return (u * pis) @ u.conj().T


def multiplicities(spectrum, tol=DEGENERACY_TOL):
    """Sizes of runs of equal (within ``tol``) consecutive eigenvalues."""
    pis = spectrum.pis if isinstance(spectrum, KernelSpectrum) else np.asarray(spectrum)
    counts = [1]
    for prev, cur in zip(pis[:-1], pis[1:]):
        if abs(prev - cur) <= tol:
            counts[-1] += 1
        else:
            counts.append(1)
    return tuple(counts)


def stratum_of(spectrum, tol=DEGENERACY_TOL):
    """Degeneracy stratum of a kernel spectrum.

    Qubits always give ``"(12)"`` (the spectrum is unique).  Qutrits give one
    of ``"(123)"``, ``"(1|23)"`` (π₁ = π₂) or ``"(12|3)"`` (π₂ = π₃).  Other
    dimensions return the multiplicity tuple.
    """
    k = multiplicities(spectrum, tol)
    n = sum(k)
    if n == 2:
        return STRATUM_QUBIT
    if n == 3:
        return {(1, 1, 1): STRATUM_GENERIC, (2, 1): STRATUM_ZETA0, (1, 2): STRATUM_ZETAPI3}[k]
    return k
