"""Density matrices in Bloch form and the ordered qutrit eigenvalue simplex."""
from dataclasses import dataclass

import numpy as np

from .liealg import TOL, expand, generate_basis, reconstruct

__all__ = [
    "PSD_TOL",
    "NotAStateError",
    "SimplexDomainError",
    "BlochState",
    "SimplexPoint",
    "bloch_scale",
    "density_from_bloch",
    "bloch_from_density",
    "qutrit_diagonal_state",
    "simplex_from_xi",
    "simplex_from_r",
    "diagonalize",
    "in_simplex",
]

PSD_TOL = 1e-12
SQRT3 = np.sqrt(3.0)


class NotAStateError(ValueError):
    """Raised when a matrix is not a valid density matrix."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class SimplexDomainError(ValueError):
    pass


def bloch_scale(dim):
    """Prefactor sqrt((N-1)/2N) multiplying (ξ, λ) in the Bloch expansion."""
    return np.sqrt((dim - 1) / (2.0 * dim))


@dataclass(frozen=True)
class BlochState:
    """State of an N-level system given by its (N²-1)-dimensional Bloch vector.

    Positivity is checked at construction.
    """

    dim: int
    bloch: np.ndarray

    def __post_init__(self):
        vec = np.array(self.bloch, dtype=float).reshape(-1)
        if vec.size != self.dim**2 - 1:
            raise ValueError(
                f"Bloch vector for N={self.dim} needs {self.dim**2 - 1} components, got {vec.size}"
            )
        vec.setflags(write=False)
        object.__setattr__(self, "bloch", vec)
        density_from_bloch(self)

    @property
    def matrix(self):
        return density_from_bloch(self)

    @classmethod
    def from_matrix(cls, rho):
        return bloch_from_density(rho)

    def spectrum(self):
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]


def _assemble(dim, bloch):
    basis = generate_basis(dim)
    return np.eye(dim) / dim + bloch_scale(dim) * reconstruct(bloch, basis)


def density_from_bloch(state):
    """ϱ = I/N + sqrt((N-1)/2N) (ξ, λ).

    Raises
    ------
    NotAStateError
        If ϱ has an eigenvalue below ``-PSD_TOL``.
    """
    rho = _assemble(state.dim, state.bloch)
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -PSD_TOL:
        raise NotAStateError(
            f"Bloch vector does not describe a state (eigenvalue {lowest:.3e})", lowest
        )
    return rho


def bloch_from_density(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > TOL * 1e3:
        raise NotAStateError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > 1e-10:
        raise NotAStateError(f"density matrix trace is {tr.real:.12g}, expected 1")
    dim = rho.shape[0]
    coeffs = expand(rho, generate_basis(dim)) / bloch_scale(dim)
    return BlochState(dim, coeffs)


def qutrit_diagonal_state(xi3, xi8):
    """Diagonal qutrit state with only ξ₃, ξ₈ nonzero."""
    vec = np.zeros(8)
    vec[2] = xi3
    vec[7] = xi8
    return BlochState(3, vec)


def in_simplex(xi3, xi8, tol=1e-12):
    xi3 = np.asarray(xi3, dtype=float)
    xi8 = np.asarray(xi8, dtype=float)
    return (xi3 >= -tol) & (xi3 <= SQRT3 / 2 + tol) & (xi8 <= 0.5 + tol) & (xi3 / SQRT3 <= xi8 + tol)


@dataclass(frozen=True)
class SimplexPoint:
    """Ordered qutrit spectrum r₁ ≥ r₂ ≥ r₃ with the matching (ξ₃, ξ₈)."""

    r1: float
    r2: float
    r3: float
    xi3: float
    xi8: float

    @property
    def r(self):
        return np.array([self.r1, self.r2, self.r3])

    @property
    def xi(self):
        return self.xi3, self.xi8


def simplex_from_xi(xi3, xi8, tol=1e-12):
    """Eigenvalues of the diagonal qutrit state with invariants (ξ₃, ξ₈)."""
    if not in_simplex(xi3, xi8, tol):
        raise SimplexDomainError(f"(xi3, xi8) = ({xi3}, {xi8}) is outside the ordered simplex")
    r1 = 1 / 3 + xi3 / SQRT3 + xi8 / 3
    r2 = 1 / 3 - xi3 / SQRT3 + xi8 / 3
    r3 = 1 / 3 - 2 * xi8 / 3
    return SimplexPoint(float(r1), float(r2), float(r3), float(xi3), float(xi8))


def simplex_from_r(r, tol=1e-12):
    """Inverse of :func:`simplex_from_xi` for a descending qutrit spectrum."""
    r1, r2, r3 = (float(x) for x in r)
    if abs(r1 + r2 + r3 - 1) > 1e-10 or not (r1 + tol >= r2 >= r3 - tol) or r3 < -tol:
        raise SimplexDomainError(f"{r} is not an ordered probability vector")
    xi3 = SQRT3 * (r1 - r2) / 2
    xi8 = (1 - 3 * r3) / 2
    return SimplexPoint(r1, r2, r3, xi3, xi8)


def diagonalize(rho):
    """Descending spectrum of ``rho`` and a unitary ``U`` with ``U rho U†`` diagonal.

    For qutrits the spectrum is returned as a :class:`SimplexPoint`, otherwise as
    a descending array.  ``U`` has unit determinant.
    """
    if isinstance(rho, BlochState):
        rho = rho.matrix
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh(rho)
    order = np.argsort(w)[::-1]
    w = w[order]
    v = v[:, order]
    v = v / np.linalg.det(v) ** (1 / v.shape[0])
    u = v.conj().T
    spec = simplex_from_r(np.clip(w, 0.0, None) / np.clip(w, 0.0, None).sum()) if rho.shape[0] == 3 else w
    return spec, u
