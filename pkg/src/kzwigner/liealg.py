"""Orthonormal Hermitian bases of su(N) and small dense matrix helpers.

The basis follows the Gell-Mann ordering: for every level ``k = 2..N`` the
symmetric and antisymmetric generators coupling ``j < k`` to ``k`` come first,
followed by the diagonal generator, which therefore sits at (1-based) index
``k**2 - 1``.  For ``N = 2`` this is the Pauli set, for ``N = 3`` the standard
Gell-Mann matrices with the Cartan elements at positions 3 and 8.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "TOL",
    "InvalidDimensionError",
    "DimensionMismatchError",
    "GellMannBasis",
    "generate_basis",
    "cartan_indices",
    "commutes",
    "is_hermitian",
    "is_special_unitary",
    "expi",
    "expand",
    "reconstruct",
]

TOL = 1e-12


class InvalidDimensionError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GellMannBasis:
    """Ordered list of the ``N**2 - 1`` generators of su(N).

    ``elements[mu - 1]`` is the generator with the conventional 1-based index
    ``mu``.  The stacked array is read-only.
    """

    dim: int
    elements: np.ndarray

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, index):
        """1-based access, matching the physics labelling (``basis[3]`` is λ₃)."""
        if not 1 <= index <= len(self.elements):
            raise IndexError(f"generator index {index} outside 1..{len(self.elements)}")
        return self.elements[index - 1]

    def __iter__(self):
        return iter(self.elements)

    @property
    def cartan(self):
        return [self[i] for i in cartan_indices(self.dim)]


def cartan_indices(dim):
    """1-based positions of the diagonal generators, ``k**2 - 1`` for k=2..N."""
    return [k * k - 1 for k in range(2, dim + 1)]


@lru_cache(maxsize=None)
def _basis_array(dim):
    mats = []
    for k in range(1, dim):  # 0-based column index of the new level
        for j in range(k):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((dim, dim), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            mats.extend([sym, anti])
        diag = np.zeros(dim)
        diag[:k] = 1.0
        diag[k] = -k
        mats.append(np.diag(diag * np.sqrt(2.0 / (k * (k + 1)))).astype(complex))
    arr = np.array(mats)
    arr.setflags(write=False)
    return arr


def generate_basis(dim):
    """Return the generalized Gell-Mann basis of su(dim).

    Parameters
    ----------
    dim : int
        Hilbert space dimension, at least 2.

    Returns
    -------
    GellMannBasis
        ``dim**2 - 1`` traceless Hermitian matrices with
        ``tr(λ_μ λ_ν) = 2 δ_μν``.
    """
    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {dim!r}")
    return GellMannBasis(int(dim), _basis_array(int(dim)))


def _check_pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"incompatible operators {a.shape} and {b.shape}")
    return a, b


def commutes(a, b, tol=TOL):
    """True iff ``max|ab - ba| < tol``."""
    a, b = _check_pair(a, b)
    return bool(np.max(np.abs(a @ b - b @ a)) < tol)


def is_hermitian(m, tol=TOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_special_unitary(u, tol=1e-10):
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    eye = np.eye(u.shape[0])
    return bool(np.max(np.abs(u.conj().T @ u - eye)) <= tol and abs(np.linalg.det(u) - 1) <= tol)


def expi(h, t):
    """``exp(i t h)`` for Hermitian ``h`` via its eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def expand(m, basis):
    """Coefficients ``tr(m λ_μ) / 2`` of ``m`` over ``basis`` (real for Hermitian m)."""
    coeffs = np.einsum("ij,kji->k", np.asarray(m), basis.elements) / 2
    return coeffs.real


def reconstruct(coeffs, basis):
    """Inverse of :func:`expand` on traceless Hermitian matrices."""
    return np.tensordot(np.asarray(coeffs, dtype=float), basis.elements, axes=1)
