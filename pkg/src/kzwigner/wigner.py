"""Wigner functions W(Ω) = tr(ϱ Δ(Ω)) on SU(N) phase spaces."""
import numpy as np

from .liealg import DimensionMismatchError, cartan_indices, generate_basis, is_special_unitary
from .states import BlochState
from .swkernel import kernel_matrix

__all__ = [
    "n_vectors",
    "wigner_value",
    "wigner_value_matrix",
    "wigner_batch",
    "wigner_bounds",
]


def n_vectors(u, dim):
    """Rows ``n^(s)_μ = tr(U λ_s U† λ_μ) / 2`` for each Cartan index s.

    Returns an ``(N-1, N²-1)`` array; its rows are orthonormal.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise DimensionMismatchError(f"unitary of shape {u.shape} for N={dim}")
    if not is_special_unitary(u):
        raise ValueError("n_vectors needs a special unitary matrix")
    basis = generate_basis(dim)
    rotated = np.array([u @ basis[s] @ u.conj().T for s in cartan_indices(dim)])
    return np.einsum("sij,mji->sm", rotated, basis.elements).real / 2


def _check(state, m):
    if state.dim != m.dim:
        raise DimensionMismatchError(f"state N={state.dim} with kernel N={m.dim}")


def wigner_value(state, m, u):
    """Bloch-form value ``(1 + (N²-1)/sqrt(N+1) (ξ, n)) / N``."""
    _check(state, m)
    n = np.asarray(m.mu) @ n_vectors(u, m.dim)
    dim = m.dim
    return float((1 + (dim**2 - 1) / np.sqrt(dim + 1) * np.dot(state.bloch, n)) / dim)


def wigner_value_matrix(state, m, u):
    """Matrix-form value ``tr(ϱ Δ)``; kept as the oracle for the Bloch form."""
    _check(state, m)
    rho = state.matrix if isinstance(state, BlochState) else np.asarray(state)
    return float(np.trace(rho @ kernel_matrix(m, u)).real)


def wigner_batch(rho, pis, unitaries):
    """W for a stack of unitaries: ``Σ_ij ϱ_ij (U Π U†)_ji`` vectorized.

    ``pis`` are the kernel eigenvalues in Cartan-slot order.
    """
    u = np.asarray(unitaries)
    kern = np.einsum("mij,j,mkj->mik", u, np.asarray(pis, dtype=float), u.conj())
    return np.einsum("ij,mji->m", np.asarray(rho), kern).real


def wigner_bounds(state_spectrum, kernel_spectrum):
    """Attainable bounds ``(Σ π_i r_{N-i+1}, Σ π_i r_i)`` on W.

    Both spectra must be sorted in decreasing order.
    """
    r = np.asarray(state_spectrum, dtype=float)
    pis = getattr(kernel_spectrum, "pis", kernel_spectrum)
    pis = np.asarray(pis, dtype=float)
    if r.shape != pis.shape:
        raise DimensionMismatchError("state and kernel spectra differ in length")
    if np.any(np.diff(r) > 1e-12) or np.any(np.diff(pis) > 1e-12):
        raise ValueError("spectra must be in decreasing order")
    if abs(r.sum() - 1) > 1e-10:
        raise ValueError("state spectrum must sum to 1")
    return float(np.dot(pis, r[::-1])), float(np.dot(pis, r))
