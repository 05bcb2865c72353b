"""Wigner functions of N-level systems from Stratonovich-Weyl kernels.

Modules
-------
liealg
    su(N) Hermitian bases and matrix helpers.
states
    Bloch-form density matrices and the ordered qutrit simplex.
swkernel
    Kernel moduli, spectra and degeneracy strata.
haar
    Euler charts of SU(2)/SU(3), Haar densities, phase-space measures.
wigner
    Wigner function evaluation and spectral bounds.
integrate
    Phase-space integrals of |W| by quadrature or Monte-Carlo.
indicators
    Negativity indicators, closed forms and global classicality.
cli, verify
    The ``kz`` command and its self-check table.
"""
from .backend import BACKEND
from .indicators import (
    IndicatorResult,
    IntegratorConfig,
    global_indicator,
    hs_orbit_integral,
    kz_closed,
    kz_closed_qubit,
    kz_closed_qutrit_zeta0,
    kz_closed_qutrit_zetapi3,
    kz_numeric,
)
from .states import BlochState, qutrit_diagonal_state
from .swkernel import KernelModuli

__version__ = "0.1.0"
