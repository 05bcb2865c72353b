"""Self-checks behind ``kz verify``.

Each check yields ``(name, observed, expected, tolerance, passed)`` with
``passed = |observed - expected| <= tolerance``.  The fast subset covers
structural identities; the full run adds integrations.
"""
import numpy as np

from .haar import HAAR_SU3_CONST, SU3_RANGES, _FACTORS, _one, haar_conjugation_average, phase_measure
from .indicators import (
    IntegratorConfig,
    global_indicator,
    hs_orbit_integral,
    kz_closed,
    kz_closed_qubit,
    kz_numeric,
)
from .liealg import generate_basis
from .states import BlochState, bloch_from_density, qutrit_diagonal_state
from .swkernel import KernelModuli, spectrum_from_moduli
from .wigner import wigner_value, wigner_value_matrix
from scipy import integrate
from scipy.stats import unitary_group

S3 = np.sqrt(3.0)


def _row(name, observed, expected, tol):
    return (name, float(observed), float(expected), float(tol), bool(abs(observed - expected) <= tol))


def _random_density(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _structural(rng):
    rows = []
    worst = 0.0
    for dim in range(2, 6):
        b = generate_basis(dim).elements
        gram = np.einsum("aij,bji->ab", b, b)
        worst = max(worst, np.max(np.abs(gram - 2 * np.eye(len(b)))))
    rows.append(_row("basis orthonormality N=2..5 (max dev)", worst, 0, 1e-12))

    zetas = np.linspace(0, np.pi / 3, 100)
    pis = np.array([spectrum_from_moduli(KernelModuli.qutrit(z)).pis for z in zetas])
    rows.append(_row("sum of kernel eigenvalues (max dev)", np.max(np.abs(pis.sum(1) - 1)), 0, 1e-12))
    rows.append(_row("sum of squared kernel eigenvalues (max dev)", np.max(np.abs((pis**2).sum(1) - 3)), 0, 1e-12))
    dev0 = np.max(np.abs(pis[0] - [1, 1, -1]))
    dev3 = np.max(np.abs(pis[-1] - np.array([5, -1, -1]) / 3))
    rows.append(_row("zeta=0 spectrum {1,1,-1} (max dev)", dev0, 0, 1e-12))
    rows.append(_row("zeta=pi/3 spectrum {5/3,-1/3,-1/3} (max dev)", dev3, 0, 1e-12))

    mass = HAAR_SU3_CONST
    for name, (lo, hi) in SU3_RANGES.items():
        f = _FACTORS.get(name, _one)
        mass *= integrate.quad(lambda x: float(f(np.float64(x))), lo, hi, epsabs=0, epsrel=1e-13)[0]
    rows.append(_row("SU(3) Haar mass", mass, 1, 1e-8))
    for stratum in ("(12)", "(123)", "(1|23)", "(12|3)"):
        m = phase_measure(stratum)
        rows.append(_row(f"phase-space volume {stratum}", m.total(), m.dim, 1e-8 * m.dim))

    worst = 0.0
    for _ in range(50):
        rho = _random_density(rng, 3)
        m = KernelModuli.qutrit(rng.uniform(0, np.pi / 3))
        u = unitary_group.rvs(3, random_state=rng)
        u = u / np.linalg.det(u) ** (1 / 3)
        st = bloch_from_density(rho)
        worst = max(worst, abs(wigner_value(st, m, u) - wigner_value_matrix(st, m, u)))
    rows.append(_row("Bloch vs matrix Wigner value (max dev)", worst, 0, 1e-12))

    rows.append(_row("closed qubit delta(r=1)", kz_closed_qubit(1.0), 2 / S3 - 1, 1e-12))
    rows.append(_row("closed delta zeta=0 at C", kz_closed(S3 / 2, 0.5, 0).value, 0.5, 1e-12))
    rows.append(_row("closed delta zeta=pi/3 at C", kz_closed(S3 / 2, 0.5, np.pi / 3).value, 17 / 54, 1e-12))
    for zeta, label in ((0.0, "0"), (np.pi / 3, "pi/3")):
        rows.append(_row(f"Q euclidean zeta={label}", global_indicator(zeta).value, 0.25, 0))
        rows.append(_row(f"Q hilbert-schmidt zeta={label}", global_indicator(zeta, "hs").value, 1 / 256, 0))
    for region, value in (("OAC", 1 / 10080), ("OAP", 1 / 2580480), ("OSQ", 1 / 2580480)):
        rows.append(_row(f"HS orbit volume {region}", hs_orbit_integral(region), value, 1e-9 * value))
    return rows


def _numeric(rng, seed):
    rows = []
    for zeta in (0.0, 0.5, np.pi / 3):
        avg = 3 * haar_conjugation_average(np.diag(spectrum_from_moduli(KernelModuli.qutrit(zeta)).pis))
        rows.append(_row(f"resolution of identity zeta={zeta:.4f} (max dev)", np.max(np.abs(avg - np.eye(3))), 0, 1e-8))

    worst = 0.0
    for r in np.linspace(0, 1, 11):
        num = kz_numeric(BlochState(2, [0, 0, r]), KernelModuli.qubit()).value
        worst = max(worst, abs(num - kz_closed_qubit(r)))
    rows.append(_row("qubit numeric vs closed (max dev)", worst, 0, 1e-6))

    pts = ((S3 / 2, 0.5), (0.3, 0.35), (0.1, 0.45), (S3 / 8, 0.3))
    for zeta, label in ((0.0, "0"), (np.pi / 3, "pi/3")):
        m = KernelModuli.qutrit(zeta)
        for x, y in pts:
            num = kz_numeric(qutrit_diagonal_state(x, y), m)
            rows.append(_row(f"numeric delta zeta={label} at ({x:.4f}, {y:.4f})", num.value,
                             kz_closed(x, y, zeta).value, max(1e-3, 3 * num.error_estimate)))

    res = kz_numeric(qutrit_diagonal_state(S3 / 2, 0.5), KernelModuli.qutrit(1e-4))
    rows.append(_row("generic zeta -> 0 limit at C", res.value, 0.5, 1e-3))
    rows.append(_row("generic zeta grid-halving error at C", res.error_estimate, 0, 1e-4))

    res = global_indicator(0.0, "euclidean", "sampling", samples=200_000, seed=seed)
    rows.append(_row("Q euclidean sampling zeta=0", res.value, 0.25, 3 * res.error_estimate))
    return rows


def run_checks(fast=False, seed=0):
    rng = np.random.default_rng(seed)
    rows = _structural(rng)
    if not fast:
        rows += _numeric(rng, seed)
    return rows
