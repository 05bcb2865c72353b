import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from kzwigner.states import (
    BlochState,
    NotAStateError,
    SimplexDomainError,
    bloch_from_density,
    density_from_bloch,
    diagonalize,
    qutrit_diagonal_state,
    simplex_from_r,
    simplex_from_xi,
)
from oracles import char_poly_eigenvalues, random_density, random_su

S3 = np.sqrt(3)


def test_maximally_mixed():
    assert_allclose(density_from_bloch(BlochState(3, np.zeros(8))), np.eye(3) / 3, atol=1e-15)
    assert_allclose(bloch_from_density(np.eye(3) / 3).bloch, 0, atol=1e-15)


def test_qubit_pole():
    assert_allclose(BlochState(2, [0, 0, 1]).matrix, np.diag([1, 0]), atol=1e-15)
    sz = np.diag([1.0, -1.0])
    assert_allclose(bloch_from_density(0.5 * (np.eye(2) + sz)).bloch, [0, 0, 1], atol=1e-15)


def test_qutrit_vertex_c():
    rho = qutrit_diagonal_state(S3 / 2, 0.5).matrix
    assert_allclose(rho, np.diag([1, 0, 0]), atol=1e-15)
    xi = bloch_from_density(np.diag([1.0, 0, 0])).bloch
    expected = np.zeros(8)
    expected[2], expected[7] = S3 / 2, 0.5
    assert_allclose(xi, expected, atol=1e-15)


def test_not_a_state_reports_eigenvalue():
    with pytest.raises(NotAStateError) as err:
        BlochState(2, [0, 0, 1.5])
    assert err.value.min_eigenvalue == pytest.approx(-0.25)


def test_bad_trace_and_hermiticity():
    with pytest.raises(NotAStateError):
        bloch_from_density(np.eye(3) / 2)
    with pytest.raises(NotAStateError):
        bloch_from_density(np.array([[0.5, 0.1], [0.3, 0.5]]))


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_round_trip(rng, dim):
    for _ in range(20):
        rho = random_density(rng, dim, rank=rng.integers(1, dim + 1))
        assert np.max(np.abs(density_from_bloch(bloch_from_density(rho)) - rho)) <= 1e-12


@pytest.mark.parametrize(
    "xi, r",
    [((0, 0), (1 / 3, 1 / 3, 1 / 3)), ((S3 / 2, 0.5), (1, 0, 0)), ((0, 0.5), (0.5, 0.5, 0))],
)
def test_simplex_vertices(xi, r):
    p = simplex_from_xi(*xi)
    assert_allclose(p.r, r, atol=1e-15)


def test_simplex_outside():
    with pytest.raises(SimplexDomainError):
        simplex_from_xi(0.5, 0.1)
    with pytest.raises(SimplexDomainError):
        simplex_from_xi(0.0, 0.6)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1))
def test_simplex_ordering_and_round_trip(u, v):
    xi3 = u * S3 / 2
    xi8 = xi3 / S3 + v * (0.5 - xi3 / S3)
    p = simplex_from_xi(xi3, xi8)
    eps = 1e-15
    assert p.r1 + eps >= p.r2 and p.r2 + eps >= p.r3 >= -eps and p.r1 <= 1 + eps
    assert abs(p.r.sum() - 1) < 1e-15
    q = simplex_from_r(p.r)
    assert abs(q.xi3 - xi3) < 1e-12 and abs(q.xi8 - xi8) < 1e-12


def test_diagonalize_sorting():
    spec, u = diagonalize(np.diag([0.0, 1.0, 0.0]))
    assert_allclose(spec.r, [1, 0, 0], atol=1e-15)
    assert_allclose(np.abs(u), np.abs(u).round(), atol=1e-15)  # a permutation up to phases
    spec, _ = diagonalize(np.eye(3) / 3)
    assert_allclose(spec.r, [1 / 3] * 3, atol=1e-15)


def test_diagonalize_random(rng):
    for _ in range(20):
        rho = random_density(rng, 3)
        spec, u = diagonalize(rho)
        d = u @ rho @ u.conj().T
        assert np.max(np.abs(d - np.diag(spec.r))) < 1e-10
        assert abs(np.linalg.det(u) - 1) < 1e-12
        assert np.max(np.abs(spec.r - char_poly_eigenvalues(rho))) < 1e-10


def test_spectrum_invariant_under_conjugation(rng):
    rho = random_density(rng, 3)
    g = random_su(rng, 3)
    a, _ = diagonalize(rho)
    b, _ = diagonalize(g @ rho @ g.conj().T)
    assert_allclose(a.r, b.r, atol=1e-12)
