import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from kzwigner.liealg import (
    DimensionMismatchError,
    InvalidDimensionError,
    cartan_indices,
    commutes,
    expand,
    expi,
    generate_basis,
    reconstruct,
)


def test_pauli():
    b = generate_basis(2)
    assert_allclose(b[1], [[0, 1], [1, 0]])
    assert_allclose(b[2], [[0, -1j], [1j, 0]])
    assert_allclose(b[3], [[1, 0], [0, -1]])


def test_gell_mann_cartan_elements():
    b = generate_basis(3)
    assert len(b) == 8
    assert_allclose(b[3], np.diag([1, -1, 0]))
    assert_allclose(b[8], np.diag([1, 1, -2]) / np.sqrt(3))
    assert_allclose(b[5], [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]])
    assert_allclose(b[2], [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 7])
def test_orthonormal_traceless_hermitian(dim):
    b = generate_basis(dim)
    assert len(b) == dim**2 - 1
    gram = np.einsum("aij,bji->ab", b.elements, b.elements)
    assert np.max(np.abs(gram - 2 * np.eye(len(b)))) < 1e-12
    for m in b:
        assert abs(np.trace(m)) < 1e-12
        assert np.max(np.abs(m - m.conj().T)) < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4, 6])
def test_cartan_elements_diagonal_and_commuting(dim):
    b = generate_basis(dim)
    idx = cartan_indices(dim)
    assert idx[:2] == [3, 8][: len(idx[:2])]
    for i in idx:
        assert np.count_nonzero(b[i] - np.diag(np.diag(b[i]))) == 0
        for j in idx:
            assert commutes(b[i], b[j])


def test_commutes_examples():
    b = generate_basis(3)
    assert commutes(b[3], b[8])
    assert not commutes(b[1], b[2])
    assert commutes(b[3], b[3])
    with pytest.raises(DimensionMismatchError):
        commutes(np.eye(2), np.eye(3))


@pytest.mark.parametrize("dim", [0, 1, -3, 2.5])
def test_invalid_dimension(dim):
    with pytest.raises(InvalidDimensionError):
        generate_basis(dim)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_reconstruction(rng, dim):
    b = generate_basis(dim)
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = h + h.conj().T
    h -= np.trace(h) / dim * np.eye(dim)
    assert np.max(np.abs(reconstruct(expand(h, b), b) - h)) < 1e-12


def test_expi_matches_expm(rng):
    b = generate_basis(3)
    for k in (2, 5, 8):
        t = rng.uniform(-3, 3)
        assert_allclose(expi(b[k], t), expm(1j * t * b[k]), atol=1e-13)
