"""Eigensolver and singular value unit tests plus randomized cross-checks."""

import numpy as np
import pytest

from spectranorm.cmatrix import CMatrix
from spectranorm.constructions import all_ones, dft_matrix
from spectranorm.eigen import (
    EigenSpectrum,
    SingularSpectrum,
    hermitian_eigenvalues,
    rayleigh_allones,
    singular_values,
)
from spectranorm.errors import NonRealRayleigh, NotHermitian
from spectranorm.graphs import blow_up, complete


def test_k2_eigenvalues():
    spec = hermitian_eigenvalues(complete(2).adjacency_matrix())
    assert np.allclose(spec.values, [1.0, -1.0], atol=1e-12)


def test_two_i_minus_j_eigenvalues():
    m = CMatrix.from_array(2 * np.eye(4) - np.ones((4, 4)))
    spec = hermitian_eigenvalues(m)
    assert np.allclose(spec.values, [2.0, 2.0, 2.0, -2.0], atol=1e-12)


def test_zero_matrix_eigenvalues():
    m = CMatrix.from_array(np.zeros((5, 5)))
    assert np.allclose(hermitian_eigenvalues(m).values, 0.0)


def test_not_hermitian_raises():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(CMatrix.from_rows([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(all_ones(2, 3))


def test_dft4_singular_values():
    assert np.allclose(singular_values(dft_matrix(4)).values, 2.0, atol=1e-10)


def test_allones_rank_one_singulars():
    sig = singular_values(all_ones(3, 5)).values
    assert len(sig) == 3
    assert abs(sig[0] - np.sqrt(15)) < 1e-10
    assert np.all(sig[1:] < 1e-9)


def test_k2_singular_values():
    sig = singular_values(complete(2).adjacency_matrix())
    assert np.allclose(sig.values, [1.0, 1.0], atol=1e-12)


def test_rayleigh_values():
    assert abs(rayleigh_allones(all_ones(2, 2)) - 2.0) < 1e-12
    m = CMatrix.from_array(2 * np.eye(4) - np.ones((4, 4)))
    assert abs(rayleigh_allones(m) + 2.0) < 1e-12
    assert abs(rayleigh_allones(complete(2).adjacency_matrix()) - 1.0) < 1e-12


def test_rayleigh_nonreal_raises():
    with pytest.raises(NonRealRayleigh):
        rayleigh_allones(CMatrix.from_rows([[1j]]))


def test_singulars_match_conjugate_transpose():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = rng.integers(1, 6)
        n = rng.integers(1, 7)
        z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        a = CMatrix.from_array(z)
        sa = singular_values(a).values
        sb = singular_values(a.conj_transpose()).values
        assert np.allclose(sa[: min(m, n)], sb[: min(m, n)], atol=1e-9)


def test_hermitian_moduli_equal_singulars():
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = rng.integers(2, 8)
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (z + z.conj().T) / 2
        eig = hermitian_eigenvalues(CMatrix.from_array(h)).values
        sig = singular_values(CMatrix.from_array(h)).values
        assert np.allclose(np.sort(np.abs(eig)), np.sort(sig), atol=1e-9)


def test_sigma_square_sum_matches_frobenius():
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = rng.integers(1, 7)
        n = rng.integers(1, 7)
        z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        sig = singular_values(CMatrix.from_array(z)).values
        f2sq = np.sum(np.abs(z) ** 2)
        assert abs(np.sum(sig**2) - f2sq) <= 1e-9 * (1 + f2sq)


def test_eigen_sum_matches_trace():
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = rng.integers(2, 9)
        z = rng.standard_normal((n, n))
        h = z + z.T
        eig = hermitian_eigenvalues(CMatrix.from_array(h)).values
        assert abs(eig.sum() - np.trace(h)) <= 1e-9 * (1 + abs(np.trace(h)))


def test_lapack_crosscheck():
    # independent oracle: numpy's LAPACK-backed solver on random inputs
    rng = np.random.default_rng(23)
    for _ in range(8):
        n = rng.integers(2, 12)
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (z + z.conj().T) / 2
        mine = hermitian_eigenvalues(CMatrix.from_array(h)).values
        ref = np.sort(np.linalg.eigvalsh(h))[::-1]
        assert np.max(np.abs(mine - ref)) < 1e-10 * (1 + np.abs(ref).max())


def test_degenerate_spectrum_converges():
    # blow-up Grams have heavily repeated eigenvalues; regression for a
    # convergence-detection failure
    g = blow_up(complete(4), 3)
    sig = singular_values(g.adjacency_matrix()).values
    expect = np.array([9.0, 3.0, 3.0, 3.0] + [0.0] * 8)
    assert np.allclose(sig, expect, atol=1e-9)


def test_spectrum_types_reject_bad_data():
    with pytest.raises(ValueError):
        EigenSpectrum(np.array([1.0, 2.0]))  # not nonincreasing
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([2.0, -1.0]))
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, 2.0]))


def test_cmatrix_validation():
    with pytest.raises(ValueError):
        CMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        CMatrix.from_rows([[np.inf]])
    with pytest.raises(ValueError):
        CMatrix.from_rows([[np.nan]])
    m = CMatrix(2, 3, range(6))
    assert m.rows == 2 and m.cols == 3
    assert m.entries == tuple(complex(x) for x in range(6))
