import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circwit.errors import DimensionError, EmptyInputError, HermiticityError
from circwit.linalg import (
    hermitian_spectrum,
    is_hermitian,
    jacobi_eigh,
    kron,
    numerical_rank,
    partial_transpose,
)
from conftest import random_hermitian


def kron_loops(A, B):
    m, n = A.shape[0], B.shape[0]
    out = np.zeros((m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(m):
            for k in range(n):
                for l in range(n):
                    out[i * n + k, j * n + l] = A[i, j] * B[k, l]
    return out


def pt_loops(M, n):
    out = np.zeros_like(M)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out[i * n + k, j * n + l] = M[i * n + l, j * n + k]
    return out


def test_kron_matches_index_formula(rng):
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.allclose(kron(A, B), kron_loops(A, B), atol=0)


def test_kron_rejects_rectangular():
    with pytest.raises(DimensionError):
        kron(np.ones((2, 3)), np.eye(2))


def test_partial_transpose_matches_loops(rng):
    for n in (2, 3, 4):
        M = rng.normal(size=(n * n, n * n)) + 1j * rng.normal(size=(n * n, n * n))
        assert np.array_equal(partial_transpose(M, n), pt_loops(M, n))


def test_partial_transpose_of_product_transposes_second_factor(rng):
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    B = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(partial_transpose(np.kron(A, B), 3), np.kron(A, B.T))


def test_partial_transpose_is_involution(rng):
    M = random_hermitian(rng, 16)
    assert np.array_equal(partial_transpose(partial_transpose(M, 4), 4), M)


def test_partial_transpose_dimension_check():
    with pytest.raises(DimensionError):
        partial_transpose(np.eye(8), 3)


def test_partial_transpose_of_swap_projector():
    # (|00>+|11>)(<00|+<11|) transposes into the swap operator
    omega = np.array([1, 0, 0, 1], dtype=complex)
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(partial_transpose(np.outer(omega, omega), 2), swap)
    assert hermitian_spectrum(swap)[0] == pytest.approx(-1.0, abs=1e-14)


@pytest.mark.parametrize("d", [1, 2, 5, 9, 16])
def test_jacobi_matches_lapack(rng, d):
    M = random_hermitian(rng, d)
    w, V = jacobi_eigh(M)
    assert np.allclose(w, np.linalg.eigvalsh(M), atol=1e-12 * np.linalg.norm(M))
    assert np.allclose(V.conj().T @ V, np.eye(d), atol=1e-12)
    assert np.allclose(M @ V, V * w, atol=1e-11 * np.linalg.norm(M))


def test_jacobi_handles_degenerate_and_zero():
    w, _ = jacobi_eigh(np.zeros((4, 4)))
    assert np.all(w == 0)
    w, _ = jacobi_eigh(np.diag([2.0, 2.0, -1.0]))
    assert list(w) == [-1.0, 2.0, 2.0]


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        jacobi_eigh(np.array([[0, 1], [0, 0]]))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        hermitian_spectrum(np.array([[np.nan, 0], [0, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_spectrum_trace_and_sorting(seed):
    rng = np.random.default_rng(seed)
    M = random_hermitian(rng, 6)
    w = hermitian_spectrum(M)
    assert np.all(np.diff(w) >= 0)
    assert np.sum(w) == pytest.approx(np.trace(M).real, abs=1e-10)


def test_is_hermitian():
    assert is_hermitian(np.array([[1, 1j], [-1j, 2]]))
    assert not is_hermitian(np.array([[1, 1j], [1j, 2]]))


def test_numerical_rank_of_constructed_sets(rng):
    basis = rng.normal(size=(5, 9)) + 1j * rng.normal(size=(5, 9))
    coeffs = rng.normal(size=(20, 5))
    vectors = list(coeffs @ basis)
    assert numerical_rank(vectors) == 5
    assert numerical_rank(vectors + [rng.normal(size=9)]) == 6
    assert numerical_rank([np.zeros(4)]) == 0


def test_numerical_rank_threshold():
    v = [np.array([1.0, 0.0]), np.array([1.0, 1e-10])]
    assert numerical_rank(v, rel_tol=1e-8) == 1
    assert numerical_rank(v, rel_tol=1e-12) == 2


def test_numerical_rank_errors():
    with pytest.raises(EmptyInputError):
        numerical_rank([])
    with pytest.raises(DimensionError):
        numerical_rank([np.ones(3), np.ones(4)])
