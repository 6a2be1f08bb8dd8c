import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from qpoisson.numeric import (DecompositionError, Tolerance, cesaro_average, is_psd, kernel_basis, kron, rank,
                              spectral_projection_at_one)

TOL = Tolerance()


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eps_kernel=0.0)
    with pytest.raises(ValueError):
        Tolerance(eps_kernel=1e-5)
    with pytest.raises(ValueError):
        Tolerance(eps_compare=-1.0)
    assert Tolerance().with_compare(1e-6).eps_compare == 1e-6


def test_kernel_of_zero_matrix_is_everything():
    K = kernel_basis(np.zeros((2, 2)), TOL)
    assert K.shape == (2, 2)
    assert np.abs(K.conj().T @ K - np.eye(2)).max() < 1e-14


def test_kernel_of_identity_is_empty():
    assert kernel_basis(np.eye(3), TOL).shape == (3, 0)


def test_kernel_of_all_ones():
    K = kernel_basis(np.array([[1, 1], [1, 1]]), TOL)
    assert K.shape == (2, 1)
    v = K[:, 0]
    # proportional to (1, -1), pivot entry real and positive
    assert abs(v[0] + v[1]) < 1e-14
    assert abs(abs(v[0]) - 1 / np.sqrt(2)) < 1e-14


def test_kernel_is_deterministic():
    M = np.random.default_rng(0).normal(size=(3, 6))
    assert np.array_equal(kernel_basis(M, TOL), kernel_basis(M.copy(), TOL))


def test_kernel_scale_floor_ignores_rounding_noise():
    noise = 1e-17 * np.random.default_rng(1).normal(size=(4, 4))
    # relative to its own norm the noise is full rank; relative to an O(1) operand it is zero
    assert kernel_basis(noise, TOL).shape[1] == 0
    assert kernel_basis(noise, TOL, scale=1.0).shape[1] == 4
    assert rank(noise, TOL, scale=1.0) == 0


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (4, 5), elements=st.floats(-3, 3)))
def test_kernel_vectors_satisfy_threshold(M):
    K = kernel_basis(M, TOL)
    norm = np.linalg.norm(M, 2)
    for i in range(K.shape[1]):
        assert np.linalg.norm(M @ K[:, i]) <= TOL.eps_kernel * norm * 1.0001 + 1e-300
    assert K.shape[1] + rank(M, TOL) == M.shape[1]


def test_is_psd_examples():
    assert is_psd(np.eye(3), TOL)
    assert not is_psd(np.diag([1.0, -1.0]), TOL)
    assert is_psd(np.array([[2.0, 1.0], [1.0, 2.0]]), TOL)
    with pytest.raises(ValueError):
        is_psd(np.array([[0.0, 1.0], [0.0, 0.0]]), TOL)


def test_kron_examples():
    M = np.arange(4.0).reshape(2, 2)
    assert np.abs(kron(np.array([[2.0]]), M) - 2 * M).max() == 0
    assert np.abs(kron(np.eye(2), np.eye(3)) - np.eye(6)).max() == 0
    swap = kron(np.array([[0, 1], [1, 0]]), np.eye(2))
    expected = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
    assert np.abs(swap - expected).max() == 0
    # row-major index convention (i, j) -> i * dim_B + j
    a, b = np.array([1.0, 2.0]), np.array([3.0, 5.0, 7.0])
    assert kron(a[:, None], b[:, None])[1 * 3 + 2, 0] == a[1] * b[2]


small = arrays(np.float64, st.sampled_from([(2, 2), (3, 3)]), elements=st.floats(-2, 2))


@settings(max_examples=30, deadline=None)
@given(small, small, small, st.floats(-2, 2))
def test_kron_associative_and_bilinear(A, B, C, t):
    assert np.abs(kron(kron(A, B), C) - kron(A, kron(B, C))).max() < 1e-12
    assert np.abs(kron(A + t * A.T, B) - kron(A, B) - t * kron(A.T, B)).max() < 1e-12
    assert np.abs(kron(A, B + t * B.T) - kron(A, B) - t * kron(A, B.T)).max() < 1e-12


def test_spectral_projection_examples():
    assert np.abs(spectral_projection_at_one(np.eye(3), TOL) - np.eye(3)).max() < 1e-14
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.abs(spectral_projection_at_one(swap, TOL) - 0.5 * np.ones((2, 2))).max() < 1e-14
    assert np.abs(spectral_projection_at_one(np.diag([1.0, 0.5]), TOL) - np.diag([1.0, 0.0])).max() < 1e-14


def test_spectral_projection_rejects_jordan_block():
    # a Jordan block at 1 is not power bounded: ker and ran of I - T intersect
    with pytest.raises(DecompositionError):
        spectral_projection_at_one(np.array([[1.0, 1.0], [0.0, 1.0]]), TOL)


def test_cesaro_average_matches_direct_sum():
    T = np.random.default_rng(3).random((5, 5))
    T /= T.sum(axis=1, keepdims=True)
    for n in (1, 2, 5, 17):
        direct = sum(np.linalg.matrix_power(T, k) for k in range(1, n + 1)) / n
        assert np.abs(cesaro_average(T, n) - direct).max() < 1e-14


def test_cesaro_average_error_is_order_one_over_n():
    # the diag(1, 1/2) example: the average misses E by sum_k 2^-k / n
    E = np.diag([1.0, 0.0])
    dev = np.abs(cesaro_average(np.diag([1.0, 0.5]), 10_000) - E).max()
    assert abs(dev - (1 - 0.5 ** 10_000) / 10_000) < 1e-15
