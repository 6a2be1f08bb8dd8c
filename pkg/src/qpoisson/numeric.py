"""Tolerance-governed dense complex linear algebra.

Every rank or kernel decision in the package goes through this module so
that a single :class:`Tolerance` controls what counts as zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DecompositionError(ValueError):
    """Raised when ``ker(I - T) + ran(I - T)`` fails to be a direct sum."""


@dataclass(frozen=True)
class Tolerance:
    eps_kernel: float = 1e-9
    eps_psd: float = 1e-9
    eps_compare: float = 1e-8

    def __post_init__(self):
        for name in ("eps_kernel", "eps_psd", "eps_compare"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.eps_kernel > 1e-6:
            raise ValueError("eps_kernel must be <= 1e-6")

    def with_compare(self, eps_compare: float) -> "Tolerance":
        return Tolerance(self.eps_kernel, self.eps_psd, eps_compare)


DEFAULT_TOL = Tolerance()


def as_cmatrix(M) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting NaN/Inf."""
    A = np.asarray(M, dtype=complex)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def opnorm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def maxabs(M) -> float:
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def _canonical_basis(P: np.ndarray, k: int) -> np.ndarray:
    """Orthonormal basis of ran(P) for an orthogonal projector P of rank k.

    Columns of P are taken greedily by largest residual, ties going to the
    lowest index, so the output only depends on the subspace.
    """
    n = P.shape[0]
    basis = np.zeros((n, k), dtype=complex)
    R = P.copy()
    for m in range(k):
        norms = np.linalg.norm(R, axis=0)
        j = int(np.argmax(norms > norms.max() * (1 - 1e-9)))
        v = R[:, j] / norms[j]
        # fix the phase so the pivot coordinate is real positive
        v = v * (abs(v[j]) / v[j])
        basis[:, m] = v
        R = R - np.outer(v, v.conj() @ R)
    return basis


def kernel_basis(M, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical kernel of ``M``.

    A vector v belongs to the kernel when ``|Mv| <= eps_kernel * |M| * |v|``,
    decided through singular values relative to the largest one. When M is a
    difference such as ``T - I``, pass the size of the operands as ``scale``
    so that pure rounding noise is not mistaken for rank.
    """
    M = as_cmatrix(M)
    n = M.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    if M.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(M)
    smax = max(s[0] if s.size else 0.0, scale)
    rank = int(np.sum(s > tol.eps_kernel * smax)) if smax > 0 else 0
    null = vh[rank:].conj().T
    k = null.shape[1]
    if k == 0:
        return np.zeros((n, 0), dtype=complex)
    return _canonical_basis(null @ null.conj().T, k)


def rank(M, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> int:
    M = as_cmatrix(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    smax = max(s[0], scale)
    if smax == 0:
        return 0
    return int(np.sum(s > tol.eps_kernel * smax))


def range_basis(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``M``."""
    M = as_cmatrix(M)
    r = rank(M, tol)
    if r == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    u, _, _ = np.linalg.svd(M)
    U = u[:, :r]
    return _canonical_basis(U @ U.conj().T, r)


def is_hermitian(H, eps: float) -> bool:
    H = np.asarray(H)
    return H.shape[0] == H.shape[1] and maxabs(H - H.conj().T) <= eps


def min_eigenvalue(H) -> float:
    H = as_cmatrix(H)
    return float(np.linalg.eigvalsh((H + H.conj().T) / 2)[0])


def is_psd(H, tol: Tolerance = DEFAULT_TOL) -> bool:
    H = as_cmatrix(H)
    if H.shape[0] != H.shape[1]:
        raise ValueError("is_psd needs a square matrix")
    if not is_hermitian(H, tol.eps_compare):
        raise ValueError("is_psd needs a Hermitian matrix")
    return min_eigenvalue(H) >= -tol.eps_psd


def kron(A, B) -> np.ndarray:
    """Kronecker product, row-major: index (i, j) -> i * dim_B + j."""
    return np.kron(np.asarray(A), np.asarray(B))


def spectral_projection_at_one(T, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Projection onto ker(I - T) along ran(I - T).

    For a power-bounded ``T`` this is the limit of the Cesaro means
    ``(1/n) sum_{k=1}^n T^k``.
    """
    T = as_cmatrix(T)
    n = T.shape[0]
    if T.shape != (n, n):
        raise ValueError("spectral_projection_at_one needs a square matrix")
    D = np.eye(n) - T
    size = max(1.0, opnorm(T))
    K = kernel_basis(D, tol, size)  # right fixed vectors
    W = kernel_basis(D.conj().T, tol, size)  # left fixed vectors
    if K.shape[1] != W.shape[1]:
        raise DecompositionError(
            f"left/right fixed spaces differ in dimension ({W.shape[1]} vs {K.shape[1]})")
    k = K.shape[1]
    if k == 0:
        return np.zeros((n, n), dtype=complex)
    G = W.conj().T @ K
    s = np.linalg.svd(G, compute_uv=False)
    if s[-1] < np.sqrt(tol.eps_kernel):
        raise DecompositionError(
            f"ker(I-T) meets ran(I-T) (smallest pairing singular value {s[-1]:.3e})")
    E = K @ np.linalg.solve(G, W.conj().T)
    scale = max(1.0, opnorm(T))
    for label, dev in (("idempotent", E @ E - E), ("T E = E", T @ E - E), ("E T = E", E @ T - E)):
        if maxabs(dev) > tol.eps_compare * scale:
            raise DecompositionError(f"{label} violated by {maxabs(dev):.3e}")
    return E


def cesaro_average(T, n: int) -> np.ndarray:
    """``(1/n) sum_{k=1}^n T^k``, accumulated by binary splitting of the sum."""
    T = as_cmatrix(T)
    if n < 1:
        raise ValueError("cesaro_average needs n >= 1")

    def partial(m):
        # returns (sum_{k=1}^m T^k, T^m)
        if m == 1:
            return T.copy(), T.copy()
        S, P = partial(m // 2)
        S, P = S + P @ S, P @ P
        if m % 2:
            P = P @ T
            S = S + P
        return S, P

    return partial(n)[0] / n
