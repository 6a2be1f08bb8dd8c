"""Finite-dimensional *-algebras given by structure constants.

Elements are coordinate vectors over a basis ``e_0 .. e_{d-1}``. The
multiplication tensor satisfies ``e_i e_j = sum_k mult[i, j, k] e_k`` and the
involution is stored as a matrix ``J`` acting on conjugated coordinates,
``x* = J conj(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .checks import VerificationReport
from .numeric import DEFAULT_TOL, Tolerance, maxabs, min_eigenvalue


@dataclass(frozen=True, eq=False)
class ModuleAlgebra:
    """A unital *-algebra with a faithful positive trace (a multimatrix algebra)."""

    mult: np.ndarray
    unit: np.ndarray
    invol: np.ndarray
    trace: np.ndarray | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "mult", np.asarray(self.mult, dtype=complex))
        object.__setattr__(self, "unit", np.asarray(self.unit, dtype=complex))
        object.__setattr__(self, "invol", np.asarray(self.invol, dtype=complex))
        d = self.mult.shape[0]
        if self.mult.shape != (d, d, d) or self.unit.shape != (d,) or self.invol.shape != (d, d):
            raise ValueError(
                f"inconsistent algebra tensors: mult {self.mult.shape}, "
                f"unit {self.unit.shape}, invol {self.invol.shape}")
        if self.trace is None:
            # normalized trace of the left regular representation
            tr = np.einsum("ijj->i", self.mult) / d
            object.__setattr__(self, "trace", tr)
        else:
            object.__setattr__(self, "trace", np.asarray(self.trace, dtype=complex))
            if self.trace.shape != (d,):
                raise ValueError("trace vector has the wrong length")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(d)))

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[i] = 1
        return v

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def star(self, x) -> np.ndarray:
        return self.invol @ np.conj(x)

    def lmul(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return np.einsum("i,ijk->kj", x, self.mult)

    def rmul(self, y) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        return np.einsum("j,ijk->ki", y, self.mult)

    def tau(self, x) -> complex:
        return complex(self.trace @ x)

    @cached_property
    def star_products(self) -> np.ndarray:
        """``P[i, j] = coords of e_i* e_j``."""
        return np.einsum("ai,ajk->ijk", self.invol, self.mult)

    def sesquilinear(self, functional) -> np.ndarray:
        """``[f(e_i* e_j)]``; a functional f is positive iff this is PSD."""
        return self.star_products @ np.asarray(functional, dtype=complex)

    @cached_property
    def gram(self) -> np.ndarray:
        """GNS Gram matrix ``tau(e_i* e_j)`` of the trace."""
        return self.sesquilinear(self.trace)

    @cached_property
    def _gns_factor(self) -> np.ndarray:
        return np.linalg.cholesky(self.gram).conj().T

    @cached_property
    def representation(self) -> np.ndarray:
        """Faithful *-representation from the GNS space of the trace.

        Returns ``pi`` of shape ``(d, d, d)`` with ``pi[i]`` the matrix of
        ``e_i`` in an orthonormal basis; ``pi(x*) = pi(x)^H``.
        """
        R = self._gns_factor
        Rinv = np.linalg.inv(R)
        return np.stack([R @ self.lmul(self.basis(i)) @ Rinv for i in range(self.dim)])

    def represent(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", x, self.representation)

    def is_self_adjoint(self, x, tol: Tolerance = DEFAULT_TOL) -> bool:
        x = np.asarray(x, dtype=complex)
        return maxabs(self.star(x) - x) <= tol.eps_compare * max(1.0, maxabs(x))

    def is_positive(self, x, tol: Tolerance = DEFAULT_TOL) -> bool:
        """``x >= 0`` iff left multiplication by x is PSD in the GNS inner product."""
        x = np.asarray(x, dtype=complex)
        if not self.is_self_adjoint(x, tol):
            raise ValueError("positivity is only defined for self-adjoint elements")
        H = self.gram @ self.lmul(x)
        return min_eigenvalue(H) >= -tol.eps_psd * max(1.0, maxabs(x))

    def norm(self, x) -> float:
        """C*-norm, read off the faithful representation."""
        return float(np.linalg.norm(self.represent(x), 2))

    def is_scalar(self, x, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
        """Whether x is a multiple of the unit, with the residual."""
        c = self.tau(x) / self.tau(self.unit)
        res = maxabs(x - c * self.unit)
        return res <= tol.eps_compare * max(1.0, maxabs(x)), res

    def tensor(self, other: "ModuleAlgebra") -> "ModuleAlgebra":
        m = np.einsum("abc,ijk->aibjck", self.mult, other.mult)
        d = self.dim * other.dim
        return ModuleAlgebra(
            m.reshape(d, d, d),
            np.kron(self.unit, other.unit),
            np.kron(self.invol, other.invol),
            np.kron(self.trace, other.trace),
            tuple(f"{a}(x){b}" for a in self.labels for b in other.labels),
        )

    def verify(self, tol: Tolerance = DEFAULT_TOL, subject: str = "algebra") -> VerificationReport:
        rep = VerificationReport(subject, tol.eps_compare)
        m, J, d = self.mult, self.invol, self.dim
        # (e_i e_j) e_l vs e_i (e_j e_l)
        left = np.einsum("ijk,klm->ijlm", m, m)
        right = np.einsum("jlk,ikm->ijlm", m, m)
        rep.add("associativity", maxabs(left - right))
        eye = np.eye(d)
        rep.add("unit", max(maxabs(self.lmul(self.unit) - eye), maxabs(self.rmul(self.unit) - eye)))
        rep.add("involution", maxabs(J @ J.conj() - eye))
        # (e_i e_j)* = e_j* e_i*
        lhs = np.einsum("ijk,ak->ija", m.conj(), J)
        rhs = np.einsum("bj,ci,bca->ija", J, J, m, optimize=True)
        rep.add("anti-multiplicative involution", maxabs(lhs - rhs))
        tr = self.trace
        rep.add("trace unital", abs(self.tau(self.unit) - 1))
        rep.add("trace tracial", maxabs(np.einsum("ijk,k->ij", m, tr) - np.einsum("jik,k->ij", m, tr)))
        G = self.gram
        herm = maxabs(G - G.conj().T)
        rep.add("trace hermitian", herm)
        if herm <= tol.eps_compare:
            ev = np.linalg.eigvalsh((G + G.conj().T) / 2)
            # pass/fail flag: a singular Gram has no meaningful size of failure
            rep.add("trace faithful positive", 0.0 if ev[0] > tol.eps_kernel else 1.0)
        else:
            rep.add("trace faithful positive", 1.0)
        return rep


def commutative(n: int, labels=None) -> ModuleAlgebra:
    """C(X) for an n-point set X, basis of point indicators."""
    m = np.zeros((n, n, n))
    for i in range(n):
        m[i, i, i] = 1
    return ModuleAlgebra(m, np.ones(n), np.eye(n), np.full(n, 1 / n),
                         tuple(labels) if labels else tuple(f"d{i}" for i in range(n)))


def matrix_algebra(n: int) -> ModuleAlgebra:
    """M_n with matrix units E_ab at index a*n + b and the normalized trace."""
    d = n * n
    m = np.zeros((d, d, d))
    J = np.zeros((d, d))
    tr = np.zeros(d)
    for a in range(n):
        for b in range(n):
            J[b * n + a, a * n + b] = 1
            for c in range(n):
                m[a * n + b, b * n + c, a * n + c] = 1
        tr[a * n + a] = 1 / n
    unit = np.zeros(d)
    unit[[a * n + a for a in range(n)]] = 1
    return ModuleAlgebra(m, unit, J, tr, tuple(f"E{a}{b}" for a in range(n) for b in range(n)))


def matrix_to_coords(X) -> np.ndarray:
    """Coordinates of a matrix in the matrix-unit basis of ``matrix_algebra``."""
    return np.asarray(X, dtype=complex).reshape(-1)


def coords_to_matrix(x, n: int) -> np.ndarray:
    return np.asarray(x, dtype=complex).reshape(n, n)
