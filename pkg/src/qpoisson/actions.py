"""Coactions of finite quantum groups on finite-dimensional *-algebras.

An action of the quantum group A on N is stored as a tensor with
``alpha(f_i) = sum_{j,k} tensor[i, j, k] e_j (x) f_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import ModuleAlgebra, commutative, matrix_algebra, matrix_to_coords
from .checks import VerificationReport
from .groups import direct_product, cyclic, inverses, validate_group
from .hopf import HopfData, function_algebra
from .numeric import DEFAULT_TOL, Tolerance, kernel_basis, maxabs, opnorm, rank


class ActionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ActionData:
    parent: HopfData
    target: ModuleAlgebra
    tensor: np.ndarray
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.tensor, dtype=complex)
        shape = (self.target.dim, self.parent.dim, self.target.dim)
        if t.shape != shape:
            raise ActionError(f"dimension mismatch: action tensor has shape {t.shape}, expected {shape}")
        object.__setattr__(self, "tensor", t)

    @cached_property
    def matrix(self) -> np.ndarray:
        """``(dA*dN) x dN`` coordinate matrix of alpha."""
        dN = self.target.dim
        return self.tensor.reshape(dN, -1).T

    @cached_property
    def joint_algebra(self) -> ModuleAlgebra:
        return self.parent.algebra.tensor(self.target)

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=complex)

    def slice_left(self, omega) -> np.ndarray:
        """Matrix of ``(omega (x) id) alpha`` on N."""
        return np.einsum("j,ijk->ki", np.asarray(omega, dtype=complex), self.tensor)

    def slice_right(self, omega) -> np.ndarray:
        """Matrix of ``(id (x) omega) alpha : N -> A``."""
        return np.einsum("k,ijk->ji", np.asarray(omega, dtype=complex), self.tensor)


def verify_action(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Deviation of each coaction axiom; passes iff each is <= eps_compare."""
    A, N = alpha.parent, alpha.target
    rep = N.verify(tol, subject=f"action {alpha.name}".strip())
    rep.deviations = {f"target {k}": v for k, v in rep.deviations.items()}
    M = alpha.matrix
    AN = alpha.joint_algebra
    dA, dN = A.dim, N.dim
    lhs = np.einsum("ilk,ak->ila", N.mult, M)
    rhs = np.einsum("ai,bl,abc->ilc", M, M, AN.mult, optimize=True)
    rep.add("multiplicative", maxabs(lhs - rhs))
    rep.add("*-preserving", maxabs(M @ N.invol - AN.invol @ M.conj()))
    rep.add("unital", maxabs(M @ N.unit - np.kron(A.unit, N.unit)))
    # integer rank deficiency, 0 when alpha is injective
    rep.add("injective", float(dN - rank(M, tol)))
    D = A.comult_matrix
    lhs = np.kron(D, np.eye(dN)) @ M
    rhs = np.kron(np.eye(dA), M) @ M
    rep.add("coaction identity", maxabs(lhs - rhs))
    return rep


def check_action(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> ActionData:
    verify_action(alpha, tol).raise_if_failed()
    return alpha


def comultiplication_as_action(H: HopfData) -> ActionData:
    return ActionData(H, H.algebra, H.comult, f"comultiplication of {H.name}")


def validate_set_action(group_table, n_points: int, act) -> np.ndarray:
    T = validate_group(group_table)
    act = np.asarray(act)
    if act.shape != (T.shape[0], n_points):
        raise ActionError(f"action table has shape {act.shape}, expected {(T.shape[0], n_points)}")
    if act.min() < 0 or act.max() >= n_points:
        raise ActionError("action table entries out of range")
    if not np.array_equal(act[0], np.arange(n_points)):
        raise ActionError("identity does not act trivially")
    for g in range(T.shape[0]):
        for h in range(T.shape[0]):
            if not np.array_equal(act[T[g, h]], act[g][act[h]]):
                raise ActionError(f"not a group action: (g*h).x != g.(h.x) for g={g}, h={h}")
    return act


def from_group_action_on_set(group_table, n_points: int, act, H: HopfData | None = None,
                             name: str = "") -> ActionData:
    """``alpha(f)(g, x) = f(g.x)`` on C(X); ``act[g][x] = g.x``."""
    act = validate_set_action(group_table, n_points, act)
    H = H if H is not None else function_algebra(group_table)
    nG = act.shape[0]
    t = np.zeros((n_points, nG, n_points))
    for g in range(nG):
        for x in range(n_points):
            t[act[g, x], g, x] = 1
    return ActionData(H, commutative(n_points), t, name or f"G-set of size {n_points}")


def from_automorphism_action(group_table, N: ModuleAlgebra, autos, H: HopfData | None = None,
                             tol: Tolerance = DEFAULT_TOL, name: str = "") -> ActionData:
    """``alpha(x) = sum_g delta_g (x) alpha_{g^-1}(x)`` for automorphisms ``autos[g]``.

    With this convention the Markov operator of mu is
    ``x -> sum_g mu(g) alpha_{g^-1}(x)``.
    """
    T = validate_group(group_table)
    autos = np.asarray(autos, dtype=complex)
    n, d = T.shape[0], N.dim
    if autos.shape != (n, d, d):
        raise ActionError(f"automorphism array has shape {autos.shape}, expected {(n, d, d)}")
    if maxabs(autos[0] - np.eye(d)) > tol.eps_compare:
        raise ActionError("identity does not act trivially")
    for g in range(n):
        a = autos[g]
        for h in range(n):
            if maxabs(autos[T[g, h]] - a @ autos[h]) > tol.eps_compare:
                raise ActionError(f"automorphisms are not a homomorphism at g={g}, h={h}")
        if maxabs(np.einsum("ijk,ak->ija", N.mult, a) - np.einsum("ai,bj,abk->ijk", a, a, N.mult, optimize=True)) > tol.eps_compare:
            raise ActionError(f"automorphism of element {g} is not multiplicative")
        if maxabs(a @ N.invol - N.invol @ a.conj()) > tol.eps_compare:
            raise ActionError(f"automorphism of element {g} is not *-preserving")
        if maxabs(a @ N.unit - N.unit) > tol.eps_compare:
            raise ActionError(f"automorphism of element {g} is not unital")
    H = H if H is not None else function_algebra(T)
    inv = inverses(T)
    t = np.zeros((d, n, d), dtype=complex)
    for g in range(n):
        # tensor[i, g, k] = coefficient of f_k in alpha_{g^-1}(f_i)
        t[:, g, :] = autos[inv[g]].T
    return ActionData(H, N, t, name or "automorphism action")


def conjugation_automorphism(U) -> np.ndarray:
    """Matrix of ``X -> U X U^H`` on M_n in matrix-unit coordinates."""
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    cols = []
    for a in range(n):
        for b in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[a, b] = 1
            cols.append(matrix_to_coords(U @ E @ U.conj().T))
    return np.array(cols).T


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_action() -> ActionData:
    """Z/2 x Z/2 acting on M_2 by conjugation with X^a Z^b."""
    z2 = cyclic(2)
    T = direct_product(z2, z2)
    autos = []
    for g in range(4):
        a, b = divmod(g, 2)
        U = np.linalg.matrix_power(PAULI_X, a) @ np.linalg.matrix_power(PAULI_Z, b)
        autos.append(conjugation_automorphism(U))
    return from_automorphism_action(T, matrix_algebra(2), autos, name="Pauli conjugation on M2")


def fixed_point_algebra(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of ``{x : alpha(x) = 1 (x) x}``."""
    A, N = alpha.parent, alpha.target
    F = kernel_basis(alpha.matrix - np.kron(A.unit[:, None], np.eye(N.dim)), tol, opnorm(alpha.matrix))
    P = F @ F.conj().T
    for i in range(F.shape[1]):
        x = F[:, i]
        dev = maxabs(N.star(x) - P @ N.star(x))
        for j in range(F.shape[1]):
            xy = N.mul(x, F[:, j])
            dev = max(dev, maxabs(xy - P @ xy))
        assert dev <= tol.eps_compare * 10, f"fixed points not closed under product/adjoint ({dev:.3e})"
    return F


def is_ergodic(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> bool:
    return fixed_point_algebra(alpha, tol).shape[1] == 1


def self_adjoint_spanning(N: ModuleAlgebra, B: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Self-adjoint elements spanning the *-closed subspace ran(B)."""
    cands = []
    for i in range(B.shape[1]):
        b = B[:, i]
        bs = N.star(b)
        cands += [(b + bs) / 2, (b - bs) / 2j]
    cands = [c for c in cands if maxabs(c) > tol.eps_kernel]
    out = []
    for c in cands:
        trial = np.array(out + [c]).T
        if rank(trial, tol) > len(out):
            out.append(c / N.norm(c))
    return out


def spectral_projection(N: ModuleAlgebra, x, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Spectral projection of self-adjoint x at its top eigenvalue.

    Built as a Lagrange polynomial in x, so it lies in any unital subalgebra
    that contains x.
    """
    ev = np.linalg.eigvalsh(N.represent(x))
    distinct = []
    for v in ev:
        if not distinct or v - distinct[-1] > 1e-7 * max(1.0, abs(v)):
            distinct.append(float(v))
    top = distinct[-1]
    p = N.unit.copy()
    for lam in distinct[:-1]:
        p = N.mul(p, (x - lam * N.unit) / (top - lam))
    return p, top


def invariant_projection(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray | None:
    """A projection e in the fixed-point algebra with e != 0, 1; None if ergodic."""
    N = alpha.target
    F = fixed_point_algebra(alpha, tol)
    for x in self_adjoint_spanning(N, F, tol):
        if N.is_scalar(x, tol)[0]:
            continue
        e, _ = spectral_projection(N, x, tol)
        return e
    return None
