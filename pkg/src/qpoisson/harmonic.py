"""Markov operators of quantum-group actions and their harmonic elements.

For a state mu on the quantum group A and an action alpha of A on N, the
Markov operator is ``Phi = (mu (x) id) alpha`` on N. Its fixed points are
the mu-harmonic elements; with the Choi-Effros product ``x o y = E(xy)``,
where E is the Cesaro projection onto the fixed points, they form a
finite-dimensional von Neumann algebra.
"""
from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from .actions import ActionData
from .algebra import ModuleAlgebra
from .measures import Functional, density, is_state
from .numeric import (DEFAULT_TOL, Tolerance, cesaro_average, kernel_basis, maxabs, min_eigenvalue, opnorm, rank,
                      spectral_projection_at_one)


class HarmonicError(ValueError):
    pass


def choi_matrix(N: ModuleAlgebra, T) -> np.ndarray:
    """Choi matrix of a linear map T on N, in the faithful GNS representation.

    T is extended to the full matrix algebra by precomposing with the
    trace-preserving conditional expectation onto the image of N, which keeps
    complete positivity unchanged.
    """
    pi = N.representation
    n = pi.shape[1]
    V = pi.reshape(N.dim, n * n).T
    Psi = V @ np.asarray(T) @ np.linalg.pinv(V)
    return Psi.reshape(n, n, n, n).transpose(2, 0, 3, 1).reshape(n * n, n * n)


def cp_margin(N: ModuleAlgebra, T) -> float:
    """Smallest eigenvalue of the Choi matrix; >= 0 iff T is completely positive."""
    return min_eigenvalue(choi_matrix(N, T))


@dataclass(eq=False)
class MarkovOperator:
    measure: Functional
    action: ActionData
    matrix: np.ndarray
    is_markov: bool
    checks: dict = field(default_factory=dict)

    @property
    def target(self) -> ModuleAlgebra:
        return self.action.target

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=complex)


def convolution_operator(mu: Functional) -> np.ndarray:
    """Matrix of ``(mu (x) id) Gamma`` on the quantum group itself."""
    return mu.parent.convolution_operator(mu.coords)


def markov_operator(mu: Functional, alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> MarkovOperator:
    """``(mu (x) id) alpha``; unitality, intertwining and complete positivity are checked for states."""
    if mu.parent is not alpha.parent:
        raise HarmonicError("measure and action live on different quantum groups")
    N = alpha.target
    Phi = alpha.slice_left(mu.coords)
    markov = is_state(mu, tol)
    conv = alpha.parent.convolution_operator(mu.coords)
    checks = {
        "unital": maxabs(Phi @ N.unit - N.unit),
        "intertwining": maxabs(alpha.matrix @ Phi - np.kron(conv, np.eye(N.dim)) @ alpha.matrix),
        "cp_margin": cp_margin(N, Phi),
    }
    if markov:
        if checks["unital"] > tol.eps_compare:
            raise HarmonicError(f"Markov operator is not unital ({checks['unital']:.3e})")
        if checks["intertwining"] > tol.eps_compare:
            raise HarmonicError(f"alpha Phi != (Phi_mu (x) id) alpha ({checks['intertwining']:.3e})")
        if checks["cp_margin"] < -tol.eps_psd:
            raise HarmonicError(f"Markov operator is not completely positive ({checks['cp_margin']:.3e})")
    return MarkovOperator(mu, alpha, Phi, markov, checks)


@dataclass(eq=False)
class HarmonicSpace:
    """Fixed points of a Markov operator with their Choi-Effros algebra structure.

    ``basis`` holds orthonormal coordinate columns; ``table[i, j, k]`` is the
    coefficient of ``b_k`` in ``b_i o b_j``.
    """

    algebra: ModuleAlgebra
    basis: np.ndarray
    projection: np.ndarray
    table: np.ndarray
    unit: np.ndarray
    invol: np.ndarray
    deviations: dict

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coords(self, x) -> np.ndarray:
        return self.basis.conj().T @ np.asarray(x, dtype=complex)

    def element(self, c) -> np.ndarray:
        return self.basis @ np.asarray(c, dtype=complex)

    def circ(self, x, y) -> np.ndarray:
        """Choi-Effros product in ambient coordinates."""
        return self.projection @ self.algebra.mul(x, y)

    def contains(self, x) -> float:
        """Distance-type residual of x from the harmonic space."""
        x = np.asarray(x, dtype=complex)
        return maxabs(x - self.basis @ (self.basis.conj().T @ x))

    def is_subalgebra(self, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
        """Whether the space is closed under the ambient product of N."""
        dev = 0.0
        for i in range(self.dim):
            for j in range(self.dim):
                dev = max(dev, self.contains(self.algebra.mul(self.basis[:, i], self.basis[:, j])))
        return dev <= tol.eps_compare, dev

    def ambient_product_residual(self) -> float:
        """Largest difference between the Choi-Effros and the ambient product."""
        dev = 0.0
        for i in range(self.dim):
            for j in range(self.dim):
                x, y = self.basis[:, i], self.basis[:, j]
                dev = max(dev, maxabs(self.circ(x, y) - self.algebra.mul(x, y)))
        return dev


def harmonic_space(Phi: MarkovOperator, tol: Tolerance = DEFAULT_TOL) -> HarmonicSpace:
    N = Phi.target
    T = Phi.matrix
    B = kernel_basis(T - np.eye(N.dim), tol, max(1.0, opnorm(T)))
    E = spectral_projection_at_one(T, tol)
    r = B.shape[1]
    table = np.zeros((r, r, r), dtype=complex)
    for i in range(r):
        for j in range(r):
            table[i, j] = B.conj().T @ (E @ N.mul(B[:, i], B[:, j]))
    unit = B.conj().T @ N.unit
    invol = B.conj().T @ N.invol @ B.conj()
    P = B @ B.conj().T
    dev = {
        "contains unit": maxabs(N.unit - P @ N.unit),
        "adjoint closed": maxabs(N.invol @ B.conj() - P @ N.invol @ B.conj()),
        "projection fixes space": maxabs(E @ B - B),
        "projection range": maxabs(E - P @ E),
    }
    # Choi-Effros algebra axioms on the harmonic coordinates
    left = np.einsum("ijk,klm->ijlm", table, table)
    right = np.einsum("jlk,ikm->ijlm", table, table)
    dev["associativity"] = maxabs(left - right)
    eye = np.eye(r)
    dev["unit"] = max(maxabs(np.einsum("i,ijk->kj", unit, table) - eye),
                      maxabs(np.einsum("j,ijk->ki", unit, table) - eye)) if r else 0.0
    lhs = np.einsum("ijk,ak->ija", table.conj(), invol)
    rhs = np.einsum("bj,ci,bca->ija", invol, invol, table, optimize=True)
    dev["adjoint reverses product"] = maxabs(lhs - rhs)
    H = HarmonicSpace(N, B, E, table, unit, invol, dev)
    bad = {k: v for k, v in dev.items() if v > tol.eps_compare}
    if bad:
        raise HarmonicError(f"harmonic space invariants violated: {bad}")
    return H


def phi_omega(omega: Functional, alpha: ActionData) -> np.ndarray:
    """Matrix of ``x -> (id (x) omega) alpha(x)``, a map N -> A."""
    return alpha.slice_right(omega.coords)


def predual_convolve(mu: Functional, omega: Functional, alpha: ActionData) -> Functional:
    """``omega o Phi_mu``, the predual action of mu on normal functionals of N."""
    Phi = alpha.slice_left(mu.coords)
    return Functional(omega.parent, Phi.T @ omega.coords)


def orbit_map_identities(omega: Functional, mu: Functional, alpha: ActionData) -> dict:
    """Deviations of the identities satisfied by ``phi_omega``.

    * covariance: ``(id (x) phi_omega) alpha = Gamma phi_omega``
    * intertwining: ``Phi_mu phi_omega = phi_omega Phi^mu_alpha`` with
      ``Phi_mu = (mu (x) id) Gamma``
    * predual: ``R_mu phi_omega = phi_{mu * omega}`` with the right
      convolution ``R_mu = (id (x) mu) Gamma`` and ``mu * omega = omega Phi^mu_alpha``
    * literal: ``Phi_mu phi_omega`` against ``phi_{mu * omega}``; this one
      only vanishes when left and right convolution by mu agree on the
      range of phi_omega, e.g. for commutative or cocommutative A.
    """
    A = alpha.parent
    phi = phi_omega(omega, alpha)
    D = A.comult_matrix
    left_conv = A.convolution_operator(mu.coords)
    right_conv = np.einsum("k,ijk->ji", mu.coords, A.comult)
    Phi_alpha = alpha.slice_left(mu.coords)
    phi_conv = phi_omega(predual_convolve(mu, omega, alpha), alpha)
    return {
        "covariance": maxabs(np.kron(np.eye(A.dim), phi) @ alpha.matrix - D @ phi),
        "intertwining": maxabs(left_conv @ phi - phi @ Phi_alpha),
        "predual": maxabs(right_conv @ phi - phi_conv),
        "literal": maxabs(left_conv @ phi - phi_conv),
    }


@lru_cache(maxsize=128)
def positive_generating_family(N: ModuleAlgebra) -> np.ndarray:
    """Columns y* y for y running over basis vectors and their pairwise combinations."""
    ys = [N.basis(i) for i in range(N.dim)]
    for i in range(N.dim):
        for j in range(i + 1, N.dim):
            ys.append(N.basis(i) + N.basis(j))
            ys.append(N.basis(i) + 1j * N.basis(j))
    Y = np.array(ys).T
    # y* y for every column at once
    return np.einsum("im,ijk,jm->km", (N.invol @ Y.conj()), N.mult, Y, optimize=True)


def is_faithful_positive_map(T, source: ModuleAlgebra, target: ModuleAlgebra,
                             tol: Tolerance = DEFAULT_TOL) -> bool:
    """Faithfulness of a positive map T: source -> target.

    T is faithful iff the positive functional ``tr o T`` is faithful, for any
    faithful trace tr on the target; that reduces to full rank of its density.
    """
    T = np.asarray(T, dtype=complex)
    Y = T @ positive_generating_family(source)
    Ys = target.invol @ Y.conj()
    scale = np.maximum(1.0, np.abs(Y).max(axis=0))
    if np.any(np.abs(Ys - Y).max(axis=0) > tol.eps_compare * scale):
        raise HarmonicError("map is not positive")
    # Gram-weighted left multiplication, batched over the columns
    L = np.einsum("im,ijk->mkj", (Y + Ys) / 2, target.mult)
    G = target.gram @ L
    ev = np.linalg.eigvalsh((G + G.conj().transpose(0, 2, 1)) / 2)[:, 0]
    if np.any(ev < -tol.eps_psd * scale):
        raise HarmonicError("map is not positive")
    f = Functional(source, T.T @ target.trace)
    rho = density(f)
    return rank(source.lmul(rho), tol) == source.dim


def invariant_functionals(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Basis (columns) of ``{Omega : (omega (x) Omega) alpha = omega(1) Omega for all omega}``."""
    A, N = alpha.parent, alpha.target
    # for each dual basis functional e^_j: sum_k t[i,j,k] Omega_k - u_j Omega_i = 0
    rows = [alpha.tensor[:, j, :] - A.unit[j] * np.eye(N.dim) for j in range(A.dim)]
    return kernel_basis(np.vstack(rows), tol, 1.0)


def invariance_residual(Omega: Functional, alpha: ActionData) -> float:
    A = alpha.parent
    return max(maxabs(alpha.tensor[:, j, :] @ Omega.coords - A.unit[j] * Omega.coords)
               for j in range(A.dim))


def find_invariant_state(alpha: ActionData, tol: Tolerance = DEFAULT_TOL) -> Functional | None:
    """Search the invariant functionals for a state.

    Tries the projection of the trace onto the invariant subspace, then each
    basis vector. ``None`` means nothing was found, which is inconclusive:
    deciding existence in general is a semidefinite feasibility problem.
    """
    N = alpha.target
    V = invariant_functionals(alpha, tol)
    cands = []
    if V.shape[1]:
        cands.append(V @ (V.conj().T @ N.trace))
        cands += [V[:, i] for i in range(V.shape[1])]
    for c in cands:
        norm = c @ N.unit
        if abs(norm) < tol.eps_kernel:
            continue
        Omega = Functional(N, c / norm)
        if is_state(Omega, tol):
            return Omega
    return None


def cesaro_remainder(Phi, E, n: int) -> np.ndarray:
    """Exact value of ``(1/n) sum_{k<=n} Phi^k - E``.

    With ``T = Phi - E`` one has ``Phi^k = E + T^k`` for k >= 1, hence the
    remainder ``T (I - T^n) (I - T)^-1 / n``.
    """
    Phi, E = np.asarray(Phi), np.asarray(E)
    T = Phi - E
    I = np.eye(T.shape[0])
    return T @ (I - np.linalg.matrix_power(T, n)) @ np.linalg.inv(I - T) / n


def projection_report(Phi: MarkovOperator, H: HarmonicSpace, n: int = 10_000) -> dict:
    """Properties of the Cesaro projection E, including its match with iterated averages."""
    T, E = Phi.matrix, H.projection
    N = Phi.target
    C = cesaro_average(T, n)
    return {
        "idempotent": maxabs(E @ E - E),
        "Phi E = E": maxabs(T @ E - E),
        "E Phi = E": maxabs(E @ T - E),
        "unital": maxabs(E @ N.unit - N.unit),
        "choi_min_eigenvalue": cp_margin(N, E),
        "cesaro_n": n,
        "cesaro_deviation": opnorm(C - E),
        "cesaro_remainder_mismatch": opnorm(C - E - cesaro_remainder(T, E, n)),
    }
