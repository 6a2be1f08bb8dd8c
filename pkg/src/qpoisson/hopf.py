"""Finite quantum groups as Hopf *-algebra structure tensors.

Conventions (all indices over the basis ``e_0 .. e_{d-1}``)::

    e_i e_j      = sum_k mult[i, j, k] e_k
    Gamma(e_i)   = sum_{j,k} comult[i, j, k] e_j (x) e_k
    S(e_i)       = sum_k antipode[k, i] e_k
    eps(e_i)     = counit[i],   h(e_i) = haar[i]

Tensor products use the row-major Kronecker index ``(j, k) -> j*d + k``, so
the coordinate matrix of Gamma is ``comult.reshape(d, d*d).T``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import ModuleAlgebra
from .checks import VerificationReport
from .groups import inverses, validate_group
from .numeric import DEFAULT_TOL, Tolerance, kernel_basis, maxabs


class HopfError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HopfData:
    mult: np.ndarray
    unit: np.ndarray
    invol: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    haar: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        for f in ("mult", "unit", "invol", "comult", "counit", "antipode", "haar"):
            object.__setattr__(self, f, np.asarray(getattr(self, f), dtype=complex))
        d = self.mult.shape[0]
        shapes = {
            "mult": (d, d, d), "unit": (d,), "invol": (d, d), "comult": (d, d, d),
            "counit": (d,), "antipode": (d, d), "haar": (d,),
        }
        for f, shape in shapes.items():
            if getattr(self, f).shape != shape:
                raise HopfError(f"dimension mismatch: {f} has shape {getattr(self, f).shape}, expected {shape}")
            if not np.all(np.isfinite(getattr(self, f))):
                raise HopfError(f"{f} has non-finite entries")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(d)))

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @cached_property
    def algebra(self) -> ModuleAlgebra:
        """Underlying *-algebra, traced by the Haar state."""
        return ModuleAlgebra(self.mult, self.unit, self.invol, self.haar, self.labels)

    @cached_property
    def comult_matrix(self) -> np.ndarray:
        """``(d*d) x d`` coordinate matrix of Gamma."""
        d = self.dim
        return self.comult.reshape(d, d * d).T

    @property
    def mult_matrix(self) -> np.ndarray:
        """``d x (d*d)`` coordinate matrix of the multiplication map."""
        d = self.dim
        return self.mult.reshape(d * d, d).T

    def convolution_operator(self, mu) -> np.ndarray:
        """Matrix of ``(mu (x) id) Gamma`` on the algebra."""
        return np.einsum("j,ijk->ki", np.asarray(mu, dtype=complex), self.comult)

    def is_cocommutative(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return maxabs(self.comult - self.comult.transpose(0, 2, 1)) <= tol.eps_compare

    def replace(self, **changes) -> "HopfData":
        fields = {f: getattr(self, f) for f in
                  ("mult", "unit", "invol", "comult", "counit", "antipode", "haar", "labels", "name")}
        fields.update(changes)
        return HopfData(**fields)


def verify_hopf(H: HopfData, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Deviation of every Hopf *-algebra axiom; passes iff each is <= eps_compare."""
    rep = H.algebra.verify(tol, subject=f"hopf {H.name}".strip())
    rep.deviations = {("haar " + k[6:] if k.startswith("trace ") else k): v
                      for k, v in rep.deviations.items()}
    d = H.dim
    D = H.comult_matrix
    I = np.eye(d)
    rep.add("coassociativity", maxabs(np.kron(D, I) @ D - np.kron(I, D) @ D))

    AA = H.algebra.tensor(H.algebra)
    # Gamma(e_i e_j) = Gamma(e_i) Gamma(e_j)
    lhs = np.einsum("ijk,kab->ijab", H.mult, H.comult).reshape(d, d, d * d)
    rhs = np.einsum("ia,jb,abc->ijc", D.T, D.T, AA.mult, optimize=True)
    rep.add("comultiplication multiplicative", maxabs(lhs - rhs))
    rep.add("comultiplication unital", maxabs(D @ H.unit - np.kron(H.unit, H.unit)))
    # Gamma(e_i*) = Gamma(e_i)*
    rep.add("comultiplication *-preserving", maxabs(D @ H.invol - AA.invol @ D.conj()))

    eps = H.counit
    rep.add("counit", max(maxabs(np.kron(eps, I) @ D - I), maxabs(np.kron(I, eps) @ D - I)))
    counit_mult = np.einsum("ijk,k->ij", H.mult, eps) - np.outer(eps, eps)
    rep.add("counit multiplicative", maxabs(counit_mult))

    M, S = H.mult_matrix, H.antipode
    target = np.outer(H.unit, eps)
    rep.add("antipode", max(maxabs(M @ np.kron(S, I) @ D - target),
                            maxabs(M @ np.kron(I, S) @ D - target)))

    h = H.haar
    inv_target = np.outer(H.unit, h)
    rep.add("haar invariance", max(maxabs(np.kron(I, h) @ D - inv_target),
                                   maxabs(np.kron(h, I) @ D - inv_target)))
    return rep


def check_hopf(H: HopfData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    verify_hopf(H, tol).raise_if_failed()
    return H


def compute_haar(H: HopfData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The unique normalized functional with ``(id (x) h) Gamma(a) = h(a) 1``.

    Left and right invariance are imposed together; the result must be a
    faithful state, otherwise the input is not a finite quantum group.
    """
    d = H.dim
    C = H.comult
    u = H.unit
    # sum_k C[i,j,k] h_k - u_j h_i = 0   and   sum_j C[i,j,k] h_j - u_k h_i = 0
    right = C.reshape(d * d, d) - np.einsum("j,il->ijl", u, np.eye(d)).reshape(d * d, d)
    left = C.transpose(0, 2, 1).reshape(d * d, d) - np.einsum("k,il->ikl", u, np.eye(d)).reshape(d * d, d)
    K = kernel_basis(np.vstack([right, left]), tol)
    if K.shape[1] != 1:
        raise HopfError(f"no invariant state: invariant functionals form a {K.shape[1]}-dimensional space")
    h = K[:, 0]
    norm = h @ u
    if abs(norm) < tol.eps_kernel:
        raise HopfError("no invariant state: invariant functional vanishes on the unit")
    h = h / norm
    G = H.algebra.sesquilinear(h)
    if maxabs(G - G.conj().T) > tol.eps_compare:
        raise HopfError("invariant functional is not hermitian")
    ev = np.linalg.eigvalsh((G + G.conj().T) / 2)
    if ev[0] <= tol.eps_kernel:
        raise HopfError(f"invariant functional is not a faithful state (min Gram eigenvalue {ev[0]:.3e})")
    return h


def gns_gram(H: HopfData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``G[i, j] = h(e_i* e_j)``, the GNS inner product of the Haar state."""
    G = H.algebra.sesquilinear(H.haar)
    if maxabs(G - G.conj().T) > tol.eps_compare:
        raise HopfError("GNS Gram matrix is not hermitian")
    if np.linalg.eigvalsh((G + G.conj().T) / 2)[0] <= tol.eps_kernel:
        raise HopfError("GNS Gram matrix is not positive definite; Haar state is not faithful")
    return G


def element_is_positive(x, H: HopfData, tol: Tolerance = DEFAULT_TOL) -> bool:
    return H.algebra.is_positive(x, tol)


def function_algebra(group_table, name: str = "") -> HopfData:
    """C(G) with the point-mass basis."""
    T = validate_group(group_table)
    n = T.shape[0]
    inv = inverses(T)
    mult = np.zeros((n, n, n))
    comult = np.zeros((n, n, n))
    S = np.zeros((n, n))
    for g in range(n):
        mult[g, g, g] = 1
        S[inv[g], g] = 1
    for s in range(n):
        for t in range(n):
            comult[T[s, t], s, t] = 1
    counit = np.zeros(n)
    counit[0] = 1
    return HopfData(mult, np.ones(n), np.eye(n), comult, counit, S, np.full(n, 1 / n),
                    tuple(f"d{g}" for g in range(n)), name or f"C(G{n})")


def group_algebra(group_table, name: str = "") -> HopfData:
    """C[G] with the basis of translation operators lambda_g."""
    T = validate_group(group_table)
    n = T.shape[0]
    inv = inverses(T)
    mult = np.zeros((n, n, n))
    comult = np.zeros((n, n, n))
    S = np.zeros((n, n))
    J = np.zeros((n, n))
    for g in range(n):
        comult[g, g, g] = 1
        S[inv[g], g] = 1
        J[inv[g], g] = 1
        for h in range(n):
            mult[g, h, T[g, h]] = 1
    unit = np.zeros(n)
    unit[0] = 1
    haar = unit.copy()
    return HopfData(mult, unit, J, comult, np.ones(n), S, haar,
                    tuple(f"l{g}" for g in range(n)), name or f"C[G{n}]")


def dual_hopf(H: HopfData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    """The dual Hopf *-algebra on the dual basis.

    Products and coproducts swap roles; ``phi*(a) = conj(phi(S(a)*))``.
    """
    check_hopf(H, tol)
    mult = H.comult.transpose(1, 2, 0)
    comult = H.mult.transpose(2, 0, 1)
    invol = (H.invol.conj() @ H.antipode).T
    D = HopfData(mult, H.counit, invol, comult, H.unit, H.antipode.T,
                 np.zeros(H.dim), tuple(f"^{l}" for l in H.labels), f"dual({H.name})")
    D = D.replace(haar=compute_haar(D, tol))
    return check_hopf(D, tol)


def solve_antipode(mult, unit, comult, counit) -> np.ndarray:
    """Antipode from the other structure maps via ``m(S (x) id)Gamma = eps 1``."""
    mult, comult = np.asarray(mult, dtype=complex), np.asarray(comult, dtype=complex)
    d = mult.shape[0]
    # sum_{j,k,a} C[i,j,k] S[a,j] m[a,k,l] = u_l eps_i, linear in S[a, j]
    A = np.einsum("ijk,akl->ilaj", comult, mult).reshape(d * d, d * d)
    b = np.outer(counit, unit).reshape(-1)
    S, *_ = np.linalg.lstsq(A, b, rcond=None)
    return S.reshape(d, d)
