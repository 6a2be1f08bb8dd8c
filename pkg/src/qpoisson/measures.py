"""States and measures on a finite quantum group.

At finite dimension every measure is normal, so a functional is just its
vector of values ``mu(e_i)`` on the basis of the parent algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ModuleAlgebra
from .checks import VerificationReport
from .hopf import HopfData
from .numeric import DEFAULT_TOL, Tolerance, maxabs, rank


class MeasureError(ValueError):
    pass


def _algebra(parent) -> ModuleAlgebra:
    return parent.algebra if isinstance(parent, HopfData) else parent


@dataclass(frozen=True, eq=False)
class Functional:
    parent: HopfData | ModuleAlgebra
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=complex)
        if c.shape != (_algebra(self.parent).dim,):
            raise MeasureError(f"functional has {c.shape} coordinates, parent has dimension {_algebra(self.parent).dim}")
        if not np.all(np.isfinite(c)):
            raise MeasureError("functional has non-finite coordinates")
        object.__setattr__(self, "coords", c)

    def __call__(self, x) -> complex:
        return complex(self.coords @ np.asarray(x, dtype=complex))

    def __add__(self, other: "Functional") -> "Functional":
        _same_parent(self, other)
        return Functional(self.parent, self.coords + other.coords)

    def __mul__(self, c) -> "Functional":
        return Functional(self.parent, c * self.coords)

    __rmul__ = __mul__


def _same_parent(mu: Functional, nu: Functional):
    if mu.parent is not nu.parent:
        raise MeasureError("functionals live on different algebras")


def counit(H: HopfData) -> Functional:
    return Functional(H, H.counit)


def haar(H: HopfData) -> Functional:
    return Functional(H, H.haar)


def point_mass(H: HopfData, g: int) -> Functional:
    """Evaluation at the group element g on a function algebra C(G)."""
    c = np.zeros(H.dim)
    c[g] = 1
    return Functional(H, c)


def from_density(parent, rho) -> Functional:
    """The functional ``a -> tr(rho a)`` for the parent's trace."""
    A = _algebra(parent)
    return Functional(parent, np.einsum("i,ijk,k->j", np.asarray(rho, dtype=complex), A.mult, A.trace))


def verify_state(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    A = _algebra(mu.parent)
    rep = VerificationReport("state", tol.eps_compare)
    rep.add("normalization", abs(mu(A.unit) - 1))
    P = A.sesquilinear(mu.coords)
    rep.add("hermitian", maxabs(P - P.conj().T))
    ev = np.linalg.eigvalsh((P + P.conj().T) / 2)
    # eps_psd governs positivity; rescale so the report threshold applies
    rep.add("positivity", max(0.0, -ev[0]) * tol.eps_compare / tol.eps_psd)
    return rep


def is_state(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    return verify_state(mu, tol).ok


def is_positive_functional(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    rep = verify_state(mu, tol)
    return "hermitian" not in rep.failures and "positivity" not in rep.failures


def convolve(mu: Functional, nu: Functional, tol: Tolerance = DEFAULT_TOL) -> Functional:
    """``mu * nu = (mu (x) nu) Gamma``."""
    _same_parent(mu, nu)
    H = mu.parent
    if not isinstance(H, HopfData):
        raise MeasureError("convolution needs a quantum group")
    C = H.comult
    # mu (id (x) nu) Gamma  and  nu (mu (x) id) Gamma
    via_right = np.einsum("ij,j->i", np.einsum("ijk,k->ij", C, nu.coords), mu.coords)
    via_left = np.einsum("ik,k->i", np.einsum("ijk,j->ik", C, mu.coords), nu.coords)
    dev = maxabs(via_right - via_left)
    assert dev <= tol.eps_compare * max(1.0, maxabs(via_right)), f"convolution formulas disagree by {dev:.3e}"
    return Functional(H, via_right)


def power(mu: Functional, n: int) -> Functional:
    """n-fold convolution power, left-associated."""
    if n < 1:
        raise MeasureError("convolution power needs n >= 1")
    out = mu
    for _ in range(n - 1):
        out = convolve(out, mu)
    return out


def density(mu: Functional) -> np.ndarray:
    """The element rho with ``mu(a) = h(rho a)`` for all a (h the parent trace)."""
    A = _algebra(mu.parent)
    # h(rho e_i) = sum_j rho_j h(e_j e_i)
    B = np.einsum("jik,k->ij", A.mult, A.trace)
    try:
        return np.linalg.solve(B, mu.coords)
    except np.linalg.LinAlgError as exc:
        raise MeasureError("trace pairing is singular") from exc


def support_rank(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank of left multiplication by the density of mu (full iff mu faithful)."""
    if not is_positive_functional(mu, tol):
        raise MeasureError("support is only defined for positive functionals")
    A = _algebra(mu.parent)
    return rank(A.lmul(density(mu)), tol)


def support_ranks_of_cesaro_sums(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """Support ranks of ``(1/N) sum_{n<=N} mu^n`` for N = 1 .. 2d."""
    d = _algebra(mu.parent).dim
    ranks = []
    acc = np.zeros(d, dtype=complex)
    p = mu
    for N in range(1, 2 * d + 1):
        acc = acc + p.coords
        ranks.append(support_rank(Functional(mu.parent, acc / N), tol))
        if ranks[-1] == d:
            break
        p = convolve(p, mu)
    return ranks


def is_nondegenerate(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Full support of the Cesaro sums of convolution powers.

    Classically this says the support of mu generates the group.
    """
    return support_ranks_of_cesaro_sums(mu, tol)[-1] == _algebra(mu.parent).dim


def is_spread_out(mu: Functional) -> bool:
    """Always true: every finite-dimensional measure is absolutely continuous."""
    return True


def spread_out_decomposition(mu: Functional) -> dict:
    zero = Functional(mu.parent, np.zeros_like(mu.coords))
    return {"power": 1, "absolutely_continuous": mu, "singular": zero}


def random_state(parent, rng: np.random.Generator) -> Functional:
    """A state with density ``a* a / tr(a* a)`` for a Gaussian random a."""
    A = _algebra(parent)
    a = rng.normal(size=A.dim) + 1j * rng.normal(size=A.dim)
    rho = A.mul(A.star(a), a)
    return from_density(parent, rho / A.tau(rho))
