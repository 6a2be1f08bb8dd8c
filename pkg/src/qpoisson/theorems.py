"""Checkers for the triviality theorems on a (quantum group, action, state) triple.

Each checker returns a :class:`Verdict`. Checks whose hypotheses fail are
``not applicable`` rather than passing vacuously, so a report shows which
statements were actually exercised.

At finite dimension several hypotheses are automatic: every measure is
spread out, every state on the harmonic algebra is normal and extends, the
Cesaro projection is normal, and every operator is compact. The conclusions
then all collapse to ``dim H = 1`` for ergodic actions and non-degenerate
states, which is what those checkers test.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .actions import ActionData, comultiplication_as_action, fixed_point_algebra, invariant_projection, \
    self_adjoint_spanning
from .algebra import ModuleAlgebra
from .harmonic import (HarmonicSpace, MarkovOperator, find_invariant_state, harmonic_space,
                       invariance_residual, is_faithful_positive_map, markov_operator,
                       orbit_map_identities, phi_omega, projection_report)
from .measures import Functional, convolve, from_density, is_state, random_state, \
    support_ranks_of_cesaro_sums
from .numeric import DEFAULT_TOL, Tolerance, kernel_basis, maxabs, opnorm

PASS, FAIL, NA = "pass", "fail", "not applicable"

NONDEGENERACY_NOTE = ("modeling choice: non-degenerate means that Cesaro sums of convolution powers "
                      "have full support (classically, the support generates the group)")


@dataclass
class Verdict:
    status: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.status, **_jsonable(self.detail)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


class ScenarioAnalysis:
    """Lazily computed ingredients shared by the checkers for one triple."""

    def __init__(self, alpha: ActionData, mu: Functional, tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                 n_random_states: int = 20):
        self.alpha = alpha
        self.mu = mu
        self.tol = tol
        self.seed = seed
        self.n_random_states = n_random_states

    @property
    def group(self):
        return self.alpha.parent

    @property
    def N(self) -> ModuleAlgebra:
        return self.alpha.target

    @cached_property
    def is_state(self) -> bool:
        return is_state(self.mu, self.tol)

    @cached_property
    def fixed_points(self) -> np.ndarray:
        return fixed_point_algebra(self.alpha, self.tol)

    @property
    def ergodic(self) -> bool:
        return self.fixed_points.shape[1] == 1

    @cached_property
    def support_ranks(self) -> list[int]:
        # supports are only defined for positive functionals
        return support_ranks_of_cesaro_sums(self.mu, self.tol) if self.is_state else []

    @property
    def nondegenerate(self) -> bool:
        return bool(self.support_ranks) and self.support_ranks[-1] == self.group.dim

    @cached_property
    def markov(self) -> MarkovOperator:
        return markov_operator(self.mu, self.alpha, self.tol)

    @cached_property
    def harmonic(self) -> HarmonicSpace:
        return harmonic_space(self.markov, self.tol)

    @cached_property
    def self_action(self) -> ActionData:
        return comultiplication_as_action(self.group)

    @cached_property
    def group_markov(self) -> MarkovOperator:
        return markov_operator(self.mu, self.self_action, self.tol)

    @cached_property
    def group_harmonic(self) -> HarmonicSpace:
        return harmonic_space(self.group_markov, self.tol)

    @property
    def hypotheses(self) -> bool:
        """Ergodic action and non-degenerate state (spread-out is automatic)."""
        return self.is_state and self.ergodic and self.nondegenerate

    @cached_property
    def is_self_action(self) -> bool:
        A, N = self.group, self.N
        return (A.dim == N.dim and maxabs(self.alpha.tensor - A.comult) <= self.tol.eps_compare
                and maxabs(N.mult - A.mult) <= self.tol.eps_compare)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def summary(self) -> dict:
        out = {
            "dim_A": self.group.dim,
            "dim_N": self.N.dim,
            "is_state": self.is_state,
            "ergodic": self.ergodic,
            "dim_fixed_point_algebra": self.fixed_points.shape[1],
            "nondegenerate": self.nondegenerate,
            "support_ranks": self.support_ranks,
            "nondegeneracy_definition": NONDEGENERACY_NOTE,
            "spread_out": True,
        }
        if self.is_state:
            out["dim_H"] = self.harmonic.dim
            out["dim_H_self_action"] = self.group_harmonic.dim
        return out


def _not_state(an: ScenarioAnalysis) -> Verdict | None:
    if not an.is_state:
        return Verdict(NA, {"reason": "measure is not a state"})
    return None


def check_coaction_intertwining(an: ScenarioAnalysis) -> Verdict:
    """``alpha Phi^mu_alpha = (Phi_mu (x) id) alpha``."""
    dev = an.markov.checks["intertwining"]
    return Verdict(_status(dev <= an.tol.eps_compare), {"deviation": dev})


def check_orbit_map_identities(an: ScenarioAnalysis) -> Verdict:
    rng = an.rng()
    worst: dict[str, float] = {}
    states = [random_state(an.N, rng) for _ in range(3)] + [Functional(an.N, an.N.trace)]
    for omega in states:
        for k, v in orbit_map_identities(omega, an.mu, an.alpha).items():
            worst[k] = max(worst.get(k, 0.0), v)
    ok = all(worst[k] <= an.tol.eps_compare for k in ("covariance", "intertwining", "predual"))
    return Verdict(_status(ok), {"deviations": worst,
                                 "note": "'literal' is reported only; it holds when left and right "
                                         "convolution agree"})


def check_harmonic_characterization(an: ScenarioAnalysis) -> Verdict:
    """Harmonic elements are exactly those x with alpha(x) harmonic for Phi_mu (x) id."""
    if (v := _not_state(an)) is not None:
        return v
    A, N, M = an.group, an.N, an.alpha.matrix
    lifted = np.kron(an.group_markov.matrix, np.eye(N.dim))
    R = kernel_basis((lifted - np.eye(A.dim * N.dim)) @ M, an.tol, max(1.0, opnorm(lifted)) * opnorm(M))
    L = an.harmonic.basis
    PL = L @ L.conj().T
    PR = R @ R.conj().T
    res = max(maxabs(R - PL @ R) if R.size else 0.0, maxabs(L - PR @ L) if L.size else 0.0)
    ok = R.shape[1] == L.shape[1] and res <= an.tol.eps_compare
    return Verdict(_status(ok), {"dim_left": L.shape[1], "dim_right": R.shape[1], "residual": res})


def check_ergodic_transfer(an: ScenarioAnalysis) -> Verdict:
    """Trivial harmonics on the quantum group transfer to every ergodic action."""
    if (v := _not_state(an)) is not None:
        return v
    if not an.ergodic or an.group_harmonic.dim != 1:
        return Verdict(NA, {"ergodic": an.ergodic, "dim_H_self_action": an.group_harmonic.dim})
    return Verdict(_status(an.harmonic.dim == 1), {"dim_H": an.harmonic.dim})


def check_faithful_orbit_maps(an: ScenarioAnalysis) -> Verdict:
    """Ergodicity iff every phi_omega (omega a nonzero positive functional) is faithful.

    Ergodic: phi_nu is faithful for random and basis-derived states nu.
    Not ergodic: a state supported on an invariant projection e gives
    ``phi_omega(1 - e) = 0``.
    """
    N, A = an.N, an.group.algebra
    if an.ergodic:
        rng = an.rng()
        states = [random_state(N, rng) for _ in range(an.n_random_states)]
        for i in range(N.dim):
            b = N.basis(i)
            rho = N.mul(N.star(b), b)
            states.append(from_density(N, rho / N.tau(rho)))
        faithful = [is_faithful_positive_map(phi_omega(nu, an.alpha), N, A, an.tol) for nu in states]
        return Verdict(_status(all(faithful)), {"direction": "ergodic => faithful",
                                                "states_tested": len(states),
                                                "non_faithful": int(len(faithful) - sum(faithful))})
    e = invariant_projection(an.alpha, an.tol)
    omega = from_density(N, e / N.tau(e))
    one_minus_e = N.unit - e
    value = phi_omega(omega, an.alpha) @ one_minus_e
    faithful = is_faithful_positive_map(phi_omega(omega, an.alpha), N, A, an.tol)
    norm = maxabs(value)
    ok = norm <= 1e-10 and not faithful and is_state(omega, an.tol)
    return Verdict(_status(ok), {"direction": "not ergodic => witness", "phi_omega(1-e)": norm,
                                 "witness_faithful": faithful, "projection": e})


def check_maximum_principle(an: ScenarioAnalysis) -> Verdict:
    """Self-adjoint harmonic elements attaining their norm on a state are scalar."""
    if not an.hypotheses:
        return Verdict(NA, {"ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
    N, H = an.N, an.harmonic
    items = []
    ok = True
    for x in self_adjoint_spanning(N, H.basis, an.tol):
        X = N.represent(x)
        ev, vecs = np.linalg.eigh(X)
        k = int(np.argmax(np.abs(ev)))
        v = vecs[:, k]
        attained = float(abs(v.conj() @ X @ v))
        scalar, res = N.is_scalar(x, an.tol)
        ok &= scalar
        items.append({"norm": N.norm(x), "attained_on_vector_state": attained, "scalar_residual": res})
    return Verdict(_status(ok), {"self_adjoint_elements": items})


def _collapsed(an: ScenarioAnalysis, note: str) -> Verdict:
    if not an.hypotheses:
        return Verdict(NA, {"ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
    return Verdict(_status(an.harmonic.dim == 1), {"dim_H": an.harmonic.dim, "note": note})


def check_state_extension(an: ScenarioAnalysis) -> Verdict:
    return _collapsed(an, "every state on H extends normally at finite dimension; only triviality is tested")


def check_normal_projection(an: ScenarioAnalysis) -> Verdict:
    return _collapsed(an, "the Cesaro projection is automatically normal at finite dimension")


def check_compact_triviality(an: ScenarioAnalysis) -> Verdict:
    return _collapsed(an, "every operator is compact at finite dimension")


def check_finite_dimensional_triviality(an: ScenarioAnalysis) -> Verdict:
    return _collapsed(an, "finite-dimensional N")


def check_harmonic_subalgebra(an: ScenarioAnalysis) -> Verdict:
    """If H is a subalgebra of N then it is trivial."""
    is_sub, dev = an.harmonic.is_subalgebra(an.tol)
    if not an.hypotheses or not is_sub:
        return Verdict(NA, {"ergodic": an.ergodic, "nondegenerate": an.nondegenerate, "subalgebra": is_sub})
    return Verdict(_status(an.harmonic.dim == 1), {"dim_H": an.harmonic.dim})


def multiplicative_harmonics(an: ScenarioAnalysis) -> np.ndarray:
    """Basis of ``{x in H : x* x in H and x x* in H}``.

    For a unital completely positive Phi this set equals H intersected with
    the multiplicative domain ``{a : Phi(ab) = Phi(a)Phi(b), Phi(ba) = Phi(b)Phi(a) for all b}``,
    which is a linear condition on a.
    """
    N, T = an.N, an.markov.matrix
    d = N.dim
    rows = [T - np.eye(d)]
    for j in range(d):
        b = N.basis(j)
        Tb = T @ b
        # a -> Phi(a b) - Phi(a) Phi(b)   and   a -> Phi(b a) - Phi(b) Phi(a)
        rows.append(T @ N.rmul(b) - N.rmul(Tb) @ T)
        rows.append(T @ N.lmul(b) - N.lmul(Tb) @ T)
    return kernel_basis(np.vstack(rows), an.tol, max(1.0, opnorm(T)) ** 2)


def check_multiplicative_domain(an: ScenarioAnalysis) -> Verdict:
    """Harmonic x with x*x and xx* harmonic is scalar."""
    N, H = an.N, an.harmonic
    S = multiplicative_harmonics(an)
    # direct quadratic check on the basis found
    res = 0.0
    for i in range(S.shape[1]):
        x = S[:, i]
        res = max(res, H.contains(x), H.contains(N.mul(N.star(x), x)), H.contains(N.mul(x, N.star(x))))
    detail = {"dim_multiplicative_harmonics": S.shape[1], "quadratic_residual": res}
    if not an.hypotheses:
        detail.update({"ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
        return Verdict(NA, detail)
    ok = S.shape[1] == 1 and res <= an.tol.eps_compare
    return Verdict(_status(ok), detail)


def check_action_restriction(an: ScenarioAnalysis) -> Verdict:
    """If slices ``(omega (x) id) alpha(x)`` of harmonic x stay harmonic, H is trivial."""
    if not an.hypotheses:
        return Verdict(NA, {"ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
    A, H = an.group, an.harmonic
    res = 0.0
    for j in range(A.dim):
        slice_j = an.alpha.tensor[:, j, :].T  # (e^_j (x) id) alpha
        for i in range(H.dim):
            res = max(res, H.contains(slice_j @ H.basis[:, i]))
    holds = res <= an.tol.eps_compare
    if not holds:
        return Verdict(PASS, {"hypothesis_holds": False, "residual": res,
                              "note": "hypothesis fails, conclusion not required"})
    return Verdict(_status(H.dim == 1), {"hypothesis_holds": True, "dim_H": H.dim})


def is_central(mu: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    A = mu.parent
    for j in range(A.dim):
        e = Functional(A, np.eye(A.dim)[j])
        if maxabs(convolve(mu, e, tol).coords - convolve(e, mu, tol).coords) > tol.eps_compare:
            return False
    return True


def check_central_measure(an: ScenarioAnalysis) -> Verdict:
    central = is_central(an.mu, an.tol)
    if not an.hypotheses or not central:
        return Verdict(NA, {"central": central, "ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
    return Verdict(_status(an.harmonic.dim == 1), {"central": True, "dim_H": an.harmonic.dim})


def check_invariant_state(an: ScenarioAnalysis) -> Verdict:
    """An invariant state forces trivial harmonics."""
    Omega = find_invariant_state(an.alpha, an.tol)
    if Omega is None:
        return Verdict(NA, {"reason": "no invariant state found (inconclusive search)"})
    res = invariance_residual(Omega, an.alpha)
    detail = {"invariant_state": Omega.coords, "invariance_residual": res,
              "is_state": is_state(Omega, an.tol)}
    if not an.hypotheses:
        detail.update({"ergodic": an.ergodic, "nondegenerate": an.nondegenerate})
        return Verdict(NA, detail)
    ok = res <= 1e-10 and detail["is_state"] and an.harmonic.dim == 1
    detail["dim_H"] = an.harmonic.dim
    return Verdict(_status(ok), detail)


def is_factor(N: ModuleAlgebra, tol: Tolerance = DEFAULT_TOL) -> bool:
    d = N.dim
    rows = [N.lmul(N.basis(i)) - N.rmul(N.basis(i)) for i in range(d)]
    return kernel_basis(np.vstack(rows), tol, 1.0).shape[1] == 1


def check_finite_factor(an: ScenarioAnalysis) -> Verdict:
    """Ergodic actions on a factor: x = sum_g mu(g) alpha_g(x) forces x scalar.

    Our coaction convention yields ``sum_g mu(g) alpha_{g^-1}``, so the
    statement is checked for the pushforward of mu under the antipode.
    """
    if not an.hypotheses or not is_factor(an.N, an.tol):
        return Verdict(NA, {"factor": is_factor(an.N, an.tol), "ergodic": an.ergodic,
                            "nondegenerate": an.nondegenerate})
    A, N = an.group, an.N
    inverted = Functional(A, A.antipode.T @ an.mu.coords)
    Phi = an.alpha.slice_left(inverted.coords)
    fixed = kernel_basis(Phi - np.eye(N.dim), an.tol, max(1.0, opnorm(Phi))).shape[1]
    trace_res = invariance_residual(Functional(N, N.trace), an.alpha)
    ok = fixed == 1 and trace_res <= 1e-10 and is_state(inverted, an.tol)
    return Verdict(_status(ok), {"dim_fixed_inverted": fixed, "trace_invariance_residual": trace_res})


def check_dual_choquet_deny(an: ScenarioAnalysis) -> Verdict:
    """Cocommutative quantum groups acting on themselves: non-degenerate states have trivial harmonics."""
    if not (an.is_self_action and an.group.is_cocommutative(an.tol) and an.is_state and an.nondegenerate):
        return Verdict(NA, {"self_action": an.is_self_action,
                            "cocommutative": an.group.is_cocommutative(an.tol),
                            "nondegenerate": an.nondegenerate})
    return Verdict(_status(an.harmonic.dim == 1), {"dim_H": an.harmonic.dim})


def check_markov_faithful(an: ScenarioAnalysis) -> Verdict:
    """The convolution operator of a state is faithful on the quantum group."""
    if (v := _not_state(an)) is not None:
        return v
    A = an.group.algebra
    ok = is_faithful_positive_map(an.group_markov.matrix, A, A, an.tol)
    return Verdict(_status(ok), {})


def check_cesaro_projection(an: ScenarioAnalysis) -> Verdict:
    """E idempotent, absorbing, unital and completely positive.

    The iterated Cesaro mean at n = 10^4 is compared with E through the exact
    O(1/n) remainder; the raw deviation is reported alongside.
    """
    rep = projection_report(an.markov, an.harmonic)
    eps = an.tol.eps_compare
    ok = (max(rep["idempotent"], rep["Phi E = E"], rep["E Phi = E"], rep["unital"]) <= eps
          and rep["choi_min_eigenvalue"] >= -an.tol.eps_psd
          and rep["cesaro_remainder_mismatch"] <= eps)
    return Verdict(_status(ok), rep)


def check_choi_effros(an: ScenarioAnalysis) -> Verdict:
    H = an.harmonic
    is_sub, _ = H.is_subalgebra(an.tol)
    detail = dict(H.deviations)
    detail["is_subalgebra"] = is_sub
    ok = max(H.deviations.values()) <= an.tol.eps_compare
    if is_sub:
        detail["ambient_product_residual"] = H.ambient_product_residual()
        ok &= detail["ambient_product_residual"] <= an.tol.eps_compare
    return Verdict(_status(ok), detail)


def check_global_prediction(an: ScenarioAnalysis) -> Verdict:
    """Ergodic action + non-degenerate state => dim H = 1."""
    return _collapsed(an, NONDEGENERACY_NOTE)


CHECKS = {
    "coaction intertwining": check_coaction_intertwining,
    "orbit map identities": check_orbit_map_identities,
    "harmonic characterization": check_harmonic_characterization,
    "ergodic transfer": check_ergodic_transfer,
    "faithful orbit maps": check_faithful_orbit_maps,
    "maximum principle": check_maximum_principle,
    "state extension": check_state_extension,
    "normal projection": check_normal_projection,
    "harmonic subalgebra": check_harmonic_subalgebra,
    "multiplicative domain": check_multiplicative_domain,
    "compact triviality": check_compact_triviality,
    "finite dimensional triviality": check_finite_dimensional_triviality,
    "action restriction": check_action_restriction,
    "central measure": check_central_measure,
    "invariant state": check_invariant_state,
    "finite factor": check_finite_factor,
    "dual Choquet-Deny": check_dual_choquet_deny,
    "markov faithful": check_markov_faithful,
    "cesaro projection": check_cesaro_projection,
    "Choi-Effros algebra": check_choi_effros,
    "global prediction": check_global_prediction,
}


def run_theorem_suite(alpha: ActionData, mu: Functional, tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> dict:
    an = ScenarioAnalysis(alpha, mu, tol, seed)
    if not an.is_state:
        # every statement assumes a state; Phi need not even be power bounded otherwise
        verdicts = {name: Verdict(NA, {"reason": "measure is not a state"}) for name in CHECKS}
    else:
        verdicts = {name: check(an) for name, check in CHECKS.items()}
    return {"summary": an.summary(), "verdicts": verdicts, "analysis": an}
