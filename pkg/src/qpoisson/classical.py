"""Brute-force oracle for the classical convolution chain on a finite G-set.

A probability vector mu on G acting on X gives the Markov chain with
``P[x, y] = sum_{g : g.x = y} mu(g)``. Everything here is computed by
enumeration and graph reachability, without the operator-algebra pipeline,
so it can serve as an independent check of it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .checks import VerificationReport

ROW_SUM_TOL = 1e-12


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TransitionKernel:
    P: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        P = np.asarray(self.P, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise OracleError("transition matrix must be square")
        object.__setattr__(self, "P", P)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(P.shape[0])))

    def verify(self) -> VerificationReport:
        rep = VerificationReport("transition kernel", ROW_SUM_TOL)
        rep.add("row sums", float(np.max(np.abs(self.P.sum(axis=1) - 1))))
        rep.add("nonnegativity", float(max(0.0, -self.P.min())))
        return rep


def _check_action(table, act):
    table, act = np.asarray(table), np.asarray(act)
    n = table.shape[0]
    if act.shape[0] != n:
        raise OracleError("action table needs one row per group element")
    if not np.array_equal(act[0], np.arange(act.shape[1])):
        raise OracleError("identity does not act trivially")
    for g in range(n):
        for h in range(n):
            if not np.array_equal(act[table[g, h]], act[g][act[h]]):
                raise OracleError(f"not a group action at g={g}, h={h}")
    return table, act


def transition_matrix(table, n_points: int, act, mu) -> TransitionKernel:
    table, act = _check_action(table, act)
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (table.shape[0],) or mu.min() < 0 or abs(mu.sum() - 1) > ROW_SUM_TOL:
        raise OracleError("mu is not a probability vector on G")
    P = np.zeros((n_points, n_points))
    for g in range(table.shape[0]):
        for x in range(n_points):
            P[x, act[g, x]] += mu[g]
    K = TransitionKernel(P)
    K.verify().raise_if_failed()
    return K


def recurrent_classes(K: TransitionKernel) -> list[list[int]]:
    """Closed communicating classes, found by strong connectivity."""
    adj = K.P > 0
    ncomp, lab = connected_components(adj, directed=True, connection="strong")
    classes = []
    for c in range(ncomp):
        members = np.flatnonzero(lab == c)
        leaves = adj[members][:, lab != c].any()
        if not leaves:
            classes.append(sorted(int(m) for m in members))
    return sorted(classes)


def classical_harmonic(K: TransitionKernel) -> np.ndarray:
    """Basis (columns) of ``{h : P h = h}``: absorption probabilities per closed class."""
    P = K.P
    n = P.shape[0]
    classes = recurrent_classes(K)
    recurrent = sorted(x for c in classes for x in c)
    transient = [x for x in range(n) if x not in recurrent]
    basis = np.zeros((n, len(classes)))
    for j, c in enumerate(classes):
        basis[c, j] = 1
        if transient:
            Q = P[np.ix_(transient, transient)]
            r = P[np.ix_(transient, c)].sum(axis=1)
            basis[transient, j] = np.linalg.solve(np.eye(len(transient)) - Q, r)
    return basis


def generated_subgroup(table, support) -> set[int]:
    table = np.asarray(table)
    sub = {0} | {int(g) for g in support}
    while True:
        new = {int(table[a, b]) for a in sub for b in sub} - sub
        if not new:
            return sub
        sub |= new


def support_generates(table, mu) -> bool:
    mu = np.asarray(mu, dtype=float)
    support = np.flatnonzero(mu > 0)
    return len(generated_subgroup(table, support)) == np.asarray(table).shape[0]


def orbits(act) -> list[list[int]]:
    act = np.asarray(act)
    seen, out = set(), []
    for x in range(act.shape[1]):
        if x in seen:
            continue
        orb = sorted({int(y) for y in act[:, x]})
        seen |= set(orb)
        out.append(orb)
    return out


def is_transitive(act) -> bool:
    return len(orbits(act)) == 1


def cross_check(table, n_points: int, act, mu, markov_matrix, harmonic_basis,
                tol: float = 1e-10) -> dict:
    """Compare a quantum-pipeline Markov matrix and harmonic basis with the oracle.

    Convention: the Markov operator acts on coordinate column vectors of
    functions in the point-mass basis, so its matrix equals ``P`` itself.
    """
    K = transition_matrix(table, n_points, act, mu)
    Hc = classical_harmonic(K)
    Hq = np.asarray(harmonic_basis)
    matrix_dev = float(np.max(np.abs(np.asarray(markov_matrix) - K.P)))

    def proj(B):
        if B.shape[1] == 0:
            return np.zeros((n_points, n_points))
        Q, _ = np.linalg.qr(B)
        return Q @ Q.conj().T

    span_dev = float(np.max(np.abs(proj(Hc) - proj(Hq)))) if Hc.shape[1] == Hq.shape[1] else float("inf")
    return {
        "matrix_deviation": matrix_dev,
        "classical_dim": int(Hc.shape[1]),
        "quantum_dim": int(Hq.shape[1]),
        "span_deviation": span_dev,
        "recurrent_classes": recurrent_classes(K),
        "ok": matrix_dev <= tol and span_dev <= tol,
    }
