"""The built-in scenario corpus.

Scenarios are generated as JSON documents, the same format as scenario
files, so the battery exercises the loader as well. Expected annotations
come from elementary group theory, not from the harmonic pipeline:

* C(G) acting on a G-set X with a probability vector mu: the walk moves
  within orbits of the subgroup L generated by supp(mu), and on each such
  orbit it is irreducible, so dim H = number of L-orbits on X.
* C[G] acting on itself with a positive-definite u: the Markov operator is
  diagonal, ``lambda_g -> u(g) lambda_g``, so dim H = |{g : u(g) = 1}|.
"""
from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .groups import coset_action, generated_subgroup, small_groups, subgroups

SCENARIO_DIR = Path(__file__).resolve().parents[2] / "scenarios"


def _pairs(values) -> list:
    v = np.asarray(values, dtype=complex)
    return np.stack([v.real, v.imag], axis=-1).round(15).tolist()


def minimal_generators(T) -> list[int]:
    n = np.asarray(T).shape[0]
    for k in range(0, n):
        for gens in itertools.combinations(range(1, n), k):
            if len(generated_subgroup(T, list(gens))) == n:
                return list(gens)
    return []


def linear_characters(T) -> list[np.ndarray]:
    """All homomorphisms G -> C^x, found by brute force over a generating set."""
    T = np.asarray(T)
    n = T.shape[0]
    gens = minimal_generators(T)
    out = []
    for exps in itertools.product(range(n), repeat=len(gens)):
        k = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            g = frontier.pop()
            for s, e in zip(gens, exps):
                h = int(T[g, s])
                val = (k[g] + e) % n
                if h not in k:
                    k[h] = val
                    frontier.append(h)
                elif k[h] != val:
                    ok = False
                    break
        if ok and all((k[int(T[a, b])] - k[a] - k[b]) % n == 0 for a in range(n) for b in range(n)):
            chi = np.exp(2j * np.pi * np.array([k[g] for g in range(n)]) / n)
            if not any(np.allclose(chi, c) for c in out):
                out.append(chi)
    return out


def orbit_count(act, elements) -> int:
    """Number of orbits of the subgroup ``elements`` on the points of ``act``."""
    act = np.asarray(act)
    seen, count = set(), 0
    for x in range(act.shape[1]):
        if x not in seen:
            count += 1
            seen |= {int(act[g, x]) for g in elements}
    return count


def _classical(gname, T, action, act, weights, label, tags):
    n = T.shape[0]
    support = [g for g in range(n) if weights[g] > 0]
    L = generated_subgroup(T, support)
    doc = {
        "schema": 1,
        "name": f"C({gname}) {label}",
        "quantum_group": {"construct": "function_algebra", "group": {"named": gname}},
        "action": action,
        "measure": _measure_doc(weights),
        "expected": {"ergodic": orbit_count(act, range(n)) == 1,
                     "nondegenerate": len(L) == n,
                     "dim_H": orbit_count(act, L)},
        "tags": ["classical"] + tags,
    }
    return doc


def _measure_doc(weights):
    w = np.asarray(weights, dtype=float)
    nz = np.flatnonzero(w)
    if len(nz) == 1 and nz[0] == 0:
        return {"construct": "counit"}
    if len(nz) == 1:
        return {"construct": "point_mass", "element": int(nz[0])}
    if np.allclose(w, 1 / len(w)):
        return {"construct": "haar"}
    return {"construct": "group_measure", "weights": w.tolist()}


def _uniform_on(n, elements):
    w = np.zeros(n)
    w[list(elements)] = 1 / len(elements)
    return w


def classical_measures(gname, T) -> list[tuple[str, np.ndarray]]:
    """Counit, Haar, point masses at generators and at one non-generator, subgroup-uniform."""
    n = T.shape[0]
    out = [("counit", _uniform_on(n, [0])), ("Haar", np.full(n, 1 / n))]
    gens = minimal_generators(T)
    for g in gens:
        out.append((f"point mass {g}", _uniform_on(n, [g])))
    if len(gens) > 1:
        out.append(("uniform on generators", _uniform_on(n, gens)))
    lazy = _uniform_on(n, [0] + gens)
    out.append(("lazy generators", lazy))
    proper = [K for K in subgroups(T) if 1 < len(K) < n]
    for K in proper[:2]:
        out.append((f"uniform on subgroup {K}", _uniform_on(n, K)))
    return out


def classical_scenarios() -> list[dict]:
    docs = []
    for gname, T in small_groups().items():
        n = T.shape[0]
        measures = classical_measures(gname, T)
        actions = [("acting on itself", {"construct": "comultiplication"}, T, ["self"])]
        for K in subgroups(T):
            if 1 < len(K) < n:
                act = coset_action(T, K)
                actions.append((f"on cosets of {K}", {"construct": "cosets", "subgroup": K}, act,
                                ["gset", "transitive"]))
        proper = [K for K in subgroups(T) if 1 < len(K) < n]
        if proper:
            # two orbits: G/K alongside a fixed point, at most 8 points
            K = max(proper, key=len)
            act_k = coset_action(T, K)
            if act_k.shape[1] + 1 <= 8:
                act = np.hstack([act_k, np.full((n, 1), act_k.shape[1])])
                actions.append(("on G/K plus a fixed point", {"construct": "group_set",
                                "points": int(act.shape[1]), "act": act.tolist()}, act, ["gset", "two-orbit"]))
        if n > 1:
            act = np.tile(np.arange(3), (n, 1))
            actions.append(("trivially on 3 points", {"construct": "group_set", "points": 3, "act": act.tolist()},
                            act, ["gset", "trivial"]))
        for alabel, adoc, act, atags in actions:
            ms = measures if atags == ["self"] or gname in ("S3", "D4", "Q8", "Z4") else measures[1:3]
            for mlabel, w in ms:
                docs.append(_classical(gname, T, adoc, act, w, f"{alabel}, {mlabel}", atags))
    return docs


def _dual_doc(gname, u, label, fixed, nondeg, tags=()):
    return {
        "schema": 1,
        "name": f"C[{gname}] {label}",
        "quantum_group": {"construct": "group_algebra", "group": {"named": gname}},
        "action": {"construct": "comultiplication"},
        "measure": {"construct": "positive_definite", "values": _pairs(u)},
        "expected": {"ergodic": True, "nondegenerate": nondeg, "dim_H": fixed},
        "tags": ["group algebra"] + list(tags),
    }


def group_algebra_scenarios() -> list[dict]:
    docs = []
    for gname, T in small_groups().items():
        n = T.shape[0]
        delta = _uniform_on(n, [0])
        docs.append(_dual_doc(gname, np.ones(n), "counit", n, n == 1))
        docs.append(_dual_doc(gname, delta, "Haar (regular character)", 1, True))
        docs.append(_dual_doc(gname, (1 + delta) / 2, "half counit, half Haar", 1, True,
                              ["trivial fixed set"]))
        for K in subgroups(T):
            if 1 < len(K) < n:
                u = np.zeros(n)
                u[K] = 1
                docs.append(_dual_doc(gname, u, f"indicator of subgroup {K}", len(K), False, ["subgroup indicator"]))
        for i, chi in enumerate(linear_characters(T)):
            if np.allclose(chi, 1):
                continue
            kernel = int(np.sum(np.isclose(chi, 1)))
            docs.append(_dual_doc(gname, (1 + chi) / 2, f"half counit, half character {i}", kernel,
                                  kernel == 1, ["character"]))
    return docs


def quantum_scenarios() -> list[dict]:
    """Pauli conjugation, non-ergodic automorphism actions, and a dual construction."""
    docs = []
    z2sq = {"construct": "function_algebra", "group": {"named": "Z2xZ2"}}
    for label, w, nondeg, dim in [("uniform", [.25] * 4, True, 1), ("point mass at X", [0, 0, 1, 0], False, 2),
                                  ("lazy X and Z", [.5, .25, .25, 0], True, 1)]:
        docs.append({"schema": 1, "name": f"Pauli conjugation on M2, {label}", "quantum_group": z2sq,
                     "action": {"construct": "pauli"},
                     "measure": _measure_doc(w) if label != "uniform" else {"construct": "haar"},
                     "expected": {"ergodic": True, "nondegenerate": nondeg, "dim_H": dim},
                     "tags": ["automorphism", "pauli"]})
    # Z3 acting on M3 through the clock matrix: the diagonal is fixed
    from .actions import conjugation_automorphism
    w3 = np.exp(2j * np.pi / 3)
    autos = [conjugation_automorphism(np.diag([1, w3 ** k, w3 ** (2 * k)])) for k in range(3)]
    docs.append({"schema": 1, "name": "clock conjugation of Z3 on M3, Haar",
                 "quantum_group": {"construct": "function_algebra", "group": {"named": "Z3"}},
                 "action": {"construct": "automorphisms", "target": {"matrix_algebra": 3},
                            "automorphisms": _pairs(autos)},
                 "measure": {"construct": "haar"},
                 "expected": {"ergodic": False, "nondegenerate": True, "dim_H": 3},
                 "tags": ["automorphism"]})
    eye = np.eye(4)
    docs.append({"schema": 1, "name": "trivial action of Z2 on M2, point mass",
                 "quantum_group": {"construct": "function_algebra", "group": {"named": "Z2"}},
                 "action": {"construct": "automorphisms", "target": {"matrix_algebra": 2},
                            "automorphisms": _pairs([eye, eye])},
                 "measure": {"construct": "point_mass", "element": 1},
                 "expected": {"ergodic": False, "nondegenerate": True, "dim_H": 4},
                 "tags": ["automorphism"]})
    # dual of C(S3): the same quantum group as C[S3] on the dual basis
    u = (1 + _uniform_on(6, [0])) / 2
    docs.append({"schema": 1, "name": "dual of C(S3), half counit half Haar",
                 "quantum_group": {"construct": "dual", "of": {"construct": "function_algebra",
                                                                "group": {"named": "S3"}}},
                 "action": {"construct": "comultiplication"},
                 "measure": {"construct": "coords", "coords": _pairs(u)},
                 "expected": {"ergodic": True, "nondegenerate": True, "dim_H": 1},
                 "tags": ["dual"]})
    return docs


def shipped_files() -> list[Path]:
    return sorted(SCENARIO_DIR.glob("*.json")) if SCENARIO_DIR.is_dir() else []


def builtin_corpus() -> list[dict]:
    docs = classical_scenarios() + group_algebra_scenarios() + quantum_scenarios()
    names = [d["name"] for d in docs]
    assert len(names) == len(set(names)), "duplicate scenario names"
    return docs
