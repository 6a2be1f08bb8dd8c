"""Finite groups as multiplication tables.

A table ``T`` is an ``n x n`` integer array with ``T[g, h] = g*h``; element 0
is the identity.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


class GroupError(ValueError):
    pass


def validate_group(table) -> np.ndarray:
    T = np.asarray(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise GroupError("group table must be a non-empty square matrix")
    if not np.issubdtype(T.dtype, np.integer):
        if not np.all(np.equal(np.mod(T, 1), 0)):
            raise GroupError("group table entries must be integers")
        T = T.astype(int)
    n = T.shape[0]
    if T.min() < 0 or T.max() >= n:
        raise GroupError("group table entries out of range")
    if not (np.array_equal(T[0], np.arange(n)) and np.array_equal(T[:, 0], np.arange(n))):
        raise GroupError("element 0 is not a two-sided identity")
    if not _associative(T):
        raise GroupError("group table is not associative")
    for g in range(n):
        if len(set(T[g])) != n or len(set(T[:, g])) != n:
            raise GroupError(f"element {g} has no inverse")
    return T


def _associative(T: np.ndarray) -> bool:
    # (g h) k == g (h k) for all triples
    left = T[T[:, :, None], np.arange(T.shape[0])[None, None, :]]
    right = T[np.arange(T.shape[0])[:, None, None], T[None, :, :]]
    return bool(np.array_equal(left, right))


def inverses(T) -> np.ndarray:
    T = np.asarray(T)
    return np.array([int(np.flatnonzero(T[g] == 0)[0]) for g in range(T.shape[0])])


def is_abelian(T) -> bool:
    T = np.asarray(T)
    return bool(np.array_equal(T, T.T))


def generated_subgroup(T, gens) -> list[int]:
    """Subgroup generated by ``gens`` (brute-force closure)."""
    T = np.asarray(T)
    sub = {0}
    frontier = set(int(g) for g in gens)
    while frontier:
        sub |= frontier
        frontier = {int(T[a, b]) for a in sub for b in sub} - sub
    return sorted(sub)


def subgroups(T) -> list[list[int]]:
    """All subgroups: cyclic ones, closed under pairwise joins."""
    n = np.asarray(T).shape[0]
    found = {tuple(generated_subgroup(T, [g])) for g in range(n)}
    while True:
        joins = {tuple(generated_subgroup(T, a + b)) for a in found for b in found}
        if joins <= found:
            break
        found |= joins
    return sorted((list(s) for s in found), key=lambda s: (len(s), s))


def cyclic(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def direct_product(A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    m = B.shape[0]
    # (a, b) -> a * m + b
    return (A[:, None, :, None] * m + B[None, :, None, :]).reshape(A.shape[0] * m, -1)


def dihedral(n: int) -> np.ndarray:
    """Symmetries of the n-gon; r^k s^f is encoded as k + n*f."""
    N = 2 * n
    T = np.zeros((N, N), dtype=int)
    for x, y in itertools.product(range(N), repeat=2):
        a, f = x % n, x // n
        b, g = y % n, y // n
        k = (a + (b if f == 0 else -b)) % n
        T[x, y] = k + n * ((f + g) % 2)
    return T


def _from_matrices(gens) -> np.ndarray:
    """Table of the finite matrix group generated by ``gens``; identity first."""
    d = gens[0].shape[0]
    elems = [np.eye(d, dtype=complex)]
    frontier = list(gens)
    while frontier:
        new = []
        for m in frontier:
            if not any(np.allclose(m, e) for e in elems):
                elems.append(m)
                new.append(m)
        frontier = [a @ b for a in new for b in elems] + [b @ a for a in new for b in elems]
        frontier = [m for m in frontier if not any(np.allclose(m, e) for e in elems)]
    n = len(elems)
    T = np.zeros((n, n), dtype=int)
    for i, j in itertools.product(range(n), repeat=2):
        p = elems[i] @ elems[j]
        T[i, j] = next(k for k, e in enumerate(elems) if np.allclose(p, e))
    return T


def quaternion() -> np.ndarray:
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    return _from_matrices([qi, qj])


def symmetric3() -> np.ndarray:
    return dihedral(3)


def small_groups() -> dict[str, np.ndarray]:
    """Every group of order at most 8, up to isomorphism."""
    return {k: v.copy() for k, v in _small_groups().items()}


@lru_cache(maxsize=1)
def _small_groups() -> dict[str, np.ndarray]:
    z2 = cyclic(2)
    return {
        "Z1": cyclic(1),
        "Z2": z2,
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "Z2xZ2": direct_product(z2, z2),
        "Z5": cyclic(5),
        "Z6": cyclic(6),
        "S3": symmetric3(),
        "Z7": cyclic(7),
        "Z8": cyclic(8),
        "Z4xZ2": direct_product(cyclic(4), z2),
        "Z2xZ2xZ2": direct_product(direct_product(z2, z2), z2),
        "D4": dihedral(4),
        "Q8": quaternion(),
    }


def named_group(name: str) -> np.ndarray:
    groups = small_groups()
    if name not in groups:
        raise GroupError(f"unknown group {name!r}; known: {', '.join(groups)}")
    return groups[name]


def left_cosets(T, K) -> list[list[int]]:
    T = np.asarray(T)
    seen, cosets = set(), []
    for g in range(T.shape[0]):
        if g in seen:
            continue
        c = sorted({int(T[g, k]) for k in K})
        seen |= set(c)
        cosets.append(c)
    return cosets


def coset_action(T, K) -> np.ndarray:
    """Left translation action of G on G/K as an ``|G| x |G/K|`` table."""
    T = np.asarray(T)
    cosets = left_cosets(T, K)
    where = {g: i for i, c in enumerate(cosets) for g in c}
    act = np.zeros((T.shape[0], len(cosets)), dtype=int)
    for g in range(T.shape[0]):
        for i, c in enumerate(cosets):
            act[g, i] = where[int(T[g, c[0]])]
    return act
