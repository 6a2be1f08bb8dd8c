"""
Random walks on S3-sets and the classical oracle
================================================

A probability vector on S3 drives a walk on each S3-set. The quantum
pipeline computes the Markov operator and its harmonic space. The oracle
builds the transition matrix by enumeration and finds its closed classes.
Both must agree, and dim H must equal the number of orbits of the subgroup
generated by the support.
"""
import numpy as np

from qpoisson.actions import from_group_action_on_set
from qpoisson.classical import cross_check
from qpoisson.groups import coset_action, small_groups
from qpoisson.harmonic import harmonic_space, markov_operator
from qpoisson.measures import Functional

T = small_groups()["S3"]
sets = {
    "S3/<(12)>": coset_action(T, [0, 3]),
    "S3/A3": coset_action(T, [0, 1, 2]),
    "S3/<(12)> + point": np.hstack([coset_action(T, [0, 3]), np.full((6, 1), 3)]),
}
measures = {
    "uniform": np.full(6, 1 / 6),
    "rotation": np.eye(6)[1],
    "lazy flip": np.array([.5, 0, 0, .5, 0, 0]),
    "rotation + flip": np.array([0, .5, 0, .5, 0, 0]),
}

print(f"{'set':>20} {'measure':>16} {'dim H':>5} {'oracle classes':>15}  matrix dev")
for sname, act in sets.items():
    for mname, w in measures.items():
        alpha = from_group_action_on_set(T, act.shape[1], act)
        Phi = markov_operator(Functional(alpha.parent, w), alpha)
        H = harmonic_space(Phi)
        r = cross_check(T, act.shape[1], act, w, Phi.matrix, H.basis)
        assert r["ok"]
        print(f"{sname:>20} {mname:>16} {H.dim:>5} {str(r['recurrent_classes']):>15}  {r['matrix_deviation']:.1e}")
