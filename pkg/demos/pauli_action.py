"""
Pauli conjugation on M2
=======================

Z2 x Z2 acts on the 2x2 matrices by conjugation with 1, Z, X, XZ. The
action is ergodic. A state whose support generates the group has only
scalar harmonics. The point mass at X does not generate, and its harmonic
space is the commutant of X, spanned by 1 and X. The normalized trace is the
invariant state.
"""
import numpy as np

from qpoisson.actions import is_ergodic, pauli_action
from qpoisson.harmonic import find_invariant_state, harmonic_space, invariance_residual, markov_operator
from qpoisson.measures import Functional, is_nondegenerate

alpha = pauli_action()
print("ergodic:", is_ergodic(alpha))
for label, w in [("uniform", [.25] * 4), ("point mass at X", [0, 0, 1, 0]), ("lazy X and Z", [.5, .25, .25, 0])]:
    mu = Functional(alpha.parent, np.array(w))
    H = harmonic_space(markov_operator(mu, alpha))
    print(f"{label:>16}: nondegenerate {str(is_nondegenerate(mu)):>5}, dim H = {H.dim}")
    if H.dim == 2:
        X = np.array([0, 1, 1, 0])  # coordinates in E11, E12, E21, E22
        print("                  X harmonic, residual", H.contains(X))

Omega = find_invariant_state(alpha)
print("invariant state:", Omega.coords.real, "residual", invariance_residual(Omega, alpha))
