"""
Poisson boundaries of group algebras
====================================

On C[G] a state is a positive-definite function u with u(e) = 1, and its
Markov operator is diagonal: lambda_g -> u(g) lambda_g. So the harmonic
space is spanned by {lambda_g : u(g) = 1}, which is always a subgroup.
Non-degenerate states (trivial fixed set) have trivial boundary, while the
indicator of a subgroup K gives a boundary of dimension |K| whose
Choi-Effros product is the ambient product.
"""
import numpy as np

from qpoisson.actions import comultiplication_as_action
from qpoisson.groups import small_groups, subgroups
from qpoisson.harmonic import harmonic_space, markov_operator
from qpoisson.hopf import group_algebra
from qpoisson.measures import Functional, is_nondegenerate, is_state

for name in ("Z4", "S3", "Q8"):
    T = small_groups()[name]
    n = T.shape[0]
    L = group_algebra(T)
    alpha = comultiplication_as_action(L)
    delta = np.eye(n)[0]
    cases = [("(1 + delta_e)/2", (1 + delta) / 2)]
    cases += [(f"1 on {K}", np.isin(np.arange(n), K).astype(float)) for K in subgroups(T) if 1 < len(K) < n]
    for label, u in cases:
        mu = Functional(L, u)
        assert is_state(mu)
        H = harmonic_space(markov_operator(mu, alpha))
        sub, _ = H.is_subalgebra()
        print(f"C[{name}] u = {label:>22}: nondegenerate {str(is_nondegenerate(mu)):>5}, dim H = {H.dim}, "
              f"subalgebra {sub}")
