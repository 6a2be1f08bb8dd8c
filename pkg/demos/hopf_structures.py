"""
Finite quantum groups from small groups
=======================================

C(G) is commutative, C[G] is cocommutative, and each is the dual of the
other. For every group of order at most 8 this prints the largest axiom
deviation of both, whether they are (co)commutative, and the mismatch
between the dual of C(G) and C[G].
"""
import numpy as np

from qpoisson.groups import small_groups
from qpoisson.hopf import dual_hopf, function_algebra, group_algebra, verify_hopf

print(f"{'G':>9} {'|G|':>4} {'dev C(G)':>9} {'dev C[G]':>9} {'dual':>8}  C(G) cocommutative")
for name, T in small_groups().items():
    F, L = function_algebra(T), group_algebra(T)
    D = dual_hopf(F)
    dual_dev = max(np.abs(D.mult - L.mult).max(), np.abs(D.comult - L.comult).max())
    print(f"{name:>9} {T.shape[0]:>4} {verify_hopf(F).max_deviation:9.1e} {verify_hopf(L).max_deviation:9.1e} "
          f"{dual_dev:8.1e}  {F.is_cocommutative()}")

# the Haar state of C[G] is the regular character, the counit of C(G) is evaluation at e
L = group_algebra(small_groups()["S3"])
print("Haar state of C[S3]:", L.haar.real)
print("counit of C[S3]:    ", L.counit.real)
