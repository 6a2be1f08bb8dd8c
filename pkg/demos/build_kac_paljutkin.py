"""
Build the Kac-Paljutkin quantum group and write it as a scenario file
=====================================================================

The 8-dimensional Kac-Paljutkin algebra is the smallest finite quantum group
that is neither commutative nor cocommutative. As an algebra it is
C + C + C + C + M_2; the comultiplication below is the standard one. The
antipode is solved from the other structure maps and the Haar state is
recomputed, so the loader's verifier is the only judge of correctness.

Run from the repository root::

    python demos/build_kac_paljutkin.py scenarios/kac_paljutkin.json
"""
import itertools
import json
import sys

import numpy as np

from qpoisson.hopf import HopfData, compute_haar, solve_antipode, verify_hopf

labels = ["e1", "e2", "e3", "e4", "E11", "E12", "E21", "E22"]
idx = {l: i for i, l in enumerate(labels)}
d = 8

mult = np.zeros((d, d, d), dtype=complex)
for k in range(4):
    mult[k, k, k] = 1
for a, b, c in itertools.product((1, 2), repeat=3):
    mult[idx[f"E{a}{b}"], idx[f"E{b}{c}"], idx[f"E{a}{c}"]] = 1
unit = np.array([1, 1, 1, 1, 1, 0, 0, 1], dtype=complex)
invol = np.eye(d)
invol[[5, 6]] = invol[[6, 5]]

comult = np.zeros((d, d, d), dtype=complex)


def add(target, coeff, left, right):
    comult[idx[target], idx[left], idx[right]] += coeff


I = 1j
# the four one-dimensional summands
for a, b, c in [("e1", "e1", "e1"), ("e1", "e2", "e2"), ("e1", "e3", "e3"), ("e1", "e4", "e4"),
                ("e2", "e1", "e2"), ("e2", "e2", "e1"), ("e2", "e3", "e4"), ("e2", "e4", "e3"),
                ("e3", "e1", "e3"), ("e3", "e3", "e1"), ("e3", "e2", "e4"), ("e3", "e4", "e2"),
                ("e4", "e1", "e4"), ("e4", "e4", "e1"), ("e4", "e2", "e3"), ("e4", "e3", "e2")]:
    add(a, 1, b, c)
for a, b in itertools.product((1, 2), repeat=2):
    add("e1", 0.5, f"E{a}{b}", f"E{a}{b}")
add("e2", 0.5, "E11", "E22"); add("e2", 0.5, "E22", "E11")
add("e2", 0.5 * I, "E21", "E12"); add("e2", -0.5 * I, "E12", "E21")
add("e3", 0.5, "E11", "E22"); add("e3", 0.5, "E22", "E11")
add("e3", -0.5 * I, "E21", "E12"); add("e3", 0.5 * I, "E12", "E21")
add("e4", 0.5, "E11", "E11"); add("e4", 0.5, "E22", "E22")
add("e4", -0.5, "E12", "E12"); add("e4", -0.5, "E21", "E21")
# the matrix block
for x, y in [("e1", "E11"), ("e2", "E22"), ("e3", "E22"), ("e4", "E11")]:
    add("E11", 1, x, y); add("E11", 1, y, x)
for x, y in [("e1", "E22"), ("e2", "E11"), ("e3", "E11"), ("e4", "E22")]:
    add("E22", 1, x, y); add("E22", 1, y, x)
add("E12", 1, "e1", "E12"); add("E12", 1, "E12", "e1")
add("E12", I, "e2", "E21"); add("E12", -I, "E21", "e2")
add("E12", -I, "e3", "E21"); add("E12", I, "E21", "e3")
add("E12", -1, "e4", "E12"); add("E12", -1, "E12", "e4")
add("E21", 1, "e1", "E21"); add("E21", 1, "E21", "e1")
add("E21", -I, "e2", "E12"); add("E21", I, "E12", "e2")
add("E21", I, "e3", "E12"); add("E21", -I, "E12", "e3")
add("E21", -1, "e4", "E21"); add("E21", -1, "E21", "e4")

counit = np.zeros(d)
counit[0] = 1
antipode = solve_antipode(mult, unit, comult, counit)
H = HopfData(mult, unit, invol, comult, counit, antipode, np.zeros(d), tuple(labels), "KacPaljutkin")
H = H.replace(haar=compute_haar(H))
report = verify_hopf(H)


def cplx(a):
    a = np.asarray(a)
    return np.stack([a.real, a.imag], axis=-1).round(15).tolist()


if __name__ == "__main__":
    for axiom, dev in report.deviations.items():
        print(f"{axiom:40s} {dev:.2e}")
    print("Haar state:", np.round(H.haar.real, 6))
    if not report.ok:
        sys.exit(f"verification failed: {report.failures}")
    out = sys.argv[1] if len(sys.argv) > 1 else "scenarios/kac_paljutkin.json"
    # a tilted state: mostly the counit, some weight on the matrix block
    mu = 0.5 * counit + 0.5 * np.array([0, 0.25, 0.25, 0, 0.25, 0, 0, 0.25])
    scenario = {
        "schema": 1,
        "name": "kac_paljutkin_comultiplication",
        "quantum_group": {
            "construct": "load",
            "hopf": {
                "labels": labels,
                "mult": cplx(mult), "unit": cplx(unit), "invol": cplx(invol),
                "comult": cplx(comult), "counit": cplx(counit),
                "antipode": cplx(H.antipode), "haar": cplx(H.haar),
            },
        },
        "action": {"construct": "comultiplication"},
        "measure": {"construct": "coords", "coords": cplx(mu)},
        "expected": {"ergodic": True, "nondegenerate": True, "dim_H": 1},
    }
    with open(out, "w") as fh:
        json.dump(scenario, fh, indent=1)
    print("wrote", out)
