import json

import numpy as np

from qpoisson.actions import comultiplication_as_action, pauli_action
from qpoisson.corpus import builtin_corpus
from qpoisson.groups import small_groups
from qpoisson.harmonic import harmonic_space, markov_operator
from qpoisson.hopf import function_algebra, group_algebra
from qpoisson.measures import Functional, counit, haar, point_mass
from qpoisson.scenario import build_scenario
from qpoisson.theorems import (CHECKS, FAIL, NA, PASS, ScenarioAnalysis, is_central, is_factor,
                               multiplicative_harmonics, run_theorem_suite)

GROUPS = small_groups()
DOCS = {d["name"]: d for d in builtin_corpus()}


def verdicts(name):
    s = build_scenario(DOCS[name])
    return {k: v.status for k, v in run_theorem_suite(s.action, s.measure)["verdicts"].items()}


def test_pauli_uniform_passes_everything_applicable():
    v = verdicts("Pauli conjugation on M2, uniform")
    assert v.pop("dual Choquet-Deny") == NA
    assert set(v.values()) == {PASS}


def test_degenerate_group_algebra_state_leaves_triviality_checks_out():
    v = verdicts("C[Z4] indicator of subgroup [0, 2]")
    for k in ("compact triviality", "finite dimensional triviality", "global prediction", "maximum principle",
              "dual Choquet-Deny"):
        assert v[k] == NA
    for k in ("harmonic characterization", "Choi-Effros algebra", "cesaro projection", "faithful orbit maps"):
        assert v[k] == PASS


def test_counit_has_no_maximum_principle_claim():
    v = verdicts("C(S3) acting on itself, counit")
    assert v["maximum principle"] == NA
    assert v["harmonic characterization"] == PASS


def test_dual_choquet_deny_applies_to_nondegenerate_group_algebra_states():
    v = verdicts("C[S3] half counit, half Haar")
    assert v["dual Choquet-Deny"] == PASS
    assert v["global prediction"] == PASS


def test_non_ergodic_scenario_uses_the_witness():
    s = build_scenario(DOCS["clock conjugation of Z3 on M3, Haar"])
    r = run_theorem_suite(s.action, s.measure)["verdicts"]["faithful orbit maps"]
    assert r.status == PASS
    assert r.detail["direction"] == "not ergodic => witness"
    assert r.detail["phi_omega(1-e)"] <= 1e-10 and not r.detail["witness_faithful"]


def test_non_state_measure_is_not_applicable():
    H = function_algebra(GROUPS["Z3"])
    r = run_theorem_suite(comultiplication_as_action(H), Functional(H, [2.0, -1.0, 0.0]))
    assert r["verdicts"]["harmonic characterization"].status == NA
    assert r["verdicts"]["markov faithful"].status == NA


def test_wrong_harmonic_space_is_caught():
    H = function_algebra(GROUPS["S3"])
    an = ScenarioAnalysis(comultiplication_as_action(H), point_mass(H, 1))
    # pretend every element is harmonic
    an.__dict__["harmonic"] = harmonic_space(markov_operator(counit(H), an.alpha))
    assert CHECKS["harmonic characterization"](an).status == FAIL


def test_every_corpus_verdict_is_pass_or_not_applicable(corpus):
    bad = [(e.name, k) for e in corpus for k, v in e.verdicts.items() if v.status == FAIL]
    assert bad == []
    # and every check actually runs somewhere
    ran = {k for e in corpus for k, v in e.verdicts.items() if v.status == PASS}
    assert ran == set(CHECKS)


def test_verdicts_serialize(corpus):
    for e in corpus[:40]:
        json.dumps({k: v.to_dict() for k, v in e.verdicts.items()})


def test_central_and_factor_helpers():
    S3 = function_algebra(GROUPS["S3"])
    assert is_central(haar(S3))
    assert not is_central(point_mass(S3, 1))
    # on an abelian group every state is central
    assert is_central(point_mass(function_algebra(GROUPS["Z4"]), 1))
    assert is_factor(pauli_action().target)
    assert not is_factor(S3.algebra)


def test_multiplicative_harmonics_of_pauli_are_scalar():
    alpha = pauli_action()
    an = ScenarioAnalysis(alpha, haar(alpha.parent))
    assert multiplicative_harmonics(an).shape[1] == 1
    S3 = group_algebra(GROUPS["S3"])
    an = ScenarioAnalysis(comultiplication_as_action(S3), Functional(S3, np.ones(6)))
    assert multiplicative_harmonics(an).shape[1] == 6
