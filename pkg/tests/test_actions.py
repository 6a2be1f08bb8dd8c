import numpy as np
import pytest

from qpoisson.actions import (ActionData, ActionError, comultiplication_as_action, conjugation_automorphism,
                              fixed_point_algebra, from_automorphism_action, from_group_action_on_set,
                              invariant_projection, is_ergodic, pauli_action, verify_action)
from qpoisson.algebra import commutative, matrix_algebra
from qpoisson.classical import is_transitive
from qpoisson.groups import coset_action, small_groups, subgroups
from qpoisson.hopf import function_algebra, group_algebra

GROUPS = small_groups()


def test_comultiplication_actions_verify_and_are_ergodic():
    for T in GROUPS.values():
        for H in (function_algebra(T), group_algebra(T)):
            alpha = comultiplication_as_action(H)
            assert verify_action(alpha).ok
            assert fixed_point_algebra(alpha).shape[1] == 1
    H = function_algebra(GROUPS["Z2"])
    assert np.abs(comultiplication_as_action(H).tensor - H.comult).max() == 0


def test_z2_on_two_points_verifies():
    alpha = from_group_action_on_set(GROUPS["Z2"], 2, [[0, 1], [1, 0]])
    assert verify_action(alpha).ok
    assert is_ergodic(alpha)


def test_corrupted_tensor_breaks_the_coaction_identity():
    alpha = from_group_action_on_set(GROUPS["Z4"], 2, coset_action(GROUPS["Z4"], [0, 2]))
    t = alpha.tensor.copy()
    t[0, 1, 1] += 1e-3
    rep = verify_action(ActionData(alpha.parent, alpha.target, t))
    assert "coaction identity" in rep.failures
    assert rep.deviations["coaction identity"] >= 1e-3 - 1e-15


def test_left_translation_equals_comultiplication():
    for T in GROUPS.values():
        alpha = from_group_action_on_set(T, T.shape[0], T)
        assert np.abs(alpha.tensor - function_algebra(T).comult).max() == 0


def test_quotient_action_is_ergodic():
    alpha = from_group_action_on_set(GROUPS["Z4"], 2, coset_action(GROUPS["Z4"], [0, 2]))
    assert verify_action(alpha).ok and is_ergodic(alpha)


def test_trivial_action_fixes_everything():
    T = GROUPS["S3"]
    alpha = from_group_action_on_set(T, 4, np.tile(np.arange(4), (6, 1)))
    M = alpha.matrix
    for i in range(4):
        assert np.abs(M[:, i] - np.kron(np.ones(6), np.eye(4)[i])).max() == 0
    assert fixed_point_algebra(alpha).shape[1] == 4


def test_pauli_action_is_ergodic():
    alpha = pauli_action()
    assert verify_action(alpha).ok
    assert is_ergodic(alpha)


def test_swap_automorphism_matches_set_action():
    swap = np.array([[0, 1], [1, 0]], dtype=complex)
    alpha = from_automorphism_action(GROUPS["Z2"], commutative(2), [np.eye(2), swap])
    beta = from_group_action_on_set(GROUPS["Z2"], 2, [[0, 1], [1, 0]])
    assert np.abs(alpha.tensor - beta.tensor).max() == 0


def test_trivial_automorphisms():
    N = matrix_algebra(2)
    alpha = from_automorphism_action(GROUPS["Z2xZ2"], N, [np.eye(4)] * 4)
    assert verify_action(alpha).ok
    assert fixed_point_algebra(alpha).shape[1] == 4


def test_automorphism_validation():
    N = matrix_algebra(2)
    not_hom = [np.eye(4), conjugation_automorphism(np.array([[1, 0], [0, 1j]]))]
    with pytest.raises(ActionError, match="homomorphism"):
        from_automorphism_action(GROUPS["Z2"], N, not_hom)
    not_mult = np.eye(4)
    not_mult[0, 0] = 2
    with pytest.raises(ActionError):
        from_automorphism_action(GROUPS["Z2"], N, [np.eye(4), not_mult])


@pytest.mark.parametrize("name", ["Z4", "S3", "D4", "Q8", "Z2xZ2xZ2"])
def test_ergodic_iff_transitive(name):
    T = GROUPS[name]
    n = T.shape[0]
    for K in subgroups(T):
        act = coset_action(T, K)
        alpha = from_group_action_on_set(T, act.shape[1], act)
        assert is_ergodic(alpha) == is_transitive(act) == True
        if act.shape[1] + 1 <= 8:
            two = np.hstack([act, np.full((n, 1), act.shape[1])])
            beta = from_group_action_on_set(T, two.shape[1], two)
            assert not is_ergodic(beta) and not is_transitive(two)
            F = fixed_point_algebra(beta)
            assert F.shape[1] == 2
            # the fixed points are spanned by the two orbit indicators
            ind = np.zeros((two.shape[1], 2))
            ind[:-1, 0] = 1
            ind[-1, 1] = 1
            P = F @ F.conj().T
            assert np.abs(P @ ind - ind).max() < 1e-12


def test_fixed_point_algebras_are_unital_star_subalgebras():
    actions = [pauli_action(), from_group_action_on_set(GROUPS["S3"], 3, np.tile(np.arange(3), (6, 1)))]
    for T in (GROUPS["D4"], GROUPS["Q8"]):
        actions.append(comultiplication_as_action(group_algebra(T)))
    for alpha in actions:
        N = alpha.target
        F = fixed_point_algebra(alpha)
        P = F @ F.conj().T
        assert np.abs(P @ N.unit - N.unit).max() < 1e-9
        for i in range(F.shape[1]):
            assert np.abs(P @ N.star(F[:, i]) - N.star(F[:, i])).max() < 1e-9
            for j in range(F.shape[1]):
                xy = N.mul(F[:, i], F[:, j])
                assert np.abs(P @ xy - xy).max() < 1e-9


def test_invariant_projection_witness():
    alpha = from_group_action_on_set(GROUPS["Z2"], 3, [[0, 1, 2], [1, 0, 2]])
    e = invariant_projection(alpha)
    N = alpha.target
    assert np.abs(N.mul(e, e) - e).max() < 1e-12
    assert np.abs(alpha.matrix @ e - np.kron(alpha.parent.unit, e)).max() < 1e-12
    assert sorted(np.round(e.real, 12).tolist()) in ([0.0, 0.0, 1.0], [0.0, 1.0, 1.0])
    assert invariant_projection(pauli_action()) is None


def test_dimension_mismatch_is_rejected():
    H = function_algebra(GROUPS["Z2"])
    with pytest.raises(ActionError, match="dimension mismatch"):
        ActionData(H, commutative(3), np.zeros((3, 3, 3)))
