import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpoisson.checks import AxiomError
from qpoisson.classical import (OracleError, TransitionKernel, classical_harmonic, cross_check, is_transitive,
                                orbits, recurrent_classes, support_generates, transition_matrix)
from qpoisson.corpus import orbit_count
from qpoisson.groups import coset_action, small_groups

GROUPS = small_groups()


def regular(T):
    # left multiplication g.x = gx
    return np.asarray(T)


def test_identity_mass_gives_identity_kernel():
    T = GROUPS["S3"]
    K = transition_matrix(T, 6, regular(T), np.eye(6)[0])
    assert np.abs(K.P - np.eye(6)).max() == 0
    assert classical_harmonic(K).shape[1] == 6


def test_z2_swap_and_uniform_z4_on_z2():
    K = transition_matrix(GROUPS["Z2"], 2, regular(GROUPS["Z2"]), [0, 1])
    assert np.abs(K.P - [[0, 1], [1, 0]]).max() == 0
    T = GROUPS["Z4"]
    act = coset_action(T, [0, 2])
    K = transition_matrix(T, 2, act, np.full(4, 0.25))
    assert np.abs(K.P - 0.5).max() < 1e-15
    h = classical_harmonic(K)
    assert h.shape[1] == 1 and np.abs(h[:, 0] - 1).max() < 1e-15


def test_two_orbits_give_two_indicator_harmonics():
    act = np.array([[0, 1, 2], [1, 0, 2]])
    K = transition_matrix(GROUPS["Z2"], 3, act, [0.5, 0.5])
    assert recurrent_classes(K) == [[0, 1], [2]]
    h = classical_harmonic(K)
    assert np.abs(h - [[1, 0], [1, 0], [0, 1]]).max() < 1e-15
    assert orbits(act) == [[0, 1], [2]] and not is_transitive(act)


def test_transient_states_get_absorption_probabilities():
    P = np.array([[1, 0, 0], [0.25, 0.5, 0.25], [0, 0, 1]])
    h = classical_harmonic(TransitionKernel(P))
    assert np.abs(h - [[1, 0], [0.5, 0.5], [0, 1]]).max() < 1e-15
    assert np.abs(P @ h - h).max() < 1e-15


def test_row_sum_fault_is_named():
    P = np.eye(3)
    P[1, 1] += 1e-3
    rep = TransitionKernel(P).verify()
    assert rep.failures == ["row sums"]
    with pytest.raises(AxiomError, match="row sums"):
        rep.raise_if_failed()


def test_bad_inputs_raise():
    T = GROUPS["Z2"]
    with pytest.raises(OracleError):
        transition_matrix(T, 2, regular(T), [0.7, 0.7])
    with pytest.raises(OracleError):
        transition_matrix(T, 2, regular(T), [1.5, -0.5])
    with pytest.raises(OracleError):
        transition_matrix(T, 2, [[1, 0], [0, 1]], [0.5, 0.5])
    with pytest.raises(OracleError):
        transition_matrix(GROUPS["Z3"], 3, [[0, 1, 2], [1, 0, 2], [0, 1, 2]], [1, 0, 0])


def test_cross_check_flags_wrong_matrix():
    T = GROUPS["Z3"]
    mu = [0, 1, 0]
    good = transition_matrix(T, 3, regular(T), mu)
    assert cross_check(T, 3, regular(T), mu, good.P, np.ones((3, 1)))["ok"]
    assert not cross_check(T, 3, regular(T), mu, good.P.T + 1e-3, np.ones((3, 1)))["ok"]
    assert not cross_check(T, 3, regular(T), mu, good.P, np.eye(3)[:, :2])["ok"]


names = st.sampled_from(sorted(GROUPS))


@settings(max_examples=60, deadline=None)
@given(names, st.data())
def test_recurrent_classes_match_subgroup_orbits(name, data):
    # the chain of mu lives on orbits of the subgroup generated by supp(mu)
    T = GROUPS[name]
    n = T.shape[0]
    w = np.array(data.draw(st.lists(st.sampled_from([0.0, 1.0, 2.0]), min_size=n, max_size=n)))
    if w.sum() == 0:
        w[0] = 1
    w /= w.sum()
    K = transition_matrix(T, n, regular(T), w)
    from qpoisson.classical import generated_subgroup
    L = generated_subgroup(T, np.flatnonzero(w))
    assert len(recurrent_classes(K)) == orbit_count(T, L) == n // len(L)
    assert (len(recurrent_classes(K)) == 1) == support_generates(T, w)
    h = classical_harmonic(K)
    assert np.abs(K.P @ h - h).max() < 1e-12
