import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpoisson.classical import support_generates
from qpoisson.groups import small_groups
from qpoisson.hopf import function_algebra, group_algebra
from qpoisson.measures import (Functional, MeasureError, convolve, counit, density, haar, is_nondegenerate,
                               is_spread_out, is_state, point_mass, power, random_state, spread_out_decomposition,
                               support_rank, support_ranks_of_cesaro_sums)

GROUPS = small_groups()


def quantum_groups():
    return [function_algebra(GROUPS["Z2"]), function_algebra(GROUPS["S3"]), group_algebra(GROUPS["S3"]),
            group_algebra(GROUPS["Q8"])]


def test_counit_and_haar_are_states():
    for H in quantum_groups():
        assert is_state(counit(H))
        assert is_state(haar(H))


def test_signed_measure_is_not_a_state():
    H = function_algebra(GROUPS["Z2"])
    assert not is_state(Functional(H, [1.0, -1.0]))
    assert not is_state(Functional(H, [2.0, -1.0]))


def test_counit_is_convolution_identity(rng):
    for H in quantum_groups():
        mu = random_state(H, rng)
        assert np.abs(convolve(counit(H), mu).coords - mu.coords).max() < 1e-14
        assert np.abs(convolve(mu, counit(H)).coords - mu.coords).max() < 1e-14


def test_haar_absorbs_states(rng):
    for H in quantum_groups():
        mu = random_state(H, rng)
        assert np.abs(convolve(haar(H), mu).coords - H.haar).max() < 1e-14
        assert np.abs(convolve(mu, haar(H)).coords - H.haar).max() < 1e-14


def test_point_masses_follow_the_group_law():
    H = function_algebra(GROUPS["Z2"])
    assert np.abs(convolve(point_mass(H, 1), point_mass(H, 1)).coords - [1, 0]).max() == 0
    Z4 = function_algebra(GROUPS["Z4"])
    assert np.abs(power(point_mass(Z4, 1), 2).coords - [0, 0, 1, 0]).max() == 0


def test_powers():
    H = group_algebra(GROUPS["S3"])
    assert np.abs(power(counit(H), 5).coords - H.counit).max() == 0
    Z4 = function_algebra(GROUPS["Z4"])
    mu = Functional(Z4, [0.5, 0.5, 0, 0])
    assert np.abs(power(mu, 2).coords - [0.25, 0.5, 0.25, 0]).max() < 1e-15
    with pytest.raises(MeasureError):
        power(mu, 0)


def test_densities():
    for H in quantum_groups():
        assert np.abs(density(haar(H)) - H.unit).max() < 1e-14
    Z2 = function_algebra(GROUPS["Z2"])
    assert np.abs(density(Functional(Z2, [0.5, 0.5])) - 1).max() < 1e-15
    assert np.abs(density(point_mass(Z2, 0)) - [2, 0]).max() < 1e-15


def test_support_ranks():
    for H in quantum_groups():
        assert support_rank(haar(H)) == H.dim
    Z2 = function_algebra(GROUPS["Z2"])
    assert support_rank(point_mass(Z2, 0)) == 1
    C2 = group_algebra(GROUPS["Z2"])
    assert np.abs(density(counit(C2)) - [1, 1]).max() < 1e-15
    assert support_rank(counit(C2)) == 1
    with pytest.raises(MeasureError):
        support_rank(Functional(Z2, [1.0, -1.0]))


def test_nondegeneracy_examples():
    Z4 = function_algebra(GROUPS["Z4"])
    assert is_nondegenerate(point_mass(Z4, 1))
    assert not is_nondegenerate(point_mass(Z4, 2))
    assert support_ranks_of_cesaro_sums(point_mass(Z4, 2))[-1] == 2
    for H in quantum_groups():
        assert is_nondegenerate(haar(H))


def test_spread_out_is_automatic(rng):
    for H in quantum_groups():
        mu = random_state(H, rng)
        assert is_spread_out(mu) and is_spread_out(counit(H))
        dec = spread_out_decomposition(mu)
        assert np.abs(dec["singular"].coords).max() == 0


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "Z2xZ2xZ2"])
def test_convolution_is_associative(name, rng):
    for H in (function_algebra(GROUPS[name]), group_algebra(GROUPS[name])):
        a, b, c = (random_state(H, rng) for _ in range(3))
        lhs = convolve(convolve(a, b), c).coords
        rhs = convolve(a, convolve(b, c)).coords
        assert np.abs(lhs - rhs).max() < 1e-10


@pytest.mark.parametrize("name", ["S3", "Q8"])
def test_convolution_preserves_states(name, rng):
    for H in (function_algebra(GROUPS[name]), group_algebra(GROUPS[name])):
        for _ in range(5):
            assert is_state(convolve(random_state(H, rng), random_state(H, rng)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Z4", "Z6", "S3", "Z2xZ2", "D4", "Q8"]),
       st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_nondegenerate_iff_support_generates(name, raw):
    T = GROUPS[name]
    n = T.shape[0]
    w = np.array(raw[:n], dtype=float)
    if w.sum() == 0:
        w[0] = 1
    w /= w.sum()
    H = function_algebra(T)
    assert is_nondegenerate(Functional(H, w)) == support_generates(T, w)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["S3", "Q8", "Z4"]), st.booleans(), st.integers(0, 2 ** 31))
def test_support_rank_of_powers_is_nondecreasing(name, dual, seed):
    T = GROUPS[name]
    H = group_algebra(T) if dual else function_algebra(T)
    rng = np.random.default_rng(seed)
    # a sparse state: random density cut down to a random projection-like element
    a = rng.normal(size=H.dim) * (rng.random(H.dim) < 0.4)
    if not a.any():
        a[0] = 1
    rho = H.algebra.mul(H.algebra.star(a), a)
    mu = Functional(H, np.einsum("i,ijk,k->j", rho, H.mult, H.haar) / H.algebra.tau(rho))
    ranks = [support_rank(power(mu, n)) for n in range(1, 6)]
    assert ranks == sorted(ranks)
