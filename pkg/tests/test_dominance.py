import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paretolab.dominance import (
    DominanceRelation,
    all_pairs_nd_probability,
    compare,
    filter_nondominated,
    nd_pair_probability,
    nondominated_mask,
    weakly_dominates,
)
from paretolab.errors import DimensionError, DomainError

from conftest import oracle_nondominated

REL = DominanceRelation

vectors = st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=6)


def test_compare_examples():
    assert compare((1, 2), (0, 1)) is REL.DOMINATES
    assert compare((1, 0), (0, 1)) is REL.INCOMPARABLE
    assert compare((0.5, 0.5), (0.5, 0.5)) is REL.EQUAL
    assert compare((0, 1), (1, 2)) is REL.DOMINATED_BY
    assert compare((1, 1), (1, 0)) is REL.DOMINATES


def test_compare_dimension_error():
    with pytest.raises(DimensionError):
        compare((1, 2), (1, 2, 3))
    with pytest.raises(DimensionError):
        compare((), ())
    with pytest.raises(DimensionError):
        compare((np.nan, 1), (0, 1))


def test_weakly_dominates_examples():
    assert weakly_dominates((1, 1), (1, 0))
    assert weakly_dominates((1, 1), (1, 1))
    assert not weakly_dominates((0, 1), (1, 0))
    with pytest.raises(DimensionError):
        weakly_dominates((1,), (1, 2))


@given(a=vectors, data=st.data())
def test_compare_antisymmetry(a, data):
    b = data.draw(st.lists(st.floats(-10, 10, allow_nan=False),
                           min_size=len(a), max_size=len(a)))
    forward = compare(a, b)
    backward = compare(b, a)
    flipped = {REL.DOMINATES: REL.DOMINATED_BY, REL.DOMINATED_BY: REL.DOMINATES,
               REL.EQUAL: REL.EQUAL, REL.INCOMPARABLE: REL.INCOMPARABLE}
    assert backward is flipped[forward]


@given(c=vectors, data=st.data())
def test_compare_transitive_on_chains(c, data):
    # build a >= b >= c with at least one strict step each
    deltas = st.lists(st.floats(0, 5, allow_nan=False),
                      min_size=len(c), max_size=len(c))
    db = data.draw(deltas)
    da = data.draw(deltas)
    b = [ci + di for ci, di in zip(c, db)]
    a = [bi + di for bi, di in zip(b, da)]
    if compare(a, b) is REL.DOMINATES and compare(b, c) is REL.DOMINATES:
        assert compare(a, c) is REL.DOMINATES


@pytest.mark.parametrize("m,expected", [(1, 0.0), (2, 0.5), (5, 0.9375)])
def test_nd_pair_probability_values(m, expected):
    assert nd_pair_probability(m) == pytest.approx(expected, abs=0)


def test_nd_pair_probability_domain():
    for bad in (0, -3, 1.5, "2"):
        with pytest.raises(DomainError):
            nd_pair_probability(bad)


@pytest.mark.parametrize("m,mu,expected", [
    (2, 0, 1.0),
    (2, 1, 0.5),
    (2, 10, 0.0009765625),
])
def test_all_pairs_nd_probability_values(m, mu, expected):
    assert all_pairs_nd_probability(m, mu) == pytest.approx(expected, abs=0)


def test_all_pairs_is_exact_power():
    for m in range(1, 17):
        for mu in (1, 10, 100):
            assert all_pairs_nd_probability(m, mu) == nd_pair_probability(m) ** mu
    with pytest.raises(DomainError):
        all_pairs_nd_probability(2, -1)


def test_filter_nondominated_examples():
    kept = filter_nondominated([(1, 0), (0, 1), (0, 0)])
    assert [list(v) for v in kept] == [[1, 0], [0, 1]]
    assert [list(v) for v in filter_nondominated([(1, 1)])] == [[1, 1]]
    assert filter_nondominated([]) == []


def test_filter_nondominated_keeps_duplicates_and_order():
    pts = [(1, 0), (0.5, 0.5), (1, 0), (0, 1), (0.2, 0.2)]
    kept = [tuple(v) for v in filter_nondominated(pts)]
    assert kept == [(1, 0), (0.5, 0.5), (1, 0), (0, 1)]


def test_filter_nondominated_against_double_loop(rng):
    pts = rng.random((100, 3))
    kept = filter_nondominated(pts)
    want = oracle_nondominated(pts.tolist())
    assert [tuple(v) for v in kept] == [tuple(pts[i]) for i in want]


def test_filter_nondominated_idempotent(rng):
    pts = rng.random((60, 4))
    once = filter_nondominated(pts)
    twice = filter_nondominated(once)
    assert [tuple(v) for v in once] == [tuple(v) for v in twice]


def test_nondominated_mask_matches_filter(rng):
    pts = rng.integers(0, 3, size=(40, 3)).astype(float)
    mask = nondominated_mask(pts)
    assert [tuple(p) for p in pts[mask]] == \
        [tuple(v) for v in filter_nondominated(pts)]


def test_empirical_nd_fraction_matches_model(rng):
    # pairwise ND fraction of uniform random vectors vs 1 - 1/2^(m-1)
    trials = 10_000
    for m in range(2, 17):
        a = rng.random((trials, m))
        b = rng.random((trials, m))
        a_dom = np.all(a >= b, axis=1)
        b_dom = np.all(b >= a, axis=1)
        frac = float(np.mean(~(a_dom | b_dom)))
        p = nd_pair_probability(m)
        se = np.sqrt(p * (1 - p) / trials)
        assert abs(frac - p) <= 4 * se + 1e-12, (m, frac, p)
