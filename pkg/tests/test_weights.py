import math

import numpy as np
import pytest

from paretolab import weights as W
from paretolab.errors import CapacityError, DomainError


def test_lattice_m2_h2():
    ws = W.simplex_lattice(2, 2)
    assert ws.vectors.tolist() == [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]]


def test_lattice_m3_h1_unit_vectors():
    ws = W.simplex_lattice(3, 1)
    assert ws.vectors.tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


@pytest.mark.parametrize("m,h,count", [(3, 13, 105), (5, 7, 330), (2, 99, 100)])
def test_lattice_cardinality(m, h, count):
    ws = W.simplex_lattice(m, h)
    assert len(ws) == count == math.comb(h + m - 1, m - 1)
    assert np.allclose(ws.vectors.sum(axis=1), 1.0, atol=1e-12)
    assert ws.vectors.min() >= 0.0
    assert len({tuple(v) for v in ws.vectors}) == count


def test_lattice_domain_and_capacity():
    with pytest.raises(DomainError):
        W.simplex_lattice(1, 5)
    with pytest.raises(DomainError):
        W.simplex_lattice(3, 0)
    with pytest.raises(CapacityError):
        W.simplex_lattice(20, 99)


@pytest.mark.parametrize("m,count,expected", [(2, 100, 99), (3, 100, 13), (2, 1, 1)])
def test_smallest_h(m, count, expected):
    h = W.smallest_h(m, count)
    assert h == expected
    assert W.lattice_size(m, h) >= count
    assert h == 1 or W.lattice_size(m, h - 1) < count


def test_neighborhood_full_and_pair():
    ws = W.simplex_lattice(2, 2)
    assert sorted(W.neighborhood(ws, 0, 1.0)) == [0, 1, 2]
    pair = W.neighborhood(ws, 0, 2 / 3)
    assert [ws.vectors[i].tolist() for i in pair] == [[0.0, 1.0], [0.5, 0.5]]


def test_neighborhood_sizes_follow_ceil():
    ws = W.simplex_lattice(3, 13)
    mu = len(ws)
    for t in (0.1, 0.2):
        assert len(W.neighborhood(ws, 5, t)) == math.ceil(t * mu)


def test_neighborhood_contains_anchor_first():
    ws = W.simplex_lattice(4, 5)
    for idx in (0, 10, len(ws) - 1):
        hood = W.neighborhood(ws, idx, 0.2)
        assert hood[0] == idx


def test_neighborhood_domain():
    ws = W.simplex_lattice(2, 3)
    with pytest.raises(DomainError):
        W.neighborhood(ws, 99, 0.5)
    with pytest.raises(DomainError):
        W.neighborhood(ws, 0, 0.0)
    with pytest.raises(DomainError):
        W.neighborhood(ws, 0, 1.5)


def test_mean_distance_m2_matches_coarse_value():
    ws = W.simplex_lattice(2, W.smallest_h(2, 100))
    stats = W.mean_neighbor_distance(ws, 1.0, pairs=900, seed=0)
    assert 0.4 <= stats.mean <= 0.6
    assert stats.half_width < 0.05


def test_mean_distance_grows_with_m():
    means = []
    for m in (2, 8, 14):
        ws = W.simplex_lattice(m, W.smallest_h(m, 100))
        means.append(W.mean_neighbor_distance(ws, 1.0, pairs=400, seed=1).mean)
    assert means[0] < means[1] < means[2]
    assert means[2] > 0.85


def test_mean_distance_monotone_in_t():
    ws = W.simplex_lattice(5, W.smallest_h(5, 100))
    stats = {t: W.mean_neighbor_distance(ws, t, pairs=900, seed=2)
             for t in (0.1, 0.2, 1.0)}
    # shrinking T never increases the mean (3 sigma slack)
    for lo, hi in ((0.1, 0.2), (0.2, 1.0)):
        slack = 3 * math.hypot(stats[lo].half_width, stats[hi].half_width) / 1.96
        assert stats[lo].mean <= stats[hi].mean + slack


def test_mean_distance_degenerate_neighborhood():
    ws = W.simplex_lattice(2, 3)
    with pytest.raises(DomainError):
        W.mean_neighbor_distance(ws, 0.1, pairs=10)  # ceil(0.4) = 1: no neighbor


def test_mean_distance_nondecreasing_over_full_m_range():
    means = []
    for m in range(2, 21):
        ws = W.simplex_lattice(m, W.smallest_h(m, 100))
        means.append(W.mean_neighbor_distance(ws, 1.0, pairs=900, seed=3).mean)
    inversions = [a - b for a, b in zip(means, means[1:]) if a > b]
    assert all(gap < 0.02 for gap in inversions)
