"""Compiled and pure kernels must be observationally identical.

Outcomes, removed sets, snapshots, and the comparison counters are asserted
equal on random streams; hypervolume values must agree to tight tolerance.
"""

import numpy as np
import pytest

from paretolab import _kernels_py as pure
from paretolab import kernels

pytestmark = pytest.mark.skipif(
    not kernels.COMPILED, reason="compiled kernels unavailable")

from paretolab import _kernels as comp  # noqa: E402  (guarded by skipif)


def _stream(rng, trial):
    m = int(rng.integers(1, 7))
    n = int(rng.integers(1, 180))
    if trial % 2:
        return rng.integers(0, 4, size=(n, m)).astype(float), m
    return rng.random((n, m)), m


@pytest.mark.parametrize("trial", range(12))
def test_archives_bitwise_parity(trial):
    rng = np.random.default_rng(500 + trial)
    pts, m = _stream(rng, trial)
    pairs = [
        (comp.ListArchive(m), pure.ListArchive(m)),
        (comp.NdTreeArchive(m, leaf_capacity=5), pure.NdTreeArchive(m, leaf_capacity=5)),
        (comp.QuadTreeArchive(m), pure.QuadTreeArchive(m)),
    ]
    for y in pts:
        for c, p in pairs:
            oc, rc = c.update(y)
            op, rp = p.update(y)
            assert oc == op
            assert sorted(map(tuple, rc)) == sorted(map(tuple, rp))
            assert c.comparisons == p.comparisons
            assert len(c) == len(p)
    for c, p in pairs:
        assert sorted(map(tuple, c.points())) == sorted(map(tuple, p.points()))
    for q in rng.random((15, m)):
        for c, p in pairs:
            assert c.is_dominated(q) == p.is_dominated(q)
            assert c.comparisons == p.comparisons


def test_nondominated_mask_parity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        pts = rng.random((int(rng.integers(1, 300)), int(rng.integers(1, 6))))
        assert np.array_equal(np.asarray(comp.nondominated_mask(pts)),
                              np.asarray(pure.nondominated_mask(pts)))


def test_hv_exact_parity():
    rng = np.random.default_rng(11)
    for _ in range(40):
        m = int(rng.integers(2, 8))
        pts = rng.random((int(rng.integers(1, 14)), m))
        assert comp.hv_exact(pts) == pytest.approx(pure.hv_exact(pts), abs=1e-12)


def test_count_dominated_parity():
    rng = np.random.default_rng(13)
    pts = rng.random((50, 3))
    tc = comp.NdTreeArchive(3)
    tp = pure.NdTreeArchive(3)
    for y in pts:
        tc.update(y)
        tp.update(y)
    samples = rng.random((500, 3))
    assert comp.count_dominated(tc, samples) == pure.count_dominated(tp, samples)
