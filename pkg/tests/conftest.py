"""Shared fixtures and independent brute-force oracles.

The oracles here are deliberately naive re-implementations (double loops,
subset enumeration) kept separate from the library code they check.
"""

import itertools

import numpy as np
import pytest


def oracle_nondominated(rows):
    """Double-loop non-dominated filter; returns kept row indices."""
    kept = []
    for i, a in enumerate(rows):
        dominated = False
        for j, b in enumerate(rows):
            if i == j:
                continue
            if all(bv >= av for av, bv in zip(a, b)) and any(bv > av for av, bv in zip(a, b)):
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return kept


def oracle_hypervolume(points, ref):
    """Inclusion-exclusion hypervolume for small point sets (maximize)."""
    pts = np.asarray(points, dtype=float) - np.asarray(ref, dtype=float)
    pts = np.clip(pts, 0.0, None)
    n = len(pts)
    total = 0.0
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            meet = np.min(pts[list(sub)], axis=0)
            total += (-1) ** (r + 1) * float(np.prod(meet))
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
