"""Objective vectors, Pareto-dominance relations, and non-dominance probabilities.

Everything here uses the maximize convention: a vector is better where its
entries are larger. Comparisons are exact floating-point comparisons; ties are
reported through the dedicated ``EQUAL`` relation rather than an epsilon.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError
from . import kernels


class DominanceRelation(enum.Enum):
    """Outcome of comparing two objective vectors."""

    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def as_objective_vector(values: Sequence[float] | np.ndarray, m: int | None = None) -> np.ndarray:
    """Validate and convert ``values`` to a float64 objective vector.

    Raises:
        DimensionError: empty vector, wrong length, or non-finite entries.
    """
    vec = np.asarray(values, dtype=np.float64)
    if vec.ndim != 1 or vec.size < 1:
        raise DimensionError(f"objective vector must be 1-d and non-empty, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DimensionError("objective vector entries must be finite")
    if m is not None and vec.size != m:
        raise DimensionError(f"expected {m} objectives, got {vec.size}")
    return vec


def compare(a: Sequence[float], b: Sequence[float]) -> DominanceRelation:
    """Compare two objective vectors under strict Pareto dominance (maximize).

    ``DOMINATES`` means ``a`` is componentwise >= ``b`` with at least one
    strict improvement; ``EQUAL`` means identical vectors.
    """
    va = as_objective_vector(a)
    vb = as_objective_vector(b, m=va.size)
    a_less = bool(np.any(va < vb))
    a_greater = bool(np.any(va > vb))
    if not a_less and not a_greater:
        return DominanceRelation.EQUAL
    if not a_less:
        return DominanceRelation.DOMINATES
    if not a_greater:
        return DominanceRelation.DOMINATED_BY
    return DominanceRelation.INCOMPARABLE


def weakly_dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` >= ``b`` componentwise (reflexive)."""
    va = as_objective_vector(a)
    vb = as_objective_vector(b, m=va.size)
    return bool(np.all(va >= vb))


def nd_pair_probability(m: int) -> float:
    """Probability that two random solutions are mutually non-dominated.

    Model: objective comparisons independent, ties negligible. One solution
    dominates the other with probability 1/2^(m-1), so the pair is mutually
    non-dominated with probability 1 - 1/2^(m-1).
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"objective count m must be an integer >= 1, got {m!r}")
    return 1.0 - 0.5 ** (m - 1)


def all_pairs_nd_probability(m: int, mu: int) -> float:
    """Probability that all ``mu`` random pairs are mutually non-dominated."""
    if not isinstance(mu, (int, np.integer)) or mu < 0:
        raise DomainError(f"pair count mu must be an integer >= 0, got {mu!r}")
    return nd_pair_probability(m) ** mu


def filter_nondominated(points: Iterable[Sequence[float]]) -> list[np.ndarray]:
    """Keep every point not strictly dominated by another point of the input.

    Duplicates of a retained vector are all retained (equal vectors do not
    dominate each other), and the input order is preserved. This is the
    naive pairwise scan that serves as ground truth for the archive backends.
    """
    rows = [as_objective_vector(p) for p in points]
    if not rows:
        return []
    m = rows[0].size
    for r in rows[1:]:
        if r.size != m:
            raise DimensionError("all points must share one dimension")
    arr = np.ascontiguousarray(np.stack(rows))
    mask = kernels.nondominated_mask(arr)
    return [rows[i] for i in range(len(rows)) if mask[i]]


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Array form of :func:`filter_nondominated`: bool mask over rows."""
    arr = np.ascontiguousarray(np.asarray(points, dtype=np.float64))
    if arr.ndim != 2:
        raise DimensionError(f"points must be a (N, m) array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("points must be finite")
    return kernels.nondominated_mask(arr).astype(bool)
