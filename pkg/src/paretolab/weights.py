"""Simplex-lattice weight vectors and neighborhood distance statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError

MAX_LATTICE_SIZE = 5_000_000


@dataclass(frozen=True)
class WeightSet:
    """All C(H+m-1, m-1) lattice weight vectors for granularity 1/H."""

    m: int
    h: int
    vectors: np.ndarray  # (mu, m), rows sum to 1, lexicographic order

    def __len__(self) -> int:
        return self.vectors.shape[0]


def lattice_size(m: int, h: int) -> int:
    """Number of simplex-lattice vectors: C(H+m-1, m-1)."""
    return math.comb(h + m - 1, m - 1)


def simplex_lattice(m: int, h: int) -> WeightSet:
    """All weight vectors (h_1/H, ..., h_m/H) with nonnegative integer parts
    summing to H, in lexicographic order."""
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if not isinstance(h, (int, np.integer)) or h < 1:
        raise DomainError(f"H must be an integer >= 1, got {h!r}")
    mu = lattice_size(m, h)
    if mu > MAX_LATTICE_SIZE:
        raise CapacityError(f"lattice would hold {mu} vectors (cap {MAX_LATTICE_SIZE})")
    out = np.empty((mu, m), dtype=np.float64)
    comp = [0] * m
    row = 0

    def fill(pos: int, remaining: int):
        nonlocal row
        if pos == m - 1:
            comp[pos] = remaining
            out[row] = comp
            row += 1
            return
        for v in range(remaining + 1):
            comp[pos] = v
            fill(pos + 1, remaining - v)

    fill(0, h)
    out /= h
    assert row == mu
    return WeightSet(m=int(m), h=int(h), vectors=out)


def smallest_h(m: int, min_count: int) -> int:
    """Minimal H whose lattice holds at least ``min_count`` vectors."""
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if not isinstance(min_count, (int, np.integer)) or min_count < 1:
        raise DomainError(f"min_count must be an integer >= 1, got {min_count!r}")
    h = 1
    while lattice_size(m, h) < min_count:
        h += 1
    return h


def neighborhood(wset: WeightSet, index: int, t: float) -> list[int]:
    """Indices of the ceil(t * mu) vectors closest to vectors[index].

    The anchor itself is part of its own neighborhood. Distance ties break
    toward the lexicographically smaller vector.
    """
    mu = len(wset)
    if not isinstance(index, (int, np.integer)) or not (0 <= index < mu):
        raise DomainError(f"index must lie in [0, {mu}), got {index!r}")
    if not (isinstance(t, (int, float)) and 0.0 < t <= 1.0):
        raise DomainError(f"T must lie in (0, 1], got {t!r}")
    size = math.ceil(t * mu)
    d2 = np.sum((wset.vectors - wset.vectors[index]) ** 2, axis=1)
    # lexicographic tiebreak: vectors are already stored in lexicographic
    # order, so a stable sort on distance resolves ties by row order
    order = np.argsort(d2, kind="stable")
    return [int(i) for i in order[:size]]


@dataclass(frozen=True)
class DistanceStats:
    """Mean pairwise distance with a normal-approximation half-width."""

    mean: float
    half_width: float
    pairs: int


def mean_neighbor_distance(wset: WeightSet, t: float, pairs: int = 900,
                           seed: int = 0) -> DistanceStats:
    """Mean Euclidean distance between random (anchor, neighbor) pairs.

    Each pair draws a uniform anchor and a uniform neighbor from the
    anchor's T-neighborhood excluding the anchor itself. The half-width is
    the 95% normal-approximation bound 1.96 * sd / sqrt(pairs).
    """
    if not isinstance(pairs, (int, np.integer)) or pairs < 1:
        raise DomainError(f"pairs must be an integer >= 1, got {pairs!r}")
    mu = len(wset)
    size = math.ceil(float(t) * mu)
    if size <= 1:
        raise DomainError(
            f"T-neighborhoods of size {size} leave no neighbor to sample")
    hoods = [neighborhood(wset, i, t) for i in range(mu)]
    rng = np.random.default_rng(seed)
    dist = np.empty(pairs, dtype=np.float64)
    for p in range(pairs):
        anchor = int(rng.integers(mu))
        hood = hoods[anchor]
        while True:
            nb = hood[int(rng.integers(len(hood)))]
            if nb != anchor:
                break
        dist[p] = np.linalg.norm(wset.vectors[anchor] - wset.vectors[nb])
    mean = float(dist.mean())
    half = 1.96 * float(dist.std(ddof=1)) / math.sqrt(pairs) if pairs > 1 else 0.0
    return DistanceStats(mean=mean, half_width=half, pairs=int(pairs))
