"""Hypervolume: exact values, per-point contributions, Monte-Carlo estimates.

Maximize convention throughout: the hypervolume of a point set ``S`` with
reference ``r`` is the Lebesgue measure of the union of boxes ``[r, p]``
over ``p`` in ``S``. Points that fail to dominate ``r`` in some coordinate
contribute nothing and are dropped up front.

The exact computation uses an exclusive-volume recursion: points are sorted
ascending on the last objective, so the limit set of each point has a
constant last coordinate and the recursion slices one dimension per level,
bottoming out in dedicated 2-d and 3-d sweeps. Exact calls with m >= 7 are
guarded by a point-count cap because their cost grows exponentially with m.

Monte-Carlo estimation samples the box between the reference and the ideal
point uniformly, tests each sample for weak dominance against an internal
ND-tree, and stops when the continuity-corrected Wilson confidence interval
for the hit fraction, rescaled to volume units, is narrow enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DimensionError, DomainError
from . import kernels

EXACT_CAP_HIGH_M = 300  # default point cap for exact calls with m >= 7

_Z_TABLE = {0.90: 1.6448536269514722, 0.95: 1.959963984540054, 0.99: 2.5758293035489004}


@dataclass(frozen=True)
class HvProblem:
    """A point set with its reference point, validated and pre-filtered.

    ``points`` keeps only the rows that weakly dominate the reference;
    dropped rows cannot contribute volume.
    """

    points: np.ndarray
    reference: np.ndarray

    @classmethod
    def create(cls, points, reference) -> "HvProblem":
        ref = np.asarray(reference, dtype=np.float64)
        if ref.ndim != 1 or ref.size < 1 or not np.all(np.isfinite(ref)):
            raise DimensionError("reference must be a finite 1-d vector")
        pts = np.asarray(points, dtype=np.float64)
        if pts.size == 0:
            pts = pts.reshape(0, ref.size)
        if pts.ndim != 2 or pts.shape[1] != ref.size:
            raise DimensionError(
                f"points must be (N, {ref.size}), got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise DimensionError("points must be finite")
        keep = np.all(pts >= ref, axis=1)
        return cls(points=np.ascontiguousarray(pts[keep]), reference=ref)

    @property
    def m(self) -> int:
        return self.reference.size


@dataclass(frozen=True)
class HvEstimate:
    """A hypervolume value, optionally with a confidence interval."""

    value: float
    interval: tuple[float, float] | None
    samples: int
    exact: bool

    def __post_init__(self):
        if self.exact and self.interval is not None:
            raise ValueError("exact estimates carry no interval")
        if self.interval is not None:
            lo, hi = self.interval
            if not (lo <= self.value <= hi):
                raise ValueError("value must lie inside its interval")


def _as_problem(problem, reference) -> HvProblem:
    if isinstance(problem, HvProblem):
        return problem
    if reference is None:
        raise DomainError("reference required when passing a raw point set")
    return HvProblem.create(problem, reference)


def hv_exact(problem, reference=None, *, cap: int = EXACT_CAP_HIGH_M) -> HvEstimate:
    """Exact hypervolume. Accepts an HvProblem or (points, reference).

    Raises CapacityError when m >= 7 and more than ``cap`` points survive
    filtering; pass a larger ``cap`` explicitly to override.
    """
    prob = _as_problem(problem, reference)
    n = prob.points.shape[0]
    if prob.m >= 7 and n > cap:
        raise CapacityError(
            f"exact hypervolume with m={prob.m} capped at {cap} points, got {n}")
    shifted = prob.points - prob.reference
    return HvEstimate(value=float(kernels.hv_exact(shifted)),
                      interval=None, samples=0, exact=True)


def hv_contribution(problem, index: int, reference=None, *,
                    cap: int = EXACT_CAP_HIGH_M) -> float:
    """Exclusive contribution of ``points[index]``: hv(all) - hv(without it).

    ``index`` refers to the rows of the problem's (filtered) point set.
    Dominated points contribute exactly zero.
    """
    prob = _as_problem(problem, reference)
    n = prob.points.shape[0]
    if not isinstance(index, (int, np.integer)) or not (0 <= index < n):
        raise DomainError(f"index must lie in [0, {n}), got {index!r}")
    total = hv_exact(prob, cap=cap).value
    rest = np.delete(prob.points, index, axis=0)
    without = hv_exact(HvProblem(points=np.ascontiguousarray(rest),
                                 reference=prob.reference), cap=cap).value
    return total - without


def wilson_interval(hits: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Continuity-corrected Wilson score interval for a binomial fraction.

    Bounds are clamped to [0, 1]; hits == 0 pins the lower bound at 0 and
    hits == trials pins the upper bound at 1.
    """
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise DomainError(f"trials must be an integer >= 1, got {trials!r}")
    if not isinstance(hits, (int, np.integer)) or not (0 <= hits <= trials):
        raise DomainError(f"hits must lie in [0, {trials}], got {hits!r}")
    z = _Z_TABLE.get(round(float(confidence), 6))
    if z is None:
        raise DomainError(
            f"confidence must be one of {sorted(_Z_TABLE)}, got {confidence!r}")
    n = float(trials)
    p = hits / n
    z2 = z * z
    denom = 2.0 * (n + z2)
    if hits == 0:
        lo = 0.0
    else:
        rad = z2 - 2.0 - 1.0 / n + 4.0 * p * (n * (1.0 - p) + 1.0)
        lo = (2.0 * n * p + z2 - 1.0 - z * math.sqrt(max(rad, 0.0))) / denom
    if hits == trials:
        hi = 1.0
    else:
        rad = z2 + 2.0 - 1.0 / n + 4.0 * p * (n * (1.0 - p) - 1.0)
        hi = (2.0 * n * p + z2 + 1.0 + z * math.sqrt(max(rad, 0.0))) / denom
    return max(0.0, min(lo, 1.0)), max(0.0, min(hi, 1.0))


def hv_monte_carlo(problem, reference=None, *, target_width: float,
                   confidence: float = 0.95, batch: int = 10_000,
                   max_samples: int = 5_000_000, seed: int = 0) -> HvEstimate:
    """Monte-Carlo hypervolume with a Wilson-interval stopping rule.

    Samples the box between the reference and the ideal point (componentwise
    maximum of the points). After each batch the hit-fraction interval is
    rescaled by the box volume; sampling stops once its width is at most
    ``target_width`` or ``max_samples`` draws were spent. Reproducible for a
    fixed seed, with identical sample prefixes for any ``max_samples``.
    """
    if not (isinstance(target_width, (int, float)) and target_width > 0):
        raise DomainError(f"target_width must be > 0, got {target_width!r}")
    if batch < 1 or max_samples < 1:
        raise DomainError("batch and max_samples must be >= 1")
    prob = _as_problem(problem, reference)
    pts = prob.points
    if pts.shape[0] == 0:
        return HvEstimate(value=0.0, interval=None, samples=0, exact=True)
    ideal = pts.max(axis=0)
    span = ideal - prob.reference
    volume = float(np.prod(span))
    if volume <= 0.0:
        return HvEstimate(value=0.0, interval=None, samples=0, exact=True)

    tree = kernels.NdTreeArchive(prob.m)
    for p in pts:
        tree.update(np.ascontiguousarray(p))

    rng = np.random.default_rng(seed)
    hits = 0
    drawn = 0
    lo = hi = 0.0
    while True:
        take = min(batch, max_samples - drawn)
        samples = prob.reference + span * rng.random((take, prob.m))
        hits += int(kernels.count_dominated(tree, samples))
        drawn += take
        lo, hi = wilson_interval(hits, drawn, confidence)
        if (hi - lo) * volume <= target_width or drawn >= max_samples:
            break
    return HvEstimate(value=hits / drawn * volume,
                      interval=(lo * volume, hi * volume),
                      samples=drawn, exact=False)


FRONT_KINDS = ("linear", "concave", "convex")


def generate_front(kind: str, m: int, count: int, seed: int = 0) -> np.ndarray:
    """Sample ``count`` mutually non-dominated points in [0, 1]^m.

    * ``convex``: uniform directions on the positive orthant of the unit
      sphere (sum of squares = 1). Coordinates shrink as m grows, so the
      hypervolume against the origin approaches zero in high dimension.
    * ``concave``: the sphere points reflected through the unit box,
      y = 1 - u; the front bulges away from the origin.
    * ``linear``: the plane at unit distance from the ideal corner,
      y = 1 - u with u uniform on the probability simplex (so the sum of
      (1 - y_i) is 1; for m = 2 this is the line y_1 + y_2 = 1).
    """
    if kind not in FRONT_KINDS:
        raise DomainError(f"kind must be one of {FRONT_KINDS}, got {kind!r}")
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if not isinstance(count, (int, np.integer)) or count < 1:
        raise DomainError(f"count must be an integer >= 1, got {count!r}")
    rng = np.random.default_rng(seed)
    if kind == "linear":
        return 1.0 - rng.dirichlet(np.ones(m), size=count)
    gauss = np.abs(rng.standard_normal((count, m)))
    norms = np.linalg.norm(gauss, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    sphere = gauss / norms
    if kind == "convex":
        return sphere
    return 1.0 - sphere


def ideal_point(points: Sequence[Sequence[float]]) -> np.ndarray:
    """Componentwise maximum of a point set."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise DimensionError("need a non-empty (N, m) point set")
    return arr.max(axis=0)


def nadir_point(points: Sequence[Sequence[float]]) -> np.ndarray:
    """Componentwise minimum of a point set."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise DimensionError("need a non-empty (N, m) point set")
    return arr.min(axis=0)
