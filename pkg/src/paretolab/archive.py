"""Pareto archives behind interchangeable backends.

A ``ParetoArchive`` maintains a set of mutually non-dominated objective
vectors (maximize convention) and counts per-objective pairwise comparisons,
the elementary operation of the dominance test. Three backends are
available:

* ``"list"`` — unordered array, linear scan;
* ``"nd-tree"`` — ND-tree with approximate ideal/nadir node bounds;
* ``"quad-tree"`` — successor-based quad tree with sparse branch keys.

All backends produce identical snapshot sets for identical input streams;
they differ only in how many comparisons and how much time they spend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import DimensionError, DomainError
from . import kernels

BACKENDS = ("list", "nd-tree", "quad-tree")

_ALIASES = {
    "list": "list",
    "nd-tree": "nd-tree",
    "ndtree": "nd-tree",
    "nd_tree": "nd-tree",
    "quad-tree": "quad-tree",
    "quadtree": "quad-tree",
    "quad_tree": "quad-tree",
}


@dataclass(frozen=True)
class UpdateOutcome:
    """Result of offering a vector to an archive."""

    inserted: bool
    removed: int            # members displaced by the inserted vector
    duplicate: bool = False  # rejected because an equal member exists

    @property
    def rejected_dominated(self) -> bool:
        return not self.inserted and not self.duplicate


class ParetoArchive:
    """Mutually non-dominated vector set with a pluggable backend."""

    def __init__(self, backend: str = "list", m: int = 2, *,
                 leaf_capacity: int = 20, max_children: int | None = None):
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise DomainError(f"m must be an integer >= 1, got {m!r}")
        name = _ALIASES.get(str(backend).lower())
        if name is None:
            raise DomainError(f"unknown backend {backend!r}; choose from {BACKENDS}")
        self.backend = name
        self.m = int(m)
        if name == "list":
            self._core = kernels.ListArchive(self.m)
        elif name == "nd-tree":
            self._core = kernels.NdTreeArchive(
                self.m, leaf_capacity=leaf_capacity,
                max_children=(max_children or 0))
        else:
            self._core = kernels.QuadTreeArchive(self.m)
        self._payloads: dict[tuple, Any] = {}

    def __len__(self) -> int:
        return len(self._core)

    @property
    def size(self) -> int:
        return len(self._core)

    def _check(self, y) -> np.ndarray:
        arr = np.ascontiguousarray(y, dtype=np.float64)
        if arr.shape != (self.m,):
            raise DimensionError(f"expected a vector of {self.m} objectives, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DimensionError("objective vector entries must be finite")
        return arr

    def update(self, y: Sequence[float], payload: Any = None) -> UpdateOutcome:
        """Offer ``y``: insert it unless some member weakly dominates it.

        Inserting removes every member strictly dominated by ``y``. An
        offered vector equal to a member is rejected as a duplicate, so the
        archive stays a set.
        """
        arr = self._check(y)
        code, removed = self._core.update(arr)
        if code == kernels.INSERTED:
            if self._payloads or payload is not None:
                for gone in removed:
                    self._payloads.pop(tuple(gone), None)
                if payload is not None:
                    self._payloads[tuple(arr)] = payload
            return UpdateOutcome(inserted=True, removed=len(removed))
        return UpdateOutcome(inserted=False, removed=0,
                             duplicate=(code == kernels.REJECTED_DUPLICATE))

    def is_dominated(self, y: Sequence[float]) -> bool:
        """True iff some member weakly dominates ``y``; the archive is unchanged."""
        return bool(self._core.is_dominated(self._check(y)))

    def snapshot(self) -> list[np.ndarray]:
        """Current members in lexicographic order of their objective values."""
        pts = self._core.points()
        order = np.lexsort(pts.T[::-1]) if len(pts) else []
        return [pts[i] for i in order]

    def points(self) -> np.ndarray:
        """Current members as an (N, m) array in backend storage order."""
        return self._core.points()

    def payload(self, y: Sequence[float]) -> Any:
        """Payload attached to the member equal to ``y`` (None if absent)."""
        return self._payloads.get(tuple(self._check(y)))

    @property
    def comparisons(self) -> int:
        """Per-objective pairwise comparisons performed since creation."""
        return self._core.comparisons


def new_archive(backend: str, m: int, **kwargs) -> ParetoArchive:
    """Factory mirroring ParetoArchive(backend, m)."""
    return ParetoArchive(backend, m, **kwargs)
