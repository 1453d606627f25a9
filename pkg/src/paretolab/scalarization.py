"""Scalarizing functionals: a general polyhedral form and its specializations.

This module works in the minimization convention: smaller functional values
are better, and the landscape bridge in :func:`scalarize_landscape` applies
functionals to the negated objective vector of each solution.

The general form is built from a polyhedral set A = {y : <a_i, y> <= alpha_i}
shifted by a reference vector w, and a direction k with <a_i, k> > 0 for all
rows. Its value at y is

    phi(y) = max_i (<a_i, y> - <a_i, w> - alpha_i) / <a_i, k>,

the smallest t such that y lies in t*k + w + A. The positivity requirement on
<a_i, k> is what makes this maximum attain the defining infimum, so it is
enforced at construction. The weighted Chebyshev, weighted-sum, and
Pascoletti-Serafini functionals are all instances of this form; factory
helpers below build the corresponding encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import CapacityError, DimensionError, DomainError
from . import landscapes


class Infeasible:
    """Singleton result of an epsilon-constraint evaluation whose bounds fail."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFEASIBLE"


INFEASIBLE = Infeasible()

ScalarValue = Union[float, Infeasible]


def _vec(x, m=None, name="vector") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1 or not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} must be a finite 1-d vector")
    if m is not None and arr.size != m:
        raise DimensionError(f"{name} must have length {m}, got {arr.size}")
    return arr


@dataclass(frozen=True)
class PolyhedralSet:
    """Rows (a_i, alpha_i) describing {y : <a_i, y> <= alpha_i for all i}."""

    a: np.ndarray       # (rows, m)
    alpha: np.ndarray   # (rows,)

    @classmethod
    def create(cls, rows: Sequence[tuple[Sequence[float], float]]) -> "PolyhedralSet":
        if not rows:
            raise DomainError("a polyhedral set needs at least one row")
        vecs = [_vec(a, name="row normal") for a, _ in rows]
        m = vecs[0].size
        for v in vecs[1:]:
            if v.size != m:
                raise DimensionError("all row normals must share one dimension")
        a = np.stack(vecs)
        if np.any(np.all(a == 0.0, axis=1)):
            raise DomainError("row normals must be nonzero")
        alpha = np.asarray([float(al) for _, al in rows], dtype=np.float64)
        if not np.all(np.isfinite(alpha)):
            raise DomainError("row offsets must be finite")
        return cls(a=a, alpha=alpha)

    @property
    def m(self) -> int:
        return self.a.shape[1]


@dataclass(frozen=True)
class GeneralScalarizer:
    """phi_{w+A,k}: the polyhedral set with its reference w and direction k."""

    set: PolyhedralSet
    w: np.ndarray
    k: np.ndarray
    _denominators: np.ndarray
    _offsets: np.ndarray

    @classmethod
    def create(cls, polyset: PolyhedralSet, w, k) -> "GeneralScalarizer":
        w = _vec(w, polyset.m, "reference w")
        k = _vec(k, polyset.m, "direction k")
        denom = polyset.a @ k
        if np.any(denom <= 0.0):
            raise DomainError(
                "every row must satisfy <a_i, k> > 0; the max formula equals "
                f"the defining infimum only then (got {denom})")
        offsets = polyset.a @ w + polyset.alpha
        return cls(set=polyset, w=w, k=k, _denominators=denom, _offsets=offsets)

    def __call__(self, y) -> float:
        return phi_general(self, y)


def phi_general(scalarizer: GeneralScalarizer, y) -> float:
    """Evaluate the general functional: max_i (<a_i,y> - <a_i,w> - alpha_i) / <a_i,k>."""
    yv = _vec(y, scalarizer.set.m, "y")
    return float(np.max((scalarizer.set.a @ yv - scalarizer._offsets)
                        / scalarizer._denominators))


def chebyshev(y, lam, w) -> float:
    """Weighted Chebyshev value max_i lam_i * (y_i - w_i); lam must be positive."""
    yv = _vec(y, name="y")
    lv = _vec(lam, yv.size, "weights")
    wv = _vec(w, yv.size, "reference w")
    if np.any(lv <= 0.0):
        raise DomainError("Chebyshev weights must be strictly positive")
    return float(np.max(lv * (yv - wv)))


def weighted_sum(y, a) -> float:
    """Weighted sum <a, y>; a must be nonnegative and not all zero."""
    yv = _vec(y, name="y")
    av = _vec(a, yv.size, "weights")
    if np.any(av < 0.0) or not np.any(av > 0.0):
        raise DomainError("weighted-sum weights must be nonnegative and nonzero")
    return float(av @ yv)


def epsilon_constraint(y, j: int, eps) -> ScalarValue:
    """y_j if every other objective satisfies y_i <= eps_i, else INFEASIBLE.

    ``eps`` lists the bounds for the objectives i != j in ascending index
    order. The boundary y_i == eps_i is feasible.
    """
    yv = _vec(y, name="y")
    if not isinstance(j, (int, np.integer)) or not (0 <= j < yv.size):
        raise DomainError(f"objective index j must lie in [0, {yv.size}), got {j!r}")
    ev = np.asarray(eps, dtype=np.float64)
    if ev.shape != (yv.size - 1,):
        raise DimensionError(
            f"eps must list {yv.size - 1} bounds (all objectives but j), got shape {ev.shape}")
    others = np.delete(yv, j)
    if np.any(others > ev):
        return INFEASIBLE
    return float(yv[j])


def pascoletti_serafini(y, a, k) -> float:
    """Smallest t with y in t*k + a - R^m_+, i.e. max_i (y_i - a_i) / k_i."""
    yv = _vec(y, name="y")
    av = _vec(a, yv.size, "anchor a")
    kv = _vec(k, yv.size, "direction k")
    if np.any(kv <= 0.0):
        raise DomainError("Pascoletti-Serafini direction k must be strictly positive")
    return float(np.max((yv - av) / kv))


# -- general-form encodings of the named functionals


def chebyshev_scalarizer(lam, w) -> GeneralScalarizer:
    """General-form encoding of the weighted Chebyshev functional.

    Rows lam_i * e_i with offsets 0 and direction k_i = 1/lam_i, so every
    denominator <a_i, k> is exactly 1.
    """
    lv = _vec(lam, name="weights")
    if np.any(lv <= 0.0):
        raise DomainError("Chebyshev weights must be strictly positive")
    wv = _vec(w, lv.size, "reference w")
    rows = [(lv[i] * np.eye(lv.size)[i], 0.0) for i in range(lv.size)]
    return GeneralScalarizer.create(PolyhedralSet.create(rows), wv, 1.0 / lv)


def weighted_sum_scalarizer(a) -> GeneralScalarizer:
    """General-form encoding of the weighted sum: one row (a, 0), w = 0.

    The direction spreads 1/<a, 1> over all coordinates so <a, k> = 1.
    """
    av = _vec(a, name="weights")
    if np.any(av < 0.0) or not np.any(av > 0.0):
        raise DomainError("weighted-sum weights must be nonnegative and nonzero")
    k = np.ones(av.size) / float(av.sum())
    return GeneralScalarizer.create(
        PolyhedralSet.create([(av, 0.0)]), np.zeros(av.size), k)


def pascoletti_serafini_scalarizer(a, k) -> GeneralScalarizer:
    """General-form encoding of Pascoletti-Serafini: unit rows, w = a."""
    av = _vec(a, name="anchor a")
    kv = _vec(k, av.size, "direction k")
    if np.any(kv <= 0.0):
        raise DomainError("Pascoletti-Serafini direction k must be strictly positive")
    rows = [(np.eye(av.size)[i], 0.0) for i in range(av.size)]
    return GeneralScalarizer.create(PolyhedralSet.create(rows), av, kv)


def scalarize_landscape(inst: landscapes.NkInstance,
                        functional: Callable[[np.ndarray], ScalarValue],
                        sense: str = "min") -> tuple[str, np.ndarray, float]:
    """Exhaustively optimize a scalarizing functional over an NK instance.

    With ``sense="min"`` (the default) the functional is applied to the
    negated objective vector -f(x), matching the minimization convention of
    this module against the maximizing landscapes; the solution minimizing
    it wins. ``sense="max"`` instead maximizes functional(f(x)) directly.
    INFEASIBLE evaluations never win. Ties break toward the
    lexicographically smallest bit string. Returns (bits, f(x), value).
    """
    if sense not in ("min", "max"):
        raise DomainError(f"sense must be 'min' or 'max', got {sense!r}")
    if inst.n > landscapes.ENUMERATION_MAX_N:
        raise CapacityError(
            f"exhaustive scalarization limited to n <= {landscapes.ENUMERATION_MAX_N}")
    values = landscapes.evaluate_all(inst)
    best_code = None
    best_val = None
    for code in range(values.shape[0]):
        fx = values[code]
        val = functional(-fx) if sense == "min" else functional(fx)
        if isinstance(val, Infeasible):
            continue
        better = (best_val is None or (val < best_val if sense == "min" else val > best_val))
        if better:
            best_code, best_val = code, val
    if best_code is None:
        raise DomainError("no feasible solution under the given functional")
    return landscapes.code_to_bits(best_code, inst.n), values[best_code], float(best_val)
