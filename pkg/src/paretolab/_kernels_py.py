"""Pure-Python kernels: dominance scans, archive backends, exact hypervolume.

This module is the portable fallback for the compiled extension
``paretolab._kernels``. Both expose the same API and the same observable
semantics, including the comparison counters:

* one "comparison" is one per-objective pairwise comparison (deciding the
  order of a single coordinate pair in one step);
* list and ND-tree scans short-circuit and only count coordinates actually
  examined; node-bound tests (ideal/nadir) count the same way;
* the quad-tree charges m per successorship computation, since it derives
  the full per-objective bit pattern of the query against a node point;
* structural arithmetic (bound extension, centroid distances) is not counted.

Outcome codes for ``update``: 0 inserted, 1 rejected (dominated),
2 rejected (duplicate).
"""

from __future__ import annotations

import numpy as np

INSERTED = 0
REJECTED_DOMINATED = 1
REJECTED_DUPLICATE = 2

COMPILED = False


# ---------------------------------------------------------------------------
# dominance scans


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """uint8 mask of rows not strictly dominated by any other row (maximize).

    Equal rows do not dominate each other, so duplicates are all retained.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    n = pts.shape[0]
    mask = np.ones(n, dtype=np.uint8)
    if n == 0:
        return mask
    block = 256
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        chunk = pts[lo:hi]  # (B, m)
        ge = np.all(pts[None, :, :] >= chunk[:, None, :], axis=2)  # (B, N)
        gt = np.any(pts[None, :, :] > chunk[:, None, :], axis=2)
        dominated = np.any(ge & gt, axis=1)
        mask[lo:hi] = ~dominated
    return mask


def _pair_scan(member, y, m):
    """Scan ``member`` against ``y`` with short-circuit.

    Returns (less, greater, ops): ``less`` iff some member_j < y_j,
    ``greater`` iff some member_j > y_j; stops once both are known.
    """
    less = False
    greater = False
    ops = 0
    for j in range(m):
        ops += 1
        a = member[j]
        b = y[j]
        if a < b:
            less = True
            if greater:
                break
        elif a > b:
            greater = True
            if less:
                break
    return less, greater, ops


def _weak_dom_scan(member, y, m):
    """(member >= y componentwise, ops); fails fast on the first member_j < y_j."""
    ops = 0
    for j in range(m):
        ops += 1
        if member[j] < y[j]:
            return False, ops
    return True, ops


# ---------------------------------------------------------------------------
# list backend


class ListArchive:
    """Unordered-array Pareto archive with a linear-scan update."""

    def __init__(self, m: int):
        self.m = int(m)
        self._buf = np.empty((64, self.m), dtype=np.float64)
        self._size = 0
        self.comparisons = 0

    def __len__(self) -> int:
        return self._size

    def points(self) -> np.ndarray:
        return self._buf[: self._size].copy()

    def is_dominated(self, y) -> bool:
        y = np.asarray(y, dtype=np.float64)
        m = self.m
        for i in range(self._size):
            ok, ops = _weak_dom_scan(self._buf[i], y, m)
            self.comparisons += ops
            if ok:
                return True
        return False

    def update(self, y):
        y = np.asarray(y, dtype=np.float64)
        m = self.m
        removed = []
        i = 0
        while i < self._size:
            less, greater, ops = _pair_scan(self._buf[i], y, m)
            self.comparisons += ops
            if not less:
                # member weakly dominates y; no removals can have happened
                return (REJECTED_DUPLICATE if not greater else REJECTED_DOMINATED), []
            if not greater:
                # y strictly dominates member: swap-remove
                removed.append(self._buf[i].copy())
                self._size -= 1
                if i != self._size:
                    self._buf[i] = self._buf[self._size]
                continue
            i += 1
        if self._size == self._buf.shape[0]:
            grown = np.empty((self._buf.shape[0] * 2, m), dtype=np.float64)
            grown[: self._size] = self._buf[: self._size]
            self._buf = grown
        self._buf[self._size] = y
        self._size += 1
        return INSERTED, removed


# ---------------------------------------------------------------------------
# ND-tree backend


class _NTNode:
    __slots__ = ("ideal", "nadir", "pts", "kids")

    def __init__(self, ideal, nadir, pts, kids):
        self.ideal = ideal
        self.nadir = nadir
        self.pts = pts      # list of 1-d arrays (leaf) or None
        self.kids = kids    # list of _NTNode (internal) or None


class NdTreeArchive:
    """ND-tree Pareto archive.

    Nodes keep approximate ideal/nadir bounds, extended on insert and left
    loose (still covering) after removals. Leaves split into up to
    ``max_children`` clusters seeded by farthest-point selection.
    """

    def __init__(self, m: int, leaf_capacity: int = 20, max_children: int = 0):
        self.m = int(m)
        self.leaf_capacity = int(leaf_capacity)
        self.max_children = int(max_children) if max_children else self.m + 1
        if self.leaf_capacity < 1:
            raise ValueError("leaf_capacity must be >= 1")
        if self.max_children < 2:
            raise ValueError("max_children must be >= 2")
        self._root = None
        self._size = 0
        self.comparisons = 0

    def __len__(self) -> int:
        return self._size

    def points(self) -> np.ndarray:
        out = np.empty((self._size, self.m), dtype=np.float64)
        idx = 0
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            if node.pts is not None:
                for p in node.pts:
                    out[idx] = p
                    idx += 1
            else:
                stack.extend(node.kids)
        return out

    # -- queries

    def _first_point(self, node):
        while node.pts is None:
            node = node.kids[0]
        return node.pts[0]

    def _classify_rejection(self, anchor, y):
        less, greater, ops = _pair_scan(anchor, y, self.m)
        self.comparisons += ops
        return REJECTED_DUPLICATE if (not less and not greater) else REJECTED_DOMINATED

    def _find_weak_dominator(self, y) -> int:
        """0 if no member weakly dominates y, else a rejection code."""
        if self._root is None:
            return 0
        m = self.m
        stack = [self._root]
        while stack:
            node = stack.pop()
            ok, ops = _weak_dom_scan(node.ideal, y, m)
            self.comparisons += ops
            if not ok:
                continue  # no point under this node can weakly dominate y
            ok, ops = _weak_dom_scan(node.nadir, y, m)
            self.comparisons += ops
            if ok:
                # nadir >= y: every point in the subtree weakly dominates y
                return self._classify_rejection(self._first_point(node), y)
            if node.pts is not None:
                for p in node.pts:
                    ok, ops = _weak_dom_scan(p, y, m)
                    self.comparisons += ops
                    if ok:
                        eq, ops = _weak_dom_scan(y, p, m)
                        self.comparisons += ops
                        return REJECTED_DUPLICATE if eq else REJECTED_DOMINATED
            else:
                self._push_strongest_last(stack, node.kids)
        return 0

    def _push_strongest_last(self, stack, kids):
        # LIFO stack: push ascending by nadir sum so the strongest cluster is
        # examined first; a dominated query then tends to reject in one path
        if len(kids) > 32:
            stack.extend(kids)
            return
        order = sorted(range(len(kids)), key=lambda i: float(kids[i].nadir.sum()))
        for i in order:
            stack.append(kids[i])

    def is_dominated(self, y) -> bool:
        y = np.asarray(y, dtype=np.float64)
        return self._find_weak_dominator(y) != 0

    # -- removal of members strictly dominated by y

    def _collect_subtree(self, node, removed):
        stack = [node]
        count = 0
        while stack:
            nd = stack.pop()
            if nd.pts is not None:
                removed.extend(nd.pts)
                count += len(nd.pts)
            else:
                stack.extend(nd.kids)
        return count

    def _remove_dominated(self, node, y, removed) -> bool:
        """Prune members <= y under ``node``; True if the node became empty."""
        m = self.m
        ok, ops = _weak_dom_scan(y, node.nadir, m)
        self.comparisons += ops
        if not ok:
            return False  # nothing under this node can be dominated by y
        ok, ops = _weak_dom_scan(y, node.ideal, m)
        self.comparisons += ops
        if ok:
            self._size -= self._collect_subtree(node, removed)
            return True
        if node.pts is not None:
            kept = []
            for p in node.pts:
                dom, ops = _weak_dom_scan(y, p, m)
                self.comparisons += ops
                if dom:
                    removed.append(p)
                    self._size -= 1
                else:
                    kept.append(p)
            node.pts = kept
            return not kept
        kept_kids = []
        for child in node.kids:
            if not self._remove_dominated(child, y, removed):
                kept_kids.append(child)
        node.kids = kept_kids
        if not kept_kids:
            return True
        if len(kept_kids) == 1:
            only = kept_kids[0]
            node.ideal, node.nadir = only.ideal, only.nadir
            node.pts, node.kids = only.pts, only.kids
        return False

    # -- insertion

    def _split(self, leaf):
        pts = leaf.pts
        n = len(pts)
        nc = min(self.max_children, n)
        d2 = np.zeros((n, n))
        arr = np.stack(pts)
        for i in range(n):
            d2[i] = np.sum((arr - arr[i]) ** 2, axis=1)
        i0, j0 = divmod(int(np.argmax(d2)), n)
        seeds = [i0, j0]
        mind = np.minimum(d2[i0], d2[j0])
        while len(seeds) < nc:
            nxt = int(np.argmax(mind))
            seeds.append(nxt)
            mind = np.minimum(mind, d2[nxt])
        groups = [[s] for s in seeds]
        seed_rows = arr[seeds]
        for i in range(n):
            if i in seeds:
                continue
            groups[int(np.argmin(np.sum((seed_rows - arr[i]) ** 2, axis=1)))].append(i)
        kids = []
        for g in groups:
            gpts = [pts[i] for i in g]
            garr = arr[g]
            kids.append(_NTNode(garr.max(axis=0), garr.min(axis=0), gpts, None))
        leaf.pts = None
        leaf.kids = kids

    def _insert(self, y):
        if self._root is None:
            self._root = _NTNode(y.copy(), y.copy(), [y.copy()], None)
            self._size = 1
            return
        node = self._root
        while True:
            np.maximum(node.ideal, y, out=node.ideal)
            np.minimum(node.nadir, y, out=node.nadir)
            if node.pts is not None:
                break
            best, best_d = None, np.inf
            for child in node.kids:
                mid = (child.ideal + child.nadir) * 0.5
                d = float(np.sum((mid - y) ** 2))
                if d < best_d:
                    best, best_d = child, d
            node = best
        node.pts.append(y.copy())
        self._size += 1
        if len(node.pts) > self.leaf_capacity:
            self._split(node)

    def update(self, y):
        y = np.ascontiguousarray(y, dtype=np.float64)
        if self._root is None:
            self._insert(y)
            return INSERTED, []
        code = self._find_weak_dominator(y)
        if code:
            return code, []
        removed = []
        if self._remove_dominated(self._root, y, removed):
            self._root = None
        self._insert(y)
        return INSERTED, removed


# ---------------------------------------------------------------------------
# quad-tree backend


class _QTNode:
    __slots__ = ("point", "keys", "kids")

    def __init__(self, point):
        self.point = point
        self.keys = []  # int successorship masks
        self.kids = []  # _QTNode, parallel to keys


class QuadTreeArchive:
    """Successor-based quad tree ("Quad Tree 2" flavor).

    Children are keyed by the per-objective bit pattern (bit i set iff
    y_i >= p_i) of the stored point against the node point; keys are held
    sparsely. Deleting a dominated node detaches its whole subtree, drops
    the subtree members that are themselves dominated, and reinserts the
    survivors.
    """

    def __init__(self, m: int):
        self.m = int(m)
        if self.m > 62:
            raise ValueError("quad-tree masks support at most 62 objectives")
        self._root = None
        self._size = 0
        self.comparisons = 0

    def __len__(self) -> int:
        return self._size

    def points(self) -> np.ndarray:
        out = np.empty((self._size, self.m), dtype=np.float64)
        idx = 0
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            out[idx] = node.point
            idx += 1
            stack.extend(node.kids)
        return out

    def _mask(self, y, p):
        """(mask, y_less, y_greater); charges m comparisons."""
        mask = 0
        y_less = False
        y_greater = False
        for j in range(self.m):
            if y[j] >= p[j]:
                mask |= 1 << j
                if y[j] > p[j]:
                    y_greater = True
            else:
                y_less = True
        self.comparisons += self.m
        return mask, y_less, y_greater

    def _find_weak_dominator(self, y) -> int:
        if self._root is None:
            return 0
        stack = [self._root]
        while stack:
            node = stack.pop()
            mask, y_less, y_greater = self._mask(y, node.point)
            if not y_greater:
                return REJECTED_DUPLICATE if not y_less else REJECTED_DOMINATED
            for t, kid in zip(node.keys, node.kids):
                if t & mask == mask:  # only superset branches can dominate y
                    stack.append(kid)
        return 0

    def is_dominated(self, y) -> bool:
        y = np.asarray(y, dtype=np.float64)
        return self._find_weak_dominator(y) != 0

    def _insert_point(self, y):
        if self._root is None:
            self._root = _QTNode(y)
            self._size += 1
            return
        node = self._root
        while True:
            mask, _, _ = self._mask(y, node.point)
            for i, t in enumerate(node.keys):
                if t == mask:
                    node = node.kids[i]
                    break
            else:
                node.keys.append(mask)
                node.kids.append(_QTNode(y))
                self._size += 1
                return

    def _subtree_points(self, node):
        pts = []
        stack = [node]
        while stack:
            nd = stack.pop()
            pts.append(nd.point)
            stack.extend(nd.kids)
        return pts

    def update(self, y):
        y = np.ascontiguousarray(y, dtype=np.float64).copy()
        if self._root is None:
            self._insert_point(y)
            return INSERTED, []
        code = self._find_weak_dominator(y)
        if code:
            return code, []
        removed = []
        survivors = []
        root_mask, _, _ = self._mask(y, self._root.point)
        if root_mask == (1 << self.m) - 1:
            # y weakly dominates the root point: tear the tree down
            doomed = [self._root]
            self._root = None
        else:
            doomed = []
            stack = [(self._root, root_mask)]
            while stack:
                node, mask = stack.pop()
                # visit only subset branches: they alone can hold points <= y
                i = 0
                while i < len(node.keys):
                    t = node.keys[i]
                    if t & mask != t:
                        i += 1
                        continue
                    kid = node.kids[i]
                    kmask, kless, _ = self._mask(y, kid.point)
                    if not kless:
                        # y >= kid.point, strictly: detach the whole subtree
                        doomed.append(kid)
                        last = len(node.keys) - 1
                        node.keys[i] = node.keys[last]
                        node.kids[i] = node.kids[last]
                        node.keys.pop()
                        node.kids.pop()
                        continue  # re-examine swapped-in slot i
                    stack.append((kid, kmask))
                    i += 1
        for node in doomed:
            for p in self._subtree_points(node):
                self._size -= 1
                _, y_less, _ = self._mask(y, p)
                if y_less:
                    survivors.append(p)  # keeps a coordinate above y
                else:
                    removed.append(p)    # y >= p componentwise: dominated
        self._insert_point(y)
        for p in survivors:
            self._insert_point(p)
        return INSERTED, removed


# ---------------------------------------------------------------------------
# exact hypervolume (maximize convention, reference at the origin)


def _hv2(pts: np.ndarray) -> float:
    order = np.argsort(-pts[:, 0], kind="stable")
    vol = 0.0
    ymax = 0.0
    for i in order:
        x, y = pts[i, 0], pts[i, 1]
        if y > ymax:
            vol += x * (y - ymax)
            ymax = y
    return vol


def _stair_insert(xs: list, ys: list, x: float, y: float) -> float:
    """Insert (x, y) into a 2-d staircase; return the area gained."""
    import bisect

    idx = bisect.bisect_left(xs, x)
    if idx < len(xs) and ys[idx] >= y:
        return 0.0
    j = idx - 1
    while j >= 0 and ys[j] <= y:
        j -= 1
    gain = 0.0
    left = xs[j] if j >= 0 else 0.0
    for t in range(j + 1, idx):
        gain += (xs[t] - left) * (y - ys[t])
        left = xs[t]
    y_right = ys[idx] if idx < len(xs) else 0.0
    gain += (x - left) * (y - y_right)
    xs[j + 1:idx] = [x]
    ys[j + 1:idx] = [y]
    return gain


def _hv3(pts: np.ndarray) -> float:
    order = np.argsort(-pts[:, 2], kind="stable")
    xs: list = []
    ys: list = []
    vol = 0.0
    area = 0.0
    z_prev = float(pts[order[0], 2])
    for i in order:
        z = float(pts[i, 2])
        vol += area * (z_prev - z)
        area += _stair_insert(xs, ys, float(pts[i, 0]), float(pts[i, 1]))
        z_prev = z
    vol += area * z_prev
    return vol


def _nds_unique(arr: np.ndarray) -> np.ndarray:
    arr = np.unique(arr, axis=0)
    mask = nondominated_mask(arr).astype(bool)
    return arr[mask]


def _wfg(pts: np.ndarray) -> float:
    n, m = pts.shape
    if n == 0:
        return 0.0
    if m == 1:
        return float(pts.max())
    if m == 2:
        return _hv2(pts)
    if m == 3:
        return _hv3(pts)
    # ascending sort on the last objective: every limit set then has a
    # constant last coordinate, so its volume slices down to m-1 dimensions
    order = np.argsort(pts[:, -1], kind="stable")
    pts = pts[order]
    total = 0.0
    for k in range(n):
        p = pts[k]
        total += float(np.prod(p))
        if k + 1 < n:
            limit = np.minimum(pts[k + 1:, : m - 1], p[: m - 1])
            limit = _nds_unique(limit)
            total -= float(p[m - 1]) * _wfg(limit)
    return total


def hv_exact(points: np.ndarray) -> float:
    """Hypervolume of the union of boxes [0, p] over the rows of ``points``.

    Rows must be componentwise >= 0 (the caller translates by the reference
    point). Dominated and duplicate rows are filtered here and do not affect
    the result.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.shape[0] == 0:
        return 0.0
    return _wfg(_nds_unique(pts))


def count_dominated(archive, samples: np.ndarray) -> int:
    """Number of sample rows weakly dominated by some archive member."""
    hits = 0
    for row in np.ascontiguousarray(samples, dtype=np.float64):
        if archive.is_dominated(row):
            hits += 1
    return hits
