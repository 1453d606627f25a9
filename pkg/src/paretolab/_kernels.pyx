# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: dominance scans, archive backends, exact hypervolume.

Mirror of ``paretolab._kernels_py`` (same API, same observable semantics,
same comparison-counting convention); see that module for the documentation
of the counting rules and outcome codes.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np
cimport numpy as cnp

cnp.import_array()

INSERTED = 0
REJECTED_DOMINATED = 1
REJECTED_DUPLICATE = 2

COMPILED = True

DEF CODE_INSERTED = 0
DEF CODE_DOMINATED = 1
DEF CODE_DUPLICATE = 2


# ---------------------------------------------------------------------------
# scan primitives

cdef inline Py_ssize_t _pair_scan_c(const double* mem, const double* y,
                                    Py_ssize_t m, bint* less, bint* greater) noexcept nogil:
    cdef Py_ssize_t j, ops = 0
    cdef double a, b
    less[0] = False
    greater[0] = False
    for j in range(m):
        ops += 1
        a = mem[j]
        b = y[j]
        if a < b:
            less[0] = True
            if greater[0]:
                break
        elif a > b:
            greater[0] = True
            if less[0]:
                break
    return ops


cdef inline Py_ssize_t _weak_scan_c(const double* mem, const double* y,
                                    Py_ssize_t m, bint* ok) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(m):
        if mem[j] < y[j]:
            ok[0] = False
            return j + 1
    ok[0] = True
    return m


def nondominated_mask(points):
    """uint8 mask of rows not strictly dominated by any other row (maximize)."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] pts = \
        np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], m = pts.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.ones(n, dtype=np.uint8)
    if n == 0:
        return mask
    cdef double* base = &pts[0, 0]
    cdef cnp.uint8_t* mk = &mask[0]
    cdef Py_ssize_t i, j, k
    cdef const double* pi
    cdef const double* pj
    cdef bint ge, gt
    with nogil:
        for i in range(n):
            pi = base + i * m
            for j in range(n):
                if j == i or not mk[j]:
                    # a dominated j cannot be the only dominator of i:
                    # whatever dominates j dominates i transitively
                    continue
                pj = base + j * m
                ge = True
                gt = False
                for k in range(m):
                    if pj[k] < pi[k]:
                        ge = False
                        break
                    elif pj[k] > pi[k]:
                        gt = True
                if ge and gt:
                    mk[i] = 0
                    break
    return mask


# ---------------------------------------------------------------------------
# list backend

cdef class ListArchive:
    """Unordered-array Pareto archive with a linear-scan update."""

    cdef readonly Py_ssize_t m
    cdef cnp.ndarray _buf
    cdef Py_ssize_t _size
    cdef unsigned long long _comparisons

    def __cinit__(self, m):
        self.m = int(m)
        self._buf = np.empty((64, self.m), dtype=np.float64)
        self._size = 0
        self._comparisons = 0

    property comparisons:
        def __get__(self):
            return self._comparisons

    def __len__(self):
        return self._size

    def points(self):
        return self._buf[: self._size].copy()

    def is_dominated(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64)
        cdef double[:, ::1] buf = self._buf
        cdef const double* yp = &yv[0]
        cdef Py_ssize_t i, m = self.m, n = self._size
        cdef unsigned long long ops = 0
        cdef bint ok = False
        cdef bint found = False
        with nogil:
            for i in range(n):
                ops += _weak_scan_c(&buf[i, 0], yp, m, &ok)
                if ok:
                    found = True
                    break
        self._comparisons += ops
        return bool(found)

    def update(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64)
        cdef double[:, ::1] buf = self._buf
        cdef const double* yp = &yv[0]
        cdef Py_ssize_t i = 0, m = self.m
        cdef bint less = False, greater = False
        removed = []
        while i < self._size:
            self._comparisons += _pair_scan_c(&buf[i, 0], yp, m, &less, &greater)
            if not less:
                return (CODE_DUPLICATE if not greater else CODE_DOMINATED), []
            if not greater:
                removed.append(np.asarray(buf[i]).copy())
                self._size -= 1
                if i != self._size:
                    memcpy(&buf[i, 0], &buf[self._size, 0], m * sizeof(double))
                continue
            i += 1
        if self._size == self._buf.shape[0]:
            grown = np.empty((self._buf.shape[0] * 2, m), dtype=np.float64)
            grown[: self._size] = self._buf[: self._size]
            self._buf = grown
            buf = self._buf
        memcpy(&buf[self._size, 0], yp, m * sizeof(double))
        self._size += 1
        return CODE_INSERTED, removed


# ---------------------------------------------------------------------------
# ND-tree backend

cdef class _NTNode:
    cdef double[::1] ideal
    cdef double[::1] nadir
    cdef cnp.ndarray pbuf      # (cap+1, m) for leaves, None for internal
    cdef Py_ssize_t npts
    cdef list kids             # None for leaf


cdef _NTNode _nt_leaf(double[::1] ideal, double[::1] nadir,
                      cnp.ndarray pbuf, Py_ssize_t npts):
    cdef _NTNode node = _NTNode.__new__(_NTNode)
    node.ideal = ideal
    node.nadir = nadir
    node.pbuf = pbuf
    node.npts = npts
    node.kids = None
    return node


cdef class NdTreeArchive:
    """ND-tree Pareto archive; see the pure-Python twin for the algorithm."""

    cdef readonly Py_ssize_t m
    cdef readonly Py_ssize_t leaf_capacity
    cdef readonly Py_ssize_t max_children
    cdef _NTNode _root
    cdef Py_ssize_t _size
    cdef unsigned long long _comparisons

    def __cinit__(self, m, leaf_capacity=20, max_children=0):
        self.m = int(m)
        self.leaf_capacity = int(leaf_capacity)
        self.max_children = int(max_children) if max_children else self.m + 1
        if self.leaf_capacity < 1:
            raise ValueError("leaf_capacity must be >= 1")
        if self.max_children < 2:
            raise ValueError("max_children must be >= 2")
        self._root = None
        self._size = 0
        self._comparisons = 0

    property comparisons:
        def __get__(self):
            return self._comparisons

    def __len__(self):
        return self._size

    def points(self):
        out = np.empty((self._size, self.m), dtype=np.float64)
        cdef double[:, ::1] ov = out
        cdef Py_ssize_t idx = 0, i
        cdef _NTNode node
        cdef double[:, ::1] pb
        stack = [self._root] if self._root is not None else []
        while stack:
            node = <_NTNode> stack.pop()
            if node.kids is None:
                pb = node.pbuf
                for i in range(node.npts):
                    memcpy(&ov[idx, 0], &pb[i, 0], self.m * sizeof(double))
                    idx += 1
            else:
                stack.extend(node.kids)
        return out

    cdef const double* _first_point(self, _NTNode node):
        while node.kids is not None:
            node = <_NTNode> node.kids[0]
        cdef double[:, ::1] pb = node.pbuf
        return &pb[0, 0]

    cdef int _find_weak_dominator(self, const double* yp) except -1:
        if self._root is None:
            return 0
        cdef Py_ssize_t m = self.m, i
        cdef bint ok = False, eq = False
        cdef bint pl = False, pg = False
        cdef _NTNode node
        cdef double[:, ::1] pb
        cdef const double* anchor
        stack = [self._root]
        while stack:
            node = <_NTNode> stack.pop()
            self._comparisons += _weak_scan_c(&node.ideal[0], yp, m, &ok)
            if not ok:
                continue
            self._comparisons += _weak_scan_c(&node.nadir[0], yp, m, &ok)
            if ok:
                anchor = self._first_point(node)
                self._comparisons += _pair_scan_c(anchor, yp, m, &pl, &pg)
                return CODE_DUPLICATE if (not pl and not pg) else CODE_DOMINATED
            if node.kids is None:
                pb = node.pbuf
                for i in range(node.npts):
                    self._comparisons += _weak_scan_c(&pb[i, 0], yp, m, &ok)
                    if ok:
                        self._comparisons += _weak_scan_c(yp, &pb[i, 0], m, &eq)
                        return CODE_DUPLICATE if eq else CODE_DOMINATED
            else:
                self._push_strongest_last(stack, node.kids)
        return 0

    cdef void _push_strongest_last(self, list stack, list kids):
        # LIFO stack: push ascending by nadir sum so the strongest cluster is
        # examined first; a dominated query then tends to reject in one path
        cdef Py_ssize_t nk = len(kids), i, j
        cdef double[32] sums
        cdef Py_ssize_t[32] order
        cdef _NTNode kid
        cdef double s
        cdef Py_ssize_t m = self.m, c
        if nk > 32:
            stack.extend(kids)
            return
        for i in range(nk):
            kid = <_NTNode> kids[i]
            s = 0.0
            for c in range(m):
                s += kid.nadir[c]
            sums[i] = s
            order[i] = i
        for i in range(1, nk):
            j = i
            while j > 0 and sums[order[j - 1]] > sums[order[j]]:
                order[j - 1], order[j] = order[j], order[j - 1]
                j -= 1
        for i in range(nk):
            stack.append(kids[order[i]])

    def is_dominated(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64)
        return self._find_weak_dominator(&yv[0]) != 0

    cdef Py_ssize_t _collect_subtree(self, _NTNode node, list removed):
        cdef Py_ssize_t count = 0, i
        cdef _NTNode nd
        stack = [node]
        while stack:
            nd = <_NTNode> stack.pop()
            if nd.kids is None:
                for i in range(nd.npts):
                    removed.append(np.asarray(nd.pbuf[i]).copy())
                count += nd.npts
            else:
                stack.extend(nd.kids)
        return count

    cdef bint _remove_dominated(self, _NTNode node, const double* yp, list removed):
        cdef Py_ssize_t m = self.m, i, w
        cdef bint ok = False, greater = False, less = False
        cdef double[:, ::1] pb
        cdef _NTNode child, only
        self._comparisons += _weak_scan_c(yp, &node.nadir[0], m, &ok)
        if not ok:
            return False
        self._comparisons += _weak_scan_c(yp, &node.ideal[0], m, &ok)
        if ok:
            self._size -= self._collect_subtree(node, removed)
            return True
        if node.kids is None:
            pb = node.pbuf
            w = 0
            for i in range(node.npts):
                self._comparisons += _weak_scan_c(yp, &pb[i, 0], m, &ok)
                if ok:
                    removed.append(np.asarray(pb[i]).copy())
                    self._size -= 1
                else:
                    if w != i:
                        memcpy(&pb[w, 0], &pb[i, 0], m * sizeof(double))
                    w += 1
            node.npts = w
            return w == 0
        kept = []
        for child in node.kids:
            if not self._remove_dominated(child, yp, removed):
                kept.append(child)
        node.kids = kept
        if not kept:
            return True
        if len(kept) == 1:
            only = <_NTNode> kept[0]
            node.ideal = only.ideal
            node.nadir = only.nadir
            node.pbuf = only.pbuf
            node.npts = only.npts
            node.kids = only.kids
        return False

    cdef void _split(self, _NTNode leaf):
        pts = np.asarray(leaf.pbuf)[: leaf.npts]
        cdef Py_ssize_t n = pts.shape[0]
        cdef Py_ssize_t nc = min(self.max_children, n)
        d2 = np.empty((n, n), dtype=np.float64)
        cdef Py_ssize_t i
        for i in range(n):
            d2[i] = np.sum((pts - pts[i]) ** 2, axis=1)
        i0, j0 = divmod(int(np.argmax(d2)), n)
        seeds = [int(i0), int(j0)]
        mind = np.minimum(d2[i0], d2[j0])
        while len(seeds) < nc:
            nxt = int(np.argmax(mind))
            seeds.append(nxt)
            mind = np.minimum(mind, d2[nxt])
        groups = [[s] for s in seeds]
        seed_rows = pts[seeds]
        for i in range(n):
            if i in seeds:
                continue
            groups[int(np.argmin(np.sum((seed_rows - pts[i]) ** 2, axis=1)))].append(i)
        kids = []
        cdef cnp.ndarray gbuf
        for g in groups:
            garr = pts[g]
            gbuf = np.empty((self.leaf_capacity + 1, self.m), dtype=np.float64)
            gbuf[: len(g)] = garr
            kids.append(_nt_leaf(garr.max(axis=0), garr.min(axis=0), gbuf, len(g)))
        leaf.pbuf = None
        leaf.npts = 0
        leaf.kids = kids

    cdef void _insert(self, const double* yp):
        cdef Py_ssize_t m = self.m, j, i
        cdef _NTNode node, child, best
        cdef double best_d, d, mid
        cdef double[:, ::1] pb
        cdef cnp.ndarray buf
        if self._root is None:
            buf = np.empty((self.leaf_capacity + 1, m), dtype=np.float64)
            pb = buf
            memcpy(&pb[0, 0], yp, m * sizeof(double))
            arr = np.asarray(buf[0])
            self._root = _nt_leaf(arr.copy(), arr.copy(), buf, 1)
            self._size = 1
            return
        node = self._root
        while True:
            for j in range(m):
                if yp[j] > node.ideal[j]:
                    node.ideal[j] = yp[j]
                if yp[j] < node.nadir[j]:
                    node.nadir[j] = yp[j]
            if node.kids is None:
                break
            best = None
            best_d = 0.0
            for i in range(len(node.kids)):
                child = <_NTNode> node.kids[i]
                d = 0.0
                for j in range(m):
                    mid = (child.ideal[j] + child.nadir[j]) * 0.5 - yp[j]
                    d += mid * mid
                if best is None or d < best_d:
                    best = child
                    best_d = d
            node = best
        pb = node.pbuf
        memcpy(&pb[node.npts, 0], yp, m * sizeof(double))
        node.npts += 1
        self._size += 1
        if node.npts > self.leaf_capacity:
            self._split(node)

    def update(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64)
        cdef const double* yp = &yv[0]
        if self._root is None:
            self._insert(yp)
            return CODE_INSERTED, []
        cdef int code = self._find_weak_dominator(yp)
        if code:
            return code, []
        removed = []
        if self._remove_dominated(self._root, yp, removed):
            self._root = None
        self._insert(yp)
        return CODE_INSERTED, removed


# ---------------------------------------------------------------------------
# quad-tree backend

cdef class _QTNode:
    cdef double[::1] point
    cdef cnp.ndarray keybuf    # int64 successorship masks
    cdef Py_ssize_t nkids
    cdef list kids


cdef _QTNode _qt_node(double[::1] point):
    cdef _QTNode node = _QTNode.__new__(_QTNode)
    node.point = point
    node.keybuf = np.empty(4, dtype=np.int64)
    node.nkids = 0
    node.kids = []
    return node


cdef class QuadTreeArchive:
    """Successor-based quad tree; see the pure-Python twin for the algorithm."""

    cdef readonly Py_ssize_t m
    cdef _QTNode _root
    cdef Py_ssize_t _size
    cdef unsigned long long _comparisons

    def __cinit__(self, m):
        self.m = int(m)
        if self.m > 62:
            raise ValueError("quad-tree masks support at most 62 objectives")
        self._root = None
        self._size = 0
        self._comparisons = 0

    property comparisons:
        def __get__(self):
            return self._comparisons

    def __len__(self):
        return self._size

    def points(self):
        out = np.empty((self._size, self.m), dtype=np.float64)
        cdef double[:, ::1] ov = out
        cdef Py_ssize_t idx = 0
        cdef _QTNode node
        stack = [self._root] if self._root is not None else []
        while stack:
            node = <_QTNode> stack.pop()
            memcpy(&ov[idx, 0], &node.point[0], self.m * sizeof(double))
            idx += 1
            stack.extend(node.kids)
        return out

    cdef long long _mask(self, const double* yp, const double* pp,
                         bint* y_less, bint* y_greater):
        cdef long long mask = 0
        cdef Py_ssize_t j
        y_less[0] = False
        y_greater[0] = False
        for j in range(self.m):
            if yp[j] >= pp[j]:
                mask |= (<long long> 1) << j
                if yp[j] > pp[j]:
                    y_greater[0] = True
            else:
                y_less[0] = True
        self._comparisons += self.m
        return mask

    cdef int _find_weak_dominator(self, const double* yp) except -1:
        if self._root is None:
            return 0
        cdef bint y_less = False, y_greater = False
        cdef long long mask, t
        cdef _QTNode node
        cdef cnp.int64_t[::1] keys
        cdef Py_ssize_t i
        stack = [self._root]
        while stack:
            node = <_QTNode> stack.pop()
            mask = self._mask(yp, &node.point[0], &y_less, &y_greater)
            if not y_greater:
                return CODE_DUPLICATE if not y_less else CODE_DOMINATED
            keys = node.keybuf
            for i in range(node.nkids):
                t = keys[i]
                if t & mask == mask:
                    stack.append(node.kids[i])
        return 0

    def is_dominated(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64)
        return self._find_weak_dominator(&yv[0]) != 0

    cdef void _append_child(self, _QTNode node, long long key, _QTNode kid):
        cdef cnp.ndarray grown
        if node.nkids == node.keybuf.shape[0]:
            grown = np.empty(node.keybuf.shape[0] * 2, dtype=np.int64)
            grown[: node.nkids] = node.keybuf[: node.nkids]
            node.keybuf = grown
        node.keybuf[node.nkids] = key
        node.kids.append(kid)
        node.nkids += 1

    cdef void _insert_point(self, double[::1] y):
        cdef bint less = False, greater = False
        cdef long long mask
        cdef _QTNode node, fresh
        cdef cnp.int64_t[::1] keys
        cdef Py_ssize_t i
        cdef bint descended
        if self._root is None:
            self._root = _qt_node(y)
            self._size += 1
            return
        node = self._root
        while True:
            mask = self._mask(&y[0], &node.point[0], &less, &greater)
            keys = node.keybuf
            descended = False
            for i in range(node.nkids):
                if keys[i] == mask:
                    node = <_QTNode> node.kids[i]
                    descended = True
                    break
            if not descended:
                fresh = _qt_node(y)
                self._append_child(node, mask, fresh)
                self._size += 1
                return

    cdef list _subtree_points(self, _QTNode node):
        pts = []
        cdef _QTNode nd
        stack = [node]
        while stack:
            nd = <_QTNode> stack.pop()
            pts.append(nd.point)
            stack.extend(nd.kids)
        return pts

    def update(self, y):
        cdef cnp.ndarray[double, ndim=1, mode="c"] yv = \
            np.ascontiguousarray(y, dtype=np.float64).copy()
        cdef double[::1] ym = yv
        if self._root is None:
            self._insert_point(ym)
            return CODE_INSERTED, []
        cdef int code = self._find_weak_dominator(&yv[0])
        if code:
            return code, []
        removed = []
        survivors = []
        cdef bint y_less = False, y_greater = False
        cdef long long root_mask, full, t, mask, kmask
        cdef _QTNode node, kid
        cdef cnp.int64_t[::1] keys
        cdef Py_ssize_t i, last
        cdef double[::1] p
        root_mask = self._mask(&yv[0], &self._root.point[0], &y_less, &y_greater)
        full = ((<long long> 1) << self.m) - 1
        doomed = []
        if root_mask == full:
            doomed.append(self._root)
            self._root = None
        else:
            node_stack = [self._root]
            mask_stack = [root_mask]
            while node_stack:
                node = <_QTNode> node_stack.pop()
                mask = mask_stack.pop()
                i = 0
                while i < node.nkids:
                    t = node.keybuf[i]
                    if t & mask != t:
                        i += 1
                        continue
                    kid = <_QTNode> node.kids[i]
                    kmask = self._mask(&yv[0], &kid.point[0], &y_less, &y_greater)
                    if not y_less:
                        doomed.append(kid)
                        last = node.nkids - 1
                        node.keybuf[i] = node.keybuf[last]
                        node.kids[i] = node.kids[last]
                        node.kids.pop()
                        node.nkids = last
                        continue
                    node_stack.append(kid)
                    mask_stack.append(kmask)
                    i += 1
        for dnode in doomed:
            for p in self._subtree_points(<_QTNode> dnode):
                self._size -= 1
                self._mask(&yv[0], &p[0], &y_less, &y_greater)
                if y_less:
                    survivors.append(p)
                else:
                    removed.append(np.asarray(p).copy())
        self._insert_point(ym)
        for p in survivors:
            self._insert_point(p)
        return CODE_INSERTED, removed


# ---------------------------------------------------------------------------
# exact hypervolume (maximize convention, reference at the origin)

cdef void _sort_idx_desc(const double* pts, Py_ssize_t n, Py_ssize_t m,
                         Py_ssize_t col, Py_ssize_t* idx, Py_ssize_t* tmp) noexcept nogil:
    """Stable merge sort of 0..n-1 by pts[i*m+col] descending."""
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k, i
    for i in range(n):
        idx[i] = i
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid >= n:
                break
            hi = mid + width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                if pts[idx[a] * m + col] >= pts[idx[b] * m + col]:
                    tmp[k] = idx[a]
                    a += 1
                else:
                    tmp[k] = idx[b]
                    b += 1
                k += 1
            while a < mid:
                tmp[k] = idx[a]
                a += 1
                k += 1
            while b < hi:
                tmp[k] = idx[b]
                b += 1
                k += 1
            for i in range(lo, hi):
                idx[i] = tmp[i]
            lo += 2 * width
        width *= 2


cdef void _sort_idx_asc(const double* pts, Py_ssize_t n, Py_ssize_t m,
                        Py_ssize_t col, Py_ssize_t* idx, Py_ssize_t* tmp) noexcept nogil:
    """Stable merge sort of 0..n-1 by pts[i*m+col] ascending."""
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k, i
    for i in range(n):
        idx[i] = i
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid >= n:
                break
            hi = mid + width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                if pts[idx[a] * m + col] <= pts[idx[b] * m + col]:
                    tmp[k] = idx[a]
                    a += 1
                else:
                    tmp[k] = idx[b]
                    b += 1
                k += 1
            while a < mid:
                tmp[k] = idx[a]
                a += 1
                k += 1
            while b < hi:
                tmp[k] = idx[b]
                b += 1
                k += 1
            for i in range(lo, hi):
                idx[i] = tmp[i]
            lo += 2 * width
        width *= 2


cdef void _sort_idx_lex(const double* pts, Py_ssize_t n, Py_ssize_t m,
                        Py_ssize_t* idx, Py_ssize_t* tmp) noexcept nogil:
    """Stable merge sort of 0..n-1 by full rows, lexicographic ascending."""
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k, i, c
    cdef const double* ra
    cdef const double* rb
    cdef bint a_le
    for i in range(n):
        idx[i] = i
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid >= n:
                break
            hi = mid + width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                ra = pts + idx[a] * m
                rb = pts + idx[b] * m
                a_le = True
                for c in range(m):
                    if ra[c] < rb[c]:
                        break
                    elif ra[c] > rb[c]:
                        a_le = False
                        break
                if a_le:
                    tmp[k] = idx[a]
                    a += 1
                else:
                    tmp[k] = idx[b]
                    b += 1
                k += 1
            while a < mid:
                tmp[k] = idx[a]
                a += 1
                k += 1
            while b < hi:
                tmp[k] = idx[b]
                b += 1
                k += 1
            for i in range(lo, hi):
                idx[i] = tmp[i]
            lo += 2 * width
        width *= 2


cdef Py_ssize_t _nds_unique_c(double* buf, Py_ssize_t n, Py_ssize_t m,
                              Py_ssize_t* idx, Py_ssize_t* tmp, double* out) noexcept nogil:
    """Write the unique non-dominated rows of buf into out; return the count."""
    cdef Py_ssize_t i, j, k, u = 0, kept = 0
    cdef const double* ri
    cdef const double* rj
    cdef bint same, ge, gt
    _sort_idx_lex(buf, n, m, idx, tmp)
    # unique pass: compact indices of distinct rows into tmp[0..u)
    for i in range(n):
        ri = buf + idx[i] * m
        if u > 0:
            rj = buf + tmp[u - 1] * m
            same = True
            for k in range(m):
                if ri[k] != rj[k]:
                    same = False
                    break
            if same:
                continue
        tmp[u] = idx[i]
        u += 1
    # dominance filter over the u distinct rows
    for i in range(u):
        if tmp[i] < 0:
            continue
        ri = buf + tmp[i] * m
        for j in range(u):
            if j == i or tmp[j] < 0:
                continue
            rj = buf + tmp[j] * m
            ge = True
            gt = False
            for k in range(m):
                if rj[k] < ri[k]:
                    ge = False
                    break
                elif rj[k] > ri[k]:
                    gt = True
            if ge and gt:
                tmp[i] = -1
                break
    for i in range(u):
        if tmp[i] >= 0:
            memcpy(out + kept * m, buf + tmp[i] * m, m * sizeof(double))
            kept += 1
    return kept


cdef double _hv2_c(const double* pts, Py_ssize_t n, Py_ssize_t m,
                   Py_ssize_t* idx, Py_ssize_t* tmp) noexcept nogil:
    cdef double vol = 0.0, ymax = 0.0, x, y
    cdef Py_ssize_t i
    _sort_idx_desc(pts, n, m, 0, idx, tmp)
    for i in range(n):
        x = pts[idx[i] * m]
        y = pts[idx[i] * m + 1]
        if y > ymax:
            vol += x * (y - ymax)
            ymax = y
    return vol


cdef double _hv3_c(const double* pts, Py_ssize_t n, Py_ssize_t m,
                   Py_ssize_t* idx, Py_ssize_t* tmp,
                   double* xs, double* ys) noexcept nogil:
    cdef double vol = 0.0, area = 0.0, z_prev, z, x, y, gain, left, y_right
    cdef Py_ssize_t i, s = 0, lo, hi, mid, pos, j, t, k
    _sort_idx_desc(pts, n, m, 2, idx, tmp)
    z_prev = pts[idx[0] * m + 2]
    for i in range(n):
        z = pts[idx[i] * m + 2]
        vol += area * (z_prev - z)
        z_prev = z
        x = pts[idx[i] * m]
        y = pts[idx[i] * m + 1]
        # staircase insert: binary search for first xs[pos] >= x
        lo = 0
        hi = s
        while lo < hi:
            mid = (lo + hi) // 2
            if xs[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        if pos < s and ys[pos] >= y:
            continue
        j = pos - 1
        while j >= 0 and ys[j] <= y:
            j -= 1
        gain = 0.0
        left = xs[j] if j >= 0 else 0.0
        for t in range(j + 1, pos):
            gain += (xs[t] - left) * (y - ys[t])
            left = xs[t]
        y_right = ys[pos] if pos < s else 0.0
        gain += (x - left) * (y - y_right)
        area += gain
        # replace slots j+1..pos-1 with the single new column
        if pos == j + 1:
            # pure insertion: shift the tail right (descending copy)
            k = s
            while k > pos:
                xs[k] = xs[k - 1]
                ys[k] = ys[k - 1]
                k -= 1
            s += 1
        elif pos - (j + 1) > 1:
            # net removal: shift the tail left (ascending copy)
            for k in range(pos, s):
                xs[j + 2 + k - pos] = xs[k]
                ys[j + 2 + k - pos] = ys[k]
            s = s - (pos - j - 1) + 1
        xs[j + 1] = x
        ys[j + 1] = y
    vol += area * z_prev
    return vol


cdef double _wfg_c(double* pts, Py_ssize_t n, Py_ssize_t m) noexcept nogil:
    cdef double total = 0.0, incl
    cdef Py_ssize_t k, j, c, nlim
    cdef Py_ssize_t* idx
    cdef Py_ssize_t* tmp
    cdef double* limit
    cdef double* filtered
    cdef double* xs
    cdef double* ys
    cdef const double* pk
    cdef const double* pj
    if n == 0:
        return 0.0
    if m == 1:
        total = pts[0]
        for k in range(1, n):
            if pts[k] > total:
                total = pts[k]
        return total
    idx = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    tmp = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if m == 2:
        total = _hv2_c(pts, n, m, idx, tmp)
        free(idx)
        free(tmp)
        return total
    if m == 3:
        xs = <double*> malloc(n * sizeof(double))
        ys = <double*> malloc(n * sizeof(double))
        total = _hv3_c(pts, n, m, idx, tmp, xs, ys)
        free(xs)
        free(ys)
        free(idx)
        free(tmp)
        return total
    # ascending sort on the last objective: every limit set then has a
    # constant last coordinate, so its volume slices down to m-1 dimensions
    _sort_idx_asc(pts, n, m, m - 1, idx, tmp)
    cdef double* ordered = <double*> malloc(n * m * sizeof(double))
    for k in range(n):
        memcpy(ordered + k * m, pts + idx[k] * m, m * sizeof(double))
    limit = <double*> malloc(n * (m - 1) * sizeof(double))
    filtered = <double*> malloc(n * (m - 1) * sizeof(double))
    for k in range(n):
        pk = ordered + k * m
        incl = 1.0
        for c in range(m):
            incl *= pk[c]
        total += incl
        nlim = n - k - 1
        if nlim > 0:
            for j in range(nlim):
                pj = ordered + (k + 1 + j) * m
                for c in range(m - 1):
                    limit[j * (m - 1) + c] = pk[c] if pk[c] < pj[c] else pj[c]
            nlim = _nds_unique_c(limit, nlim, m - 1, idx, tmp, filtered)
            total -= pk[m - 1] * _wfg_c(filtered, nlim, m - 1)
    free(ordered)
    free(limit)
    free(filtered)
    free(idx)
    free(tmp)
    return total


def hv_exact(points):
    """Hypervolume of the union of boxes [0, p] over the rows of ``points``."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] pts = \
        np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], m = pts.shape[1]
    if n == 0:
        return 0.0
    mask = np.asarray(nondominated_mask(pts), dtype=bool)
    cdef cnp.ndarray[double, ndim=2, mode="c"] front = \
        np.ascontiguousarray(np.unique(pts[mask], axis=0))
    cdef double out
    with nogil:
        out = _wfg_c(&front[0, 0], front.shape[0], m)
    return float(out)


def count_dominated(archive, samples):
    """Number of sample rows weakly dominated by some archive member."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] smp = \
        np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t i, hits = 0
    cdef NdTreeArchive tree
    if isinstance(archive, NdTreeArchive):
        tree = <NdTreeArchive> archive
        for i in range(smp.shape[0]):
            if tree._find_weak_dominator(&smp[i, 0]) != 0:
                hits += 1
        return hits
    for i in range(smp.shape[0]):
        if archive.is_dominated(smp[i]):
            hits += 1
    return hits
