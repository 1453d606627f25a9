"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``PARETOLAB_PURE=1`` in the environment to force the pure-Python kernels
(useful for debugging and for the compiled-vs-pure benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py as pure

if os.environ.get("PARETOLAB_PURE", "") not in ("", "0"):
    _impl = pure
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = pure

COMPILED: bool = bool(getattr(_impl, "COMPILED", False))

INSERTED = _impl.INSERTED
REJECTED_DOMINATED = _impl.REJECTED_DOMINATED
REJECTED_DUPLICATE = _impl.REJECTED_DUPLICATE

nondominated_mask = _impl.nondominated_mask
ListArchive = _impl.ListArchive
NdTreeArchive = _impl.NdTreeArchive
QuadTreeArchive = _impl.QuadTreeArchive
hv_exact = _impl.hv_exact
count_dominated = _impl.count_dominated
