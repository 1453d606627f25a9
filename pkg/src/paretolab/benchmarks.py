"""Compiled-vs-pure kernel benchmark: ``python -m paretolab.benchmarks``.

Runs the same workloads through both kernel implementations and prints a
table of timings. Workload sizes are desk-scale so the pure fallback
finishes in seconds; pass ``--scale N`` to grow them.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels_py as pure
from . import kernels


def _load_compiled():
    try:
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    except ImportError:
        return None


def _time(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _archive_workload(impl, cls_name: str, stream: np.ndarray):
    arch = getattr(impl, cls_name)(stream.shape[1])
    for row in stream:
        arch.update(row)
    return arch


def workloads(scale: int):
    rng = np.random.default_rng(1)
    stream = rng.random((1500 * scale, 4))
    hv_pts = rng.random((60 * scale, 5))
    front = np.ascontiguousarray(rng.random((80, 3)))
    samples = rng.random((3000 * scale, 3))

    def mc(impl):
        tree = impl.NdTreeArchive(3)
        for row in front:
            tree.update(row)
        impl.count_dominated(tree, samples)

    return [
        ("list archive, 4 objectives",
         lambda impl: _archive_workload(impl, "ListArchive", stream)),
        ("nd-tree archive, 4 objectives",
         lambda impl: _archive_workload(impl, "NdTreeArchive", stream)),
        ("quad-tree archive, 4 objectives",
         lambda impl: _archive_workload(impl, "QuadTreeArchive", stream)),
        ("non-dominated mask, N=%d" % (1500 * scale),
         lambda impl: impl.nondominated_mask(stream)),
        ("exact hypervolume, m=5 N=%d" % (60 * scale),
         lambda impl: impl.hv_exact(hv_pts)),
        ("Monte-Carlo dominance tests, %d samples" % (3000 * scale), mc),
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m paretolab.benchmarks",
        description="Time the compiled kernels against the pure-Python fallback.")
    parser.add_argument("--scale", type=int, default=1,
                        help="workload size multiplier (default 1)")
    args = parser.parse_args(argv)

    compiled = _load_compiled()
    print(f"active kernels: {'compiled' if kernels.COMPILED else 'pure Python'}")
    if compiled is None:
        print("compiled extension not built; showing pure-Python timings only")
    header = f"{'workload':42s} {'pure':>10s} {'compiled':>10s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads(args.scale):
        t_pure = _time(lambda: fn(pure))
        if compiled is not None:
            t_comp = _time(lambda: fn(compiled))
            print(f"{name:42s} {t_pure:9.3f}s {t_comp:9.3f}s {t_pure / t_comp:8.1f}x")
        else:
            print(f"{name:42s} {t_pure:9.3f}s {'-':>10s} {'-':>9s}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
