"""Command-line interface: the ``pareto-lab`` executable.

Exit codes: 0 success, 1 failed --check assertions or runtime error,
2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from . import experiments, hypervolume, landscapes, scalarization, weights
from .archive import BACKENDS
from .errors import ParetoLabError

DEFAULT_SEED = 42


def _read_points(path: str) -> np.ndarray:
    """Point file: one vector per line, comma-separated decimals."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(t) for t in line.split(",")])
            except ValueError:
                raise ParetoLabError(f"{path}:{lineno}: malformed vector {line!r}")
    if not rows:
        raise ParetoLabError(f"{path}: no points found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParetoLabError(f"{path}: rows have inconsistent dimensions")
    return np.asarray(rows, dtype=np.float64)


def _parse_vector(text: str) -> np.ndarray:
    return np.asarray([float(t) for t in text.split(",") if t.strip() != ""],
                      dtype=np.float64)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-lab",
        description="Many-objective optimization toolkit and experiment harness.")
    parser.add_argument("--version", action="version",
                        version=f"pareto-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate an NK-landscape instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="evaluate solutions on an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--bits", help="bit string of length n")
    p.add_argument("--all", action="store_true",
                   help="print objective vectors for all 2^n solutions")

    p = sub.add_parser("pareto", help="enumerate the Pareto set of an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", help="write 'bits,f1,...,fm' lines here")

    p = sub.add_parser("archive-bench",
                       help="stream an instance's solutions into archive backends")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--backends", default="list,nd-tree,quad-tree",
                   help=f"comma list from {BACKENDS}")
    p.add_argument("--order", choices=["random", "as-generated"], default="random")
    p.add_argument("--out", help="write the per-decile CSV here")

    p = sub.add_parser("hv", help="exact hypervolume of a point file")
    p.add_argument("--points", required=True)
    p.add_argument("--ref", required=True, help="comma-separated reference point")
    p.add_argument("--cap", type=int, default=hypervolume.EXACT_CAP_HIGH_M,
                   help="point cap for m >= 7 (exponential regime)")

    p = sub.add_parser("hv-mc", help="Monte-Carlo hypervolume with Wilson stopping")
    p.add_argument("--points", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--target-width", type=float, required=True)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--batch", type=int, default=10_000)
    p.add_argument("--max-samples", type=int, default=5_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("scalarize",
                       help="exhaustively optimize a scalarizing functional")
    p.add_argument("--instance", required=True)
    p.add_argument("--functional", required=True,
                   choices=["chebyshev", "wsum", "eps", "ps", "general"])
    p.add_argument("--weights", help="comma list (chebyshev/wsum)")
    p.add_argument("--ref", help="comma list: reference w (chebyshev/general)")
    p.add_argument("--eps", help="comma list of m-1 bounds (eps)")
    p.add_argument("--j", type=int, default=0, help="objective index kept (eps)")
    p.add_argument("--k", help="comma list: direction k (ps/general)")
    p.add_argument("--anchor", help="comma list: anchor a (ps)")
    p.add_argument("--rows", help="file of 'a_1,...,a_m,alpha' rows (general)")

    p = sub.add_parser("weights", help="emit simplex-lattice weight vectors")
    p.add_argument("--m", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--H", type=int, dest="h")
    group.add_argument("--min-count", type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("experiment", help="run a named experiment to CSV")
    p.add_argument("name", choices=experiments.experiment_names())
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override one config key (repeatable)")
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--check", action="store_true",
                   help="evaluate the documented trend assertions; exit 1 on failure")
    return parser


def _cmd_generate(args) -> int:
    inst = landscapes.generate_instance(args.n, args.k, args.m, args.seed)
    landscapes.save_instance(inst, args.out)
    print(f"wrote n={args.n} k={args.k} m={args.m} seed={args.seed} to {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    inst = landscapes.load_instance(args.instance)
    if args.all:
        values = landscapes.evaluate_all(inst)
        for code in range(values.shape[0]):
            bits = landscapes.code_to_bits(code, inst.n)
            print(bits + "," + ",".join(repr(float(v)) for v in values[code]))
        return 0
    if not args.bits:
        print("error: provide --bits or --all", file=sys.stderr)
        return 2
    vec = landscapes.evaluate(inst, args.bits)
    print(",".join(repr(float(v)) for v in vec))
    return 0


def _cmd_pareto(args) -> int:
    inst = landscapes.load_instance(args.instance)
    front = landscapes.enumerate_pareto_set(inst)
    proportion = len(front) / 2.0**inst.n
    print(f"pareto-optimal {len(front)} of {2**inst.n} solutions "
          f"(proportion {proportion!r})")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for bits, vec in front:
                fh.write(bits + "," + ",".join(repr(float(v)) for v in vec) + "\n")
        print(f"wrote front to {args.out}")
    return 0


def _cmd_archive_bench(args) -> int:
    backends = [b.strip() for b in args.backends.split(",") if b.strip()]
    cfg = experiments.resolve_config("archive-bench", {
        "n": args.n, "k": args.k, "m_values": [args.m], "instances": 1,
        "backends": backends, "order": args.order, "seed": args.seed})
    rows = experiments.run_experiment("archive-bench", cfg)
    spec = experiments.experiment("archive-bench")
    if args.out:
        experiments.write_csv(args.out, "archive-bench", cfg, spec.header, rows)
        print(f"wrote {args.out}")
    else:
        print(",".join(spec.header))
        for row in rows:
            print(",".join(str(v) for v in row))
    return 0


def _cmd_hv(args) -> int:
    points = _read_points(args.points)
    ref = _parse_vector(args.ref)
    est = hypervolume.hv_exact(points, ref, cap=args.cap)
    print(repr(est.value))
    return 0


def _cmd_hv_mc(args) -> int:
    points = _read_points(args.points)
    ref = _parse_vector(args.ref)
    est = hypervolume.hv_monte_carlo(
        points, ref, target_width=args.target_width, confidence=args.confidence,
        batch=args.batch, max_samples=args.max_samples, seed=args.seed)
    lo, hi = est.interval if est.interval else (est.value, est.value)
    print(f"value={est.value!r} interval=[{lo!r},{hi!r}] samples={est.samples} "
          f"exact={est.exact}")
    return 0


def _cmd_scalarize(args) -> int:
    inst = landscapes.load_instance(args.instance)
    m = inst.m
    name = args.functional
    if name == "chebyshev":
        lam = _parse_vector(args.weights) if args.weights else np.ones(m)
        ref = _parse_vector(args.ref) if args.ref else np.zeros(m)
        functional = lambda y: scalarization.chebyshev(y, lam, ref)
    elif name == "wsum":
        a = _parse_vector(args.weights) if args.weights else np.ones(m) / m
        functional = lambda y: scalarization.weighted_sum(y, a)
    elif name == "eps":
        if not args.eps:
            print("error: --eps required for the eps functional", file=sys.stderr)
            return 2
        bounds = _parse_vector(args.eps)
        functional = lambda y: scalarization.epsilon_constraint(y, args.j, bounds)
    elif name == "ps":
        anchor = _parse_vector(args.anchor) if args.anchor else np.zeros(m)
        k = _parse_vector(args.k) if args.k else np.ones(m)
        functional = lambda y: scalarization.pascoletti_serafini(y, anchor, k)
    else:
        if not args.rows or not args.k:
            print("error: --rows and --k required for the general functional",
                  file=sys.stderr)
            return 2
        raw = _read_points(args.rows)
        polyset = scalarization.PolyhedralSet.create(
            [(row[:-1], float(row[-1])) for row in raw])
        ref = _parse_vector(args.ref) if args.ref else np.zeros(m)
        scal = scalarization.GeneralScalarizer.create(
            polyset, ref, _parse_vector(args.k))
        functional = scal
    bits, fx, value = scalarization.scalarize_landscape(inst, functional)
    print(f"bits={bits} value={value!r} objectives="
          + ",".join(repr(float(v)) for v in fx))
    return 0


def _cmd_weights(args) -> int:
    h = args.h if args.h is not None else weights.smallest_h(args.m, args.min_count)
    wset = weights.simplex_lattice(args.m, h)
    with open(args.out, "w", encoding="utf-8") as fh:
        for row in wset.vectors:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    print(f"wrote {len(wset)} vectors (m={args.m}, H={h}) to {args.out}")
    return 0


def _cmd_experiment(args) -> int:
    overrides = {}
    if args.config:
        overrides.update(experiments.parse_config_file(args.config))
    for item in args.set:
        if "=" not in item:
            print(f"error: --set expects KEY=VALUE, got {item!r}", file=sys.stderr)
            return 2
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()
    path, results = experiments.run_and_write(
        args.name, args.out, overrides, jobs=args.jobs, check=args.check)
    print(f"wrote {path}")
    failed = False
    for res in results:
        print(res.line())
        failed = failed or not res.passed
    return 1 if failed else 0


_HANDLERS = {
    "generate": _cmd_generate,
    "evaluate": _cmd_evaluate,
    "pareto": _cmd_pareto,
    "archive-bench": _cmd_archive_bench,
    "hv": _cmd_hv,
    "hv-mc": _cmd_hv_mc,
    "scalarize": _cmd_scalarize,
    "weights": _cmd_weights,
    "experiment": _cmd_experiment,
}


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ParetoLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
