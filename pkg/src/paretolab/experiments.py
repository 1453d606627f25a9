"""Reproducible experiment harness.

Every experiment is a pure function of its configuration: per-cell seeds are
derived from the base seed with ``SeedSequence(seed, spawn_key=(tag, ...))``,
rows are computed cell by cell (optionally in parallel), and the CSV is
written in a fixed cell order, so reruns are byte-identical regardless of
the worker count.

Output CSVs are RFC-4180-style (UTF-8, LF, comma-separated, header row)
preceded by one provenance comment line carrying the tool version and a
hash of the resolved configuration.

Available experiments (one CSV each):

=================== =========================================================
pareto-proportion   fraction of Pareto-optimal solutions vs m
nd-pairs            mutually non-dominated random pairs vs the closed form
nd-population       non-dominance of solutions inside random populations
heterogeneity       min/max spread of per-objective evaluation latencies
solution-distances  design/objective-space distances, random vs Pareto pairs
archive-bench       archive backend comparison counts per archive-size decile
hv-study            exact/Monte-Carlo hypervolume and contributions
weight-distances    simplex-lattice weight distances per neighborhood size
=================== =========================================================
"""

from __future__ import annotations

import csv
import hashlib
import math
import os
import time
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Iterable

import numpy as np

from . import __version__
from . import dominance, hypervolume, kernels, landscapes, weights
from .archive import ParetoArchive
from .errors import DomainError


# ---------------------------------------------------------------------------
# configuration plumbing


def derived_seed(base: int, *key: int) -> int:
    """Stable 63-bit seed for a labeled substream of the base seed."""
    ss = np.random.SeedSequence(int(base), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0] >> 1)


def derived_rng(base: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(base), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)


def parse_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment, blanks ignored."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _coerce(key: str, value, template):
    if isinstance(value, str):
        text = value.strip()
        if isinstance(template, bool):
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise DomainError(f"config key {key}: expected a boolean, got {text!r}")
        if isinstance(template, int):
            return int(text)
        if isinstance(template, float):
            return float(text)
        if isinstance(template, list):
            items = [t for t in text.replace(",", " ").split() if t]
            if not template:
                return items
            probe = template[0]
            if isinstance(probe, int):
                return [int(t) for t in items]
            if isinstance(probe, float):
                return [float(t) for t in items]
            return items
        return text
    return value


def resolve_config(name: str, overrides: dict | None = None) -> dict:
    """Defaults for ``name`` with typed overrides applied."""
    spec = experiment(name)
    cfg = dict(spec.defaults)
    for key, value in (overrides or {}).items():
        if key not in cfg:
            raise DomainError(
                f"unknown config key {key!r} for experiment {name}; "
                f"known keys: {sorted(cfg)}")
        cfg[key] = _coerce(key, value, cfg[key])
    return cfg


def config_hash(name: str, cfg: dict) -> str:
    lines = [f"experiment={name}"]
    for key in sorted(cfg):
        lines.append(f"{key}={cfg[key]!r}")
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:12]


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_csv(path: str, name: str, cfg: dict, header: list[str],
              rows: Iterable[Iterable]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# pareto-lab {__version__} experiment={name} "
                 f"config-sha256={config_hash(name, cfg)} base-seed={cfg.get('seed')}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


@dataclass(frozen=True)
class CheckResult:
    experiment: str
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.experiment}: {self.name} ({self.detail})"


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    tag: int
    defaults: dict
    header: list[str]
    cells: Callable[[dict], list[tuple]]
    run_cell: Callable[[dict, tuple], list[list]]
    checks: Callable[[dict, list[list]], list[CheckResult]]


_REGISTRY: dict[str, ExperimentSpec] = {}


def experiment(name: str) -> ExperimentSpec:
    if name not in _REGISTRY:
        raise DomainError(f"unknown experiment {name!r}; known: {sorted(_REGISTRY)}")
    return _REGISTRY[name]


def experiment_names() -> list[str]:
    return sorted(_REGISTRY)


def _register(spec: ExperimentSpec) -> None:
    _REGISTRY[spec.name] = spec


def _cell_worker(args):
    name, cfg, cell = args
    return experiment(name).run_cell(cfg, cell)


def run_experiment(name: str, cfg: dict, jobs: int = 1) -> list[list]:
    """Compute all rows for ``name`` under ``cfg`` (jobs > 1 forks workers)."""
    spec = experiment(name)
    cells = spec.cells(cfg)
    if jobs <= 1 or len(cells) <= 1:
        chunks = [spec.run_cell(cfg, cell) for cell in cells]
    else:
        with get_context("fork").Pool(processes=jobs) as pool:
            chunks = pool.map(_cell_worker, [(name, cfg, cell) for cell in cells])
    rows: list[list] = []
    for chunk in chunks:
        rows.extend(chunk)
    return rows


def _column(header: list[str], rows: list[list], name: str,
            where: dict | None = None) -> list:
    idx = header.index(name)
    if where:
        keys = [(header.index(k), v) for k, v in where.items()]
        return [r[idx] for r in rows if all(r[i] == v for i, v in keys)]
    return [r[idx] for r in rows]


def _mean(xs) -> float:
    xs = list(xs)
    return sum(xs) / len(xs) if xs else float("nan")


def _sem(xs) -> float:
    xs = list(xs)
    if len(xs) < 2:
        return float("inf")
    mu = _mean(xs)
    var = sum((x - mu) ** 2 for x in xs) / (len(xs) - 1)
    return math.sqrt(var / len(xs))


# ---------------------------------------------------------------------------
# pareto-proportion


_PP_HEADER = ["m", "seed", "proportion"]


def _pp_cells(cfg):
    return [(m, i) for m in cfg["m_values"] for i in range(cfg["instances"])]


def _pp_run(cfg, cell):
    m, i = cell
    seed = derived_seed(cfg["seed"], 1, m, i)
    inst = landscapes.generate_instance(cfg["n"], cfg["k"], m, seed)
    return [[m, seed, landscapes.proportion_pareto_optimal(inst)]]


def _pp_checks(cfg, rows):
    out = []
    checks = [(2, "mean proportion < 0.05 at m=2", lambda v: v < 0.05),
              (7, "mean proportion in [0.35, 0.65] at m=7", lambda v: 0.35 <= v <= 0.65),
              (20, "mean proportion > 0.99 at m=20", lambda v: v > 0.99)]
    for m, label, pred in checks:
        if m not in cfg["m_values"]:
            continue
        val = _mean(_column(_PP_HEADER, rows, "proportion", {"m": m}))
        out.append(CheckResult("pareto-proportion", label, pred(val), f"mean={val:.4f}"))
    return out


_register(ExperimentSpec(
    name="pareto-proportion", tag=1,
    defaults={"n": 10, "k": 0, "m_values": list(range(2, 21)),
              "instances": 30, "seed": 1001},
    header=_PP_HEADER, cells=_pp_cells, run_cell=_pp_run, checks=_pp_checks))


# ---------------------------------------------------------------------------
# nd-pairs


_NP_HEADER = ["m", "mu", "seed", "proportion_all_nd", "proportion_pairwise_nd",
              "theory_all_nd"]


def _mutually_nd(fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    a_dom = np.all(fa >= fb, axis=1) & np.any(fa > fb, axis=1)
    b_dom = np.all(fb >= fa, axis=1) & np.any(fb > fa, axis=1)
    return ~(a_dom | b_dom)


def _ndp_cells(cfg):
    return [(m, i) for m in cfg["m_values"] for i in range(cfg["instances"])]


def _ndp_run(cfg, cell):
    m, i = cell
    seed = derived_seed(cfg["seed"], 2, m, i)
    inst = landscapes.generate_instance(cfg["n"], cfg["k"], m, seed)
    values = landscapes.evaluate_all(inst)
    rng = derived_rng(cfg["seed"], 2, m, i, 1)
    samples = cfg["samples"]
    rows = []
    for mu in cfg["mu_values"]:
        codes = rng.integers(0, values.shape[0], size=(samples, mu, 2))
        nd = _mutually_nd(values[codes[:, :, 0]].reshape(-1, m),
                          values[codes[:, :, 1]].reshape(-1, m)).reshape(samples, mu)
        rows.append([m, mu, seed,
                     float(np.mean(nd.all(axis=1))),
                     float(np.mean(nd)),
                     dominance.all_pairs_nd_probability(m, mu)])
    return rows


def _ndp_checks(cfg, rows):
    out = []
    big_m = [m for m in cfg["m_values"] if m >= 16]
    if big_m and 1000 in cfg["mu_values"]:
        m = min(big_m)
        val = _mean(_column(_NP_HEADER, rows, "proportion_all_nd", {"m": m, "mu": 1000}))
        out.append(CheckResult(
            "nd-pairs", f"all-ND proportion > 0.5 at m={m}, mu=1000",
            val > 0.5, f"mean={val:.4f}"))
    if 1 in cfg["mu_values"]:
        all_nd = _column(_NP_HEADER, rows, "proportion_all_nd", {"mu": 1})
        pair_nd = _column(_NP_HEADER, rows, "proportion_pairwise_nd", {"mu": 1})
        same = all(a == b for a, b in zip(all_nd, pair_nd))
        out.append(CheckResult(
            "nd-pairs", "mu=1 rows have all-ND == pairwise-ND", same,
            f"{len(all_nd)} rows"))
    return out


_register(ExperimentSpec(
    name="nd-pairs", tag=2,
    defaults={"n": 10, "k": 0, "m_values": list(range(2, 21)),
              "mu_values": [1, 10, 100, 1000], "instances": 30,
              "samples": 30, "seed": 1002},
    header=_NP_HEADER, cells=_ndp_cells, run_cell=_ndp_run, checks=_ndp_checks))


# ---------------------------------------------------------------------------
# nd-population


_NPOP_HEADER = ["m", "mu", "seed", "prob_one_nondominated", "proportion_nondominated"]


def _npop_cells(cfg):
    return [(m, i) for m in cfg["m_values"] for i in range(cfg["instances"])]


def _npop_run(cfg, cell):
    m, i = cell
    seed = derived_seed(cfg["seed"], 3, m, i)
    inst = landscapes.generate_instance(cfg["n"], cfg["k"], m, seed)
    values = landscapes.evaluate_all(inst)
    rng = derived_rng(cfg["seed"], 3, m, i, 1)
    rows = []
    for mu in cfg["mu_values"]:
        hits = 0
        for _ in range(cfg["samples"]):
            focal = values[int(rng.integers(values.shape[0]))]
            others = values[rng.integers(0, values.shape[0], size=mu)]
            dominated = np.any(np.all(others >= focal, axis=1)
                               & np.any(others > focal, axis=1))
            hits += 0 if dominated else 1
        prob_one = hits / cfg["samples"]
        fractions = []
        for _ in range(cfg["pop_samples"]):
            pop = values[rng.integers(0, values.shape[0], size=mu)]
            fractions.append(float(kernels.nondominated_mask(pop).sum()) / mu)
        rows.append([m, mu, seed, prob_one, _mean(fractions)])
    return rows


def _npop_checks(cfg, rows):
    out = []
    if 2 in cfg["m_values"] and 1000 in cfg["mu_values"]:
        val = _mean(_column(_NPOP_HEADER, rows, "prob_one_nondominated",
                            {"m": 2, "mu": 1000}))
        out.append(CheckResult(
            "nd-population", "prob_one_nondominated < 0.05 at m=2, mu=1000",
            val < 0.05, f"mean={val:.4f}"))
    big = [m for m in cfg["m_values"] if m >= 13]
    if big:
        ok = True
        worst = 1.0
        for m in big:
            for mu in cfg["mu_values"]:
                for col in ("prob_one_nondominated", "proportion_nondominated"):
                    val = _mean(_column(_NPOP_HEADER, rows, col, {"m": m, "mu": mu}))
                    worst = min(worst, val)
                    ok = ok and val > 0.85
        out.append(CheckResult(
            "nd-population", "both statistics > 0.85 for m >= 13", ok,
            f"worst mean={worst:.4f}"))
    if 2 in cfg["m_values"] and 10 in cfg["mu_values"]:
        val = _mean(_column(_NPOP_HEADER, rows, "proportion_nondominated",
                            {"m": 2, "mu": 10}))
        out.append(CheckResult(
            "nd-population", "proportion_nondominated in [0.15, 0.45] at m=2, mu=10",
            0.15 <= val <= 0.45, f"mean={val:.4f}"))
    return out


_register(ExperimentSpec(
    name="nd-population", tag=3,
    defaults={"n": 10, "k": 0, "m_values": list(range(2, 21)),
              "mu_values": [1, 10, 100, 1000], "instances": 30,
              "samples": 30, "pop_samples": 10, "seed": 1003},
    header=_NPOP_HEADER, cells=_npop_cells, run_cell=_npop_run, checks=_npop_checks))


# ---------------------------------------------------------------------------
# heterogeneity


_HET_HEADER = ["distribution", "m", "rep", "min_diff", "max_diff"]


def parse_latency_model(text: str) -> tuple[str, float, float]:
    """Parse 'beta:a:b' or 'uniform:lo:hi' into (kind, p1, p2)."""
    parts = text.split(":")
    if len(parts) != 3 or parts[0] not in ("beta", "uniform"):
        raise DomainError(
            f"latency model must be 'beta:a:b' or 'uniform:lo:hi', got {text!r}")
    kind, p1, p2 = parts[0], float(parts[1]), float(parts[2])
    if kind == "beta" and (p1 <= 0 or p2 <= 0):
        raise DomainError(f"beta parameters must be positive, got {text!r}")
    if kind == "uniform" and p2 <= p1:
        raise DomainError(f"uniform bounds must satisfy lo < hi, got {text!r}")
    return kind, p1, p2


def draw_latencies(model: str, m: int, reps: int, rng) -> np.ndarray:
    kind, p1, p2 = parse_latency_model(model)
    if kind == "beta":
        return rng.beta(p1, p2, size=(reps, m))
    return rng.uniform(p1, p2, size=(reps, m))


def _het_cells(cfg):
    return [(d, m) for d in range(len(cfg["distributions"]))
            for m in cfg["m_values"]]


def _het_run(cfg, cell):
    d, m = cell
    if m < 2:
        raise DomainError("heterogeneity needs m >= 2 (one pair at least)")
    model = cfg["distributions"][d]
    rng = derived_rng(cfg["seed"], 4, d, m)
    durations = draw_latencies(model, m, cfg["reps"], rng)
    durations.sort(axis=1)
    min_diff = np.diff(durations, axis=1).min(axis=1)
    max_diff = durations[:, -1] - durations[:, 0]
    return [[model, m, rep, float(min_diff[rep]), float(max_diff[rep])]
            for rep in range(cfg["reps"])]


def _het_checks(cfg, rows):
    out = []
    if 2 in cfg["m_values"]:
        lo = _column(_HET_HEADER, rows, "min_diff", {"m": 2})
        hi = _column(_HET_HEADER, rows, "max_diff", {"m": 2})
        same = all(a == b for a, b in zip(lo, hi))
        out.append(CheckResult("heterogeneity", "min_diff == max_diff at m=2",
                               same, f"{len(lo)} rows"))
    m_lo, m_hi = min(cfg["m_values"]), max(cfg["m_values"])
    if m_lo < m_hi:
        ok = True
        detail = []
        for model in cfg["distributions"]:
            a = _mean(_column(_HET_HEADER, rows, "max_diff",
                              {"distribution": model, "m": m_lo}))
            b = _mean(_column(_HET_HEADER, rows, "max_diff",
                              {"distribution": model, "m": m_hi}))
            ok = ok and b > a
            detail.append(f"{model}: {a:.3f}->{b:.3f}")
        out.append(CheckResult(
            "heterogeneity",
            f"mean max_diff grows from m={m_lo} to m={m_hi} for every distribution",
            ok, "; ".join(detail)))
    if {"beta:5:5", "beta:2:8"} <= set(cfg["distributions"]):
        sym = _column(_HET_HEADER, rows, "max_diff",
                      {"distribution": "beta:5:5", "m": m_hi})
        skew = _column(_HET_HEADER, rows, "max_diff",
                       {"distribution": "beta:2:8", "m": m_hi})
        gap = _mean(sym) - _mean(skew)
        sigma = math.hypot(_sem(sym), _sem(skew))
        out.append(CheckResult(
            "heterogeneity",
            f"symmetric beta exceeds skewed beta at m={m_hi} (3 sigma)",
            gap > 3 * sigma, f"gap={gap:.4f} sigma={sigma:.4f}"))
    return out


_register(ExperimentSpec(
    name="heterogeneity", tag=4,
    defaults={"distributions": ["beta:2:8", "beta:8:2", "beta:5:5", "uniform:1:50"],
              "m_values": list(range(2, 26)), "reps": 100, "seed": 1004},
    header=_HET_HEADER, cells=_het_cells, run_cell=_het_run, checks=_het_checks))


# ---------------------------------------------------------------------------
# solution-distances


_SD_HEADER = ["m", "seed", "space", "pair", "hamming", "euclidean"]


def _sd_cells(cfg):
    return [(m, i) for m in cfg["m_values"] for i in range(cfg["instances"])]


def _distinct_pairs(rng, count: int, pairs: int) -> np.ndarray:
    out = np.empty((pairs, 2), dtype=np.int64)
    for p in range(pairs):
        a = int(rng.integers(count))
        b = int(rng.integers(count - 1))
        if b >= a:
            b += 1
        out[p] = a, b
    return out


def _sd_run(cfg, cell):
    m, i = cell
    seed = derived_seed(cfg["seed"], 5, m, i)
    inst = landscapes.generate_instance(cfg["n"], cfg["k"], m, seed)
    values = landscapes.evaluate_all(inst)
    mask = landscapes.pareto_mask(inst)
    rng = derived_rng(cfg["seed"], 5, m, i, 1)
    rows = []

    def emit(space: str, codes: np.ndarray):
        for p, (a, b) in enumerate(codes):
            ham = int(bin(int(a) ^ int(b)).count("1"))
            euc = float(np.linalg.norm(values[a] - values[b]))
            rows.append([m, seed, space, p, ham, euc])

    emit("random", _distinct_pairs(rng, values.shape[0], cfg["pairs"]))
    pareto_codes = np.flatnonzero(mask)
    if pareto_codes.size >= 2:
        picks = _distinct_pairs(rng, pareto_codes.size, cfg["pairs"])
        emit("pareto", pareto_codes[picks])
    else:
        import sys
        print(f"warning: skipping pareto pairs for m={m} seed={seed}: "
              f"Pareto set has {pareto_codes.size} member(s)", file=sys.stderr)
    return rows


def _sd_checks(cfg, rows):
    out = []
    n = cfg["n"]
    ok = True
    worst = ""
    for m in cfg["m_values"]:
        val = _mean(_column(_SD_HEADER, rows, "hamming", {"m": m, "space": "random"}))
        if abs(val - n / 2) > 0.5:
            ok = False
            worst = f"m={m}: {val:.3f}"
    out.append(CheckResult(
        "solution-distances", f"random-pair mean Hamming = {n/2} +- 0.5 at all m",
        ok, worst or "all within bounds"))
    big = [m for m in cfg["m_values"] if m >= 15]
    if big:
        ok = True
        detail = []
        for m in big:
            r = _mean(_column(_SD_HEADER, rows, "hamming", {"m": m, "space": "random"}))
            p = _mean(_column(_SD_HEADER, rows, "hamming", {"m": m, "space": "pareto"}))
            ok = ok and abs(r - p) <= 0.5
            detail.append(f"m={m}: |{r:.2f}-{p:.2f}|")
        out.append(CheckResult(
            "solution-distances", "Pareto-pair mean Hamming within 0.5 of random for m >= 15",
            ok, "; ".join(detail)))
    if 2 in cfg["m_values"]:
        r = _column(_SD_HEADER, rows, "hamming", {"m": 2, "space": "random"})
        p = _column(_SD_HEADER, rows, "hamming", {"m": 2, "space": "pareto"})
        gap = _mean(r) - _mean(p)
        sigma = math.hypot(_sem(r), _sem(p))
        out.append(CheckResult(
            "solution-distances", "Pareto pairs strictly closer at m=2 (3 sigma)",
            gap > 3 * sigma, f"gap={gap:.3f} sigma={sigma:.3f}"))
    return out


_register(ExperimentSpec(
    name="solution-distances", tag=5,
    defaults={"n": 10, "k": 0, "m_values": list(range(2, 21)),
              "instances": 30, "pairs": 30, "seed": 1005},
    header=_SD_HEADER, cells=_sd_cells, run_cell=_sd_run, checks=_sd_checks))


# ---------------------------------------------------------------------------
# archive-bench


_AB_HEADER = ["backend", "n", "k", "m", "seed", "decile", "offered", "inserted",
              "comparisons", "elapsed_ns"]


def _ab_cells(cfg):
    return [(m, i) for m in cfg["m_values"] for i in range(cfg["instances"])]


def stream_into_archive(backend: str, values: np.ndarray) -> tuple[ParetoArchive, dict]:
    """Offer every row in order; return the archive and per-offer traces."""
    count, m = values.shape
    arch = ParetoArchive(backend, m)
    comparisons = np.empty(count, dtype=np.int64)
    sizes = np.empty(count, dtype=np.int64)
    inserted = np.empty(count, dtype=np.uint8)
    stamps = np.empty(count, dtype=np.int64)
    for i in range(count):
        outcome = arch.update(values[i])
        comparisons[i] = arch.comparisons
        sizes[i] = len(arch)
        inserted[i] = 1 if outcome.inserted else 0
        stamps[i] = time.perf_counter_ns()
    return arch, {"comparisons": comparisons, "sizes": sizes,
                  "inserted": inserted, "stamps": stamps}


def decile_rows(backend: str, cfg_n: int, cfg_k: int, m: int, seed: int,
                trace: dict, start_ns: int) -> list[list]:
    """Split the offer trace into ten windows by final archive size."""
    sizes = trace["sizes"]
    final = int(sizes[-1])
    bounds = []
    prev_idx = -1
    for d in range(1, 11):
        threshold = final * d / 10.0
        # archive size is not monotone (removals shrink it): take the first
        # offer index at which the size reaches the threshold
        reached = sizes >= threshold
        idx = int(np.argmax(reached)) if reached.any() else len(sizes) - 1
        if d == 10:
            idx = len(sizes) - 1
        bounds.append((prev_idx, idx))
        prev_idx = idx
    rows = []
    for d, (lo, hi) in enumerate(bounds, start=1):
        if hi <= lo:
            rows.append([backend, cfg_n, cfg_k, m, seed, d, 0, 0, 0, 0])
            continue
        comp_lo = int(trace["comparisons"][lo]) if lo >= 0 else 0
        time_lo = int(trace["stamps"][lo]) if lo >= 0 else start_ns
        rows.append([backend, cfg_n, cfg_k, m, seed, d,
                     hi - lo,
                     int(trace["inserted"][lo + 1 : hi + 1].sum()),
                     int(trace["comparisons"][hi]) - comp_lo,
                     int(trace["stamps"][hi]) - time_lo])
    return rows


def _ab_run(cfg, cell):
    m, i = cell
    seed = derived_seed(cfg["seed"], 6, m, i)
    inst = landscapes.generate_instance(cfg["n"], cfg["k"], m, seed)
    values = landscapes.evaluate_all(inst)
    if cfg["order"] == "random":
        perm = derived_rng(cfg["seed"], 6, m, i, 1).permutation(values.shape[0])
        values = values[perm]
    elif cfg["order"] != "as-generated":
        raise DomainError(f"order must be 'random' or 'as-generated', got {cfg['order']!r}")
    values = np.ascontiguousarray(values)
    rows = []
    snapshots = []
    for backend in cfg["backends"]:
        start_ns = time.perf_counter_ns()
        arch, trace = stream_into_archive(backend, values)
        rows.extend(decile_rows(backend, cfg["n"], cfg["k"], m, seed, trace, start_ns))
        snapshots.append(frozenset(map(tuple, arch.points())))
    if any(s != snapshots[0] for s in snapshots[1:]):
        raise AssertionError(
            f"backend snapshots diverged for m={m} seed={seed}")
    return rows


def decile_cost_ratio(header, rows, backend: str, m: int) -> float:
    """Last-decile over first-decile per-offer comparison cost, seed-averaged."""
    ratios = []
    seeds = sorted(set(_column(header, rows, "seed", {"backend": backend, "m": m})))
    for seed in seeds:
        sel = {"backend": backend, "m": m, "seed": seed}
        offered = _column(header, rows, "offered", sel)
        comps = _column(header, rows, "comparisons", sel)
        deciles = _column(header, rows, "decile", sel)
        per = {d: c / o for d, o, c in zip(deciles, offered, comps) if o > 0}
        if 1 in per and 10 in per and per[1] > 0:
            ratios.append(per[10] / per[1])
    return _mean(ratios)


def _ab_checks(cfg, rows):
    out = []
    has = lambda b: b in cfg["backends"]
    if 3 in cfg["m_values"] and has("list") and has("nd-tree"):
        lst = decile_cost_ratio(_AB_HEADER, rows, "list", 3)
        ndt = decile_cost_ratio(_AB_HEADER, rows, "nd-tree", 3)
        out.append(CheckResult(
            "archive-bench", "m=3: nd-tree decile cost ratio below list's",
            ndt < lst, f"nd-tree={ndt:.2f} list={lst:.2f}"))
    if 20 in cfg["m_values"]:
        ok = True
        detail = []
        for backend in cfg["backends"]:
            r = decile_cost_ratio(_AB_HEADER, rows, backend, 20)
            ok = ok and r > 2.0
            detail.append(f"{backend}={r:.2f}")
        out.append(CheckResult(
            "archive-bench", "m=20: every backend's decile cost ratio > 2",
            ok, "; ".join(detail)))
    return out


_register(ExperimentSpec(
    name="archive-bench", tag=6,
    defaults={"n": 16, "k": 0, "m_values": [3, 5, 10, 20], "instances": 1,
              "backends": ["list", "nd-tree", "quad-tree"],
              "order": "random", "seed": 1006},
    header=_AB_HEADER, cells=_ab_cells, run_cell=_ab_run, checks=_ab_checks))


# ---------------------------------------------------------------------------
# hv-study


_HV_HEADER = ["kind", "m", "N", "seed", "hv_exact", "mean_contribution",
              "mc_value", "mc_samples", "mc_width"]


def _hv_exact_allowed(cfg, kind: str, m: int, n: int) -> bool:
    if m <= 4:
        return n <= cfg["exact_cap_m4"]
    if m <= 6:
        return n <= cfg["exact_cap_m6"]
    if kind == "convex":
        return n <= cfg["exact_cap_convex"]
    return n <= cfg["exact_cap_high_m"]


def _hv_cells(cfg):
    return [(kind, m, n, i)
            for kind in cfg["kinds"]
            for m in cfg["m_values"]
            for n in cfg["n_values"]
            for i in range(cfg["instances"])]


def _hv_run(cfg, cell):
    kind, m, n, i = cell
    seed = derived_seed(cfg["seed"], 7, cfg["kinds"].index(kind), m, n, i)
    front = hypervolume.generate_front(kind, m, n, seed=seed)
    ref = np.zeros(m)
    prob = hypervolume.HvProblem.create(front, ref)
    exact_val = ""
    mean_contrib = ""
    if _hv_exact_allowed(cfg, kind, m, n):
        exact_val = hypervolume.hv_exact(prob, cap=max(n, 300)).value
        rng = derived_rng(cfg["seed"], 7, cfg["kinds"].index(kind), m, n, i, 1)
        count = min(cfg["contrib_sample"], n)
        picks = rng.choice(n, size=count, replace=False)
        total = exact_val
        contribs = []
        for idx in picks:
            rest = np.delete(prob.points, idx, axis=0)
            without = hypervolume.hv_exact(
                hypervolume.HvProblem(points=np.ascontiguousarray(rest), reference=ref),
                cap=max(n, 300)).value
            contribs.append(total - without)
        mean_contrib = _mean(contribs)
    est = hypervolume.hv_monte_carlo(
        prob, target_width=cfg["mc_width_scale"] / n,
        confidence=0.95, batch=cfg["mc_batch"],
        max_samples=cfg["mc_max_samples"], seed=derived_seed(cfg["seed"], 7, 99, m, n, i))
    width = est.interval[1] - est.interval[0] if est.interval else 0.0
    return [[kind, m, n, seed, exact_val, mean_contrib, est.value, est.samples, width]]


def _hv_checks(cfg, rows):
    out = []
    n_lo, n_hi = min(cfg["n_values"]), max(cfg["n_values"])
    if "linear" in cfg["kinds"] and n_hi >= 2 * n_lo:
        lo = [r for r in rows if r[0] == "linear" and r[2] == n_lo and r[5] != ""]
        hi = [r for r in rows if r[0] == "linear" and r[2] == n_hi and r[5] != ""]
        if lo and hi:
            a = _mean([r[5] for r in lo])
            b = _mean([r[5] for r in hi])
            factor = a / b if b else float("inf")
            expected = n_hi / n_lo
            out.append(CheckResult(
                "hv-study",
                f"linear mean contribution shrinks ~1/N from N={n_lo} to N={n_hi}",
                0.6 * expected <= factor <= 1.6 * expected,
                f"factor={factor:.2f} expected~{expected:.1f}"))
    if "convex" in cfg["kinds"] and len(cfg["m_values"]) >= 2:
        m_lo, m_hi = min(cfg["m_values"]), max(cfg["m_values"])
        lo = [r for r in rows if r[0] == "convex" and r[1] == m_lo
              and r[2] == n_lo and r[4] != ""]
        hi = [r for r in rows if r[0] == "convex" and r[1] == m_hi
              and r[2] == n_lo and r[4] != ""]
        if lo and hi:
            a, b = _mean([r[4] for r in lo]), _mean([r[4] for r in hi])
            out.append(CheckResult(
                "hv-study", f"convex hv_exact decreases from m={m_lo} to m={m_hi}",
                b < a, f"{a:.4g} -> {b:.4g}"))
    if "linear" in cfg["kinds"] and {200, 400} <= set(cfg["n_values"]) and 8 in cfg["m_values"]:
        s200 = _mean([r[7] for r in rows if r[0] == "linear" and r[1] == 8 and r[2] == 200])
        s400 = _mean([r[7] for r in rows if r[0] == "linear" and r[1] == 8 and r[2] == 400])
        ratio = s400 / s200 if s200 else float("inf")
        out.append(CheckResult(
            "hv-study", "mc sample count scales ~N^2 (m=8 linear, N=200 vs 400)",
            2.0 <= ratio <= 8.0, f"ratio={ratio:.2f}"))
    return out


_register(ExperimentSpec(
    name="hv-study", tag=7,
    defaults={"kinds": ["linear", "concave", "convex"],
              "m_values": [4, 6, 8, 10], "n_values": [200, 400, 600, 800, 1000],
              "instances": 1, "contrib_sample": 30,
              "exact_cap_m4": 1000, "exact_cap_m6": 400,
              "exact_cap_convex": 200, "exact_cap_high_m": 0,
              "mc_width_scale": 5.0, "mc_batch": 100,
              "mc_max_samples": 2_000_000, "seed": 1007},
    header=_HV_HEADER, cells=_hv_cells, run_cell=_hv_run, checks=_hv_checks))


# ---------------------------------------------------------------------------
# weight-distances


_WD_HEADER = ["m", "T", "mean", "half_width", "mu"]


def _wd_cells(cfg):
    return [(m,) for m in cfg["m_values"]]


def _wd_run(cfg, cell):
    (m,) = cell
    h = weights.smallest_h(m, cfg["min_count"])
    wset = weights.simplex_lattice(m, h)
    rows = []
    for t in cfg["t_values"]:
        stats = weights.mean_neighbor_distance(
            wset, t, pairs=cfg["pairs"],
            seed=derived_seed(cfg["seed"], 8, m, int(round(t * 1000))))
        rows.append([m, t, stats.mean, stats.half_width, len(wset)])
    return rows


def _wd_checks(cfg, rows):
    out = []
    if 2 in cfg["m_values"] and 1.0 in cfg["t_values"]:
        val = _mean(_column(_WD_HEADER, rows, "mean", {"m": 2, "T": 1.0}))
        out.append(CheckResult(
            "weight-distances", "T=100%: mean distance ~0.5 at m=2 (+-0.1)",
            0.4 <= val <= 0.6, f"mean={val:.3f}"))
    big = [m for m in cfg["m_values"] if m >= 14]
    if big and 1.0 in cfg["t_values"]:
        vals = [(m, _mean(_column(_WD_HEADER, rows, "mean", {"m": m, "T": 1.0})))
                for m in big]
        ok = all(v > 0.85 for _, v in vals)
        out.append(CheckResult(
            "weight-distances", "T=100%: mean distance > 0.85 for m >= 14",
            ok, "; ".join(f"m={m}:{v:.3f}" for m, v in vals)))
    big12 = [m for m in cfg["m_values"] if m > 12]
    if big12 and 0.1 in cfg["t_values"]:
        vals = [(m, _mean(_column(_WD_HEADER, rows, "mean", {"m": m, "T": 0.1})))
                for m in big12]
        ok = all(v > 0.5 for _, v in vals)
        out.append(CheckResult(
            "weight-distances", "T=10%: mean distance > 0.5 for m > 12",
            ok, "; ".join(f"m={m}:{v:.3f}" for m, v in vals)))
    return out


_register(ExperimentSpec(
    name="weight-distances", tag=8,
    defaults={"m_values": list(range(2, 21)), "t_values": [0.1, 0.2, 1.0],
              "min_count": 100, "pairs": 900, "seed": 1008},
    header=_WD_HEADER, cells=_wd_cells, run_cell=_wd_run, checks=_wd_checks))


# ---------------------------------------------------------------------------
# top-level driver


def run_and_write(name: str, out_dir: str, overrides: dict | None = None,
                  jobs: int = 1, check: bool = False) -> tuple[str, list[CheckResult]]:
    """Run one experiment, write its CSV under ``out_dir``, return checks."""
    spec = experiment(name)
    cfg = resolve_config(name, overrides)
    rows = run_experiment(name, cfg, jobs=jobs)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name}.csv")
    write_csv(path, name, cfg, spec.header, rows)
    results = spec.checks(cfg, rows) if check else []
    return path, results
