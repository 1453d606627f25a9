"""Multi-objective NK-landscape instances.

An instance is fully determined by ``(n, k, m, seed)``. Randomness comes
from numpy's PCG64 generator keyed by ``SeedSequence(seed, spawn_key=...)``
substreams: epistasis links for variable ``j`` use spawn key ``(0, j)`` and
the contribution table for objective ``i``, variable ``j`` uses ``(1, i, j)``,
so extending ``m`` leaves earlier objectives untouched and regeneration is
bit-identical across runs and platforms.

Solutions are bit strings of length ``n``; ``bits[0]`` is variable 0. The
solution index (code) reads the string as a binary number with ``bits[0]``
most significant, so ascending codes enumerate bit strings in lexicographic
order.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, MalformedInstanceError
from . import kernels

ENUMERATION_MAX_N = 24
_FORMAT_MAGIC = "paretolab-nk"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NkInstance:
    """A seeded multi-objective NK-landscape.

    Attributes:
        n: number of binary decision variables.
        k: epistasis degree; each variable interacts with k others.
        m: number of objectives, each to be maximized.
        seed: generator seed; (n, k, m, seed) reproduces the instance.
        links: (n, k) int array; row j lists the k partners of variable j.
        tables: (m, n, 2**(k+1)) float array of contributions in [0, 1].
    """

    n: int
    k: int
    m: int
    seed: int
    links: np.ndarray
    tables: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, NkInstance):
            return NotImplemented
        return (
            (self.n, self.k, self.m, self.seed) == (other.n, other.k, other.m, other.seed)
            and np.array_equal(self.links, other.links)
            and np.array_equal(self.tables, other.tables)
        )


def generate_instance(n: int, k: int, m: int, seed: int) -> NkInstance:
    """Draw a fresh instance under the random neighborhood model.

    Links for each variable are sampled uniformly without replacement from
    the other n-1 variables (partial Fisher-Yates); table entries are i.i.d.
    uniform on [0, 1).
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (isinstance(k, (int, np.integer)) and 0 <= k < n):
        raise DomainError(f"k must satisfy 0 <= k < n, got k={k!r} with n={n}")
    if not (isinstance(m, (int, np.integer)) and m >= 1):
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    if not (isinstance(seed, (int, np.integer)) and 0 <= seed < 2**64):
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    n, k, m, seed = int(n), int(k), int(m), int(seed)

    links = np.empty((n, k), dtype=np.int32)
    for j in range(n):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(0, j))))
        candidates = [t for t in range(n) if t != j]
        for t in range(k):
            swap = t + int(rng.integers(0, n - 1 - t))
            candidates[t], candidates[swap] = candidates[swap], candidates[t]
        links[j] = candidates[:k]

    tables = np.empty((m, n, 2 ** (k + 1)), dtype=np.float64)
    for i in range(m):
        for j in range(n):
            rng = np.random.Generator(
                np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(1, i, j)))
            )
            tables[i, j] = rng.random(2 ** (k + 1))

    links.setflags(write=False)
    tables.setflags(write=False)
    return NkInstance(n=n, k=k, m=m, seed=seed, links=links, tables=tables)


def _bits_to_array(inst: NkInstance, x) -> np.ndarray:
    if isinstance(x, str):
        if len(x) != inst.n or any(c not in "01" for c in x):
            raise DomainError(f"solution must be a length-{inst.n} string over 0/1, got {x!r}")
        return np.frombuffer(x.encode(), dtype=np.uint8) - ord("0")
    arr = np.asarray(x, dtype=np.uint8)
    if arr.shape != (inst.n,) or not np.all(arr <= 1):
        raise DomainError(f"solution must have {inst.n} binary entries")
    return arr


def code_to_bits(code: int, n: int) -> str:
    """Bit string of a solution code; bits[0] is the most significant bit."""
    return format(code, f"0{n}b")


def evaluate(inst: NkInstance, x) -> np.ndarray:
    """Objective vector of one solution: per-variable contribution averages.

    The table index for variable j packs the bit of j in the lowest position
    and the bits of its partners in ascending link order above it.
    """
    bits = _bits_to_array(inst, x)
    idx = bits.astype(np.int64).copy()
    for t in range(inst.k):
        idx += bits[inst.links[:, t]].astype(np.int64) << (t + 1)
    cols = np.arange(inst.n)
    return inst.tables[:, cols, idx].mean(axis=1)


def evaluate_all(inst: NkInstance, codes: np.ndarray | None = None) -> np.ndarray:
    """Objective matrix for the given solution codes (default: all 2**n).

    Vectorized over solutions; chunked so memory stays modest for large n.
    """
    if codes is None:
        if inst.n > ENUMERATION_MAX_N:
            raise CapacityError(
                f"full enumeration limited to n <= {ENUMERATION_MAX_N}, got n={inst.n}"
            )
        codes = np.arange(2**inst.n, dtype=np.int64)
    else:
        codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, inst.m), dtype=np.float64)
    chunk = 1 << 16
    for lo in range(0, codes.size, chunk):
        part = codes[lo : lo + chunk]
        bits = ((part[:, None] >> (inst.n - 1 - np.arange(inst.n))) & 1).astype(np.int64)
        idx = bits.copy()
        for t in range(inst.k):
            idx += bits[:, inst.links[:, t]] << (t + 1)
        acc = np.zeros((part.size, inst.m), dtype=np.float64)
        for j in range(inst.n):
            acc += inst.tables[:, j, idx[:, j]].T
        out[lo : lo + chunk] = acc / inst.n
    return out


def pareto_mask(inst: NkInstance) -> np.ndarray:
    """Bool mask over all 2**n solution codes: True iff Pareto optimal."""
    values = evaluate_all(inst)
    return kernels.nondominated_mask(values).astype(bool)


def enumerate_pareto_set(inst: NkInstance) -> list[tuple[str, np.ndarray]]:
    """All Pareto-optimal solutions as (bit string, objective vector) pairs."""
    values = evaluate_all(inst)
    mask = kernels.nondominated_mask(values).astype(bool)
    return [(code_to_bits(c, inst.n), values[c]) for c in np.flatnonzero(mask)]


def proportion_pareto_optimal(inst: NkInstance) -> float:
    """Fraction of the 2**n solutions that are Pareto optimal."""
    return float(pareto_mask(inst).sum()) / 2.0**inst.n


def _dump(inst: NkInstance, fh) -> None:
    fh.write(f"{_FORMAT_MAGIC} {_FORMAT_VERSION}\n")
    fh.write(f"n {inst.n}\nk {inst.k}\nm {inst.m}\nseed {inst.seed}\n")
    fh.write("links\n")
    for j in range(inst.n):
        row = " ".join(str(int(v)) for v in inst.links[j])
        fh.write(f"{j}:{(' ' + row) if row else ''}\n")
    fh.write("tables\n")
    for i in range(inst.m):
        for j in range(inst.n):
            row = " ".join(f"{v:.17g}" for v in inst.tables[i, j])
            fh.write(f"{i} {j}: {row}\n")
    fh.write("end\n")


def save_instance(inst: NkInstance, path) -> None:
    """Write the instance in the plain-text format documented in load_instance."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        _dump(inst, fh)


def _fail(msg: str) -> None:
    raise MalformedInstanceError(msg)


def load_instance(path) -> NkInstance:
    """Read an instance file written by save_instance.

    The format is a self-describing text header (magic, version, n, k, m,
    seed) followed by the link lists and the contribution tables with 17
    significant digits, so a save/load round trip is bit-identical.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    pos = 0

    def next_line() -> str:
        nonlocal pos
        if pos >= len(lines):
            _fail("unexpected end of file")
        pos += 1
        return lines[pos - 1]

    head = next_line().split()
    if len(head) != 2 or head[0] != _FORMAT_MAGIC:
        _fail(f"bad magic line {lines[0]!r}")
    if head[1] != str(_FORMAT_VERSION):
        _fail(f"unsupported format version {head[1]!r}")

    params = {}
    for key in ("n", "k", "m", "seed"):
        parts = next_line().split()
        if len(parts) != 2 or parts[0] != key:
            _fail(f"expected '{key} <value>' line, got {lines[pos-1]!r}")
        try:
            params[key] = int(parts[1])
        except ValueError:
            _fail(f"non-integer value for {key}: {parts[1]!r}")
    n, k, m, seed = params["n"], params["k"], params["m"], params["seed"]
    if n < 1 or not (0 <= k < n) or m < 1 or not (0 <= seed < 2**64):
        _fail(f"parameters out of domain: n={n} k={k} m={m} seed={seed}")

    if next_line() != "links":
        _fail("missing 'links' section")
    links = np.empty((n, k), dtype=np.int32)
    for j in range(n):
        line = next_line()
        label, _, rest = line.partition(":")
        if label.strip() != str(j):
            _fail(f"links row {j} mislabeled: {line!r}")
        entries = rest.split()
        if len(entries) != k:
            _fail(f"links row {j} must have {k} entries, got {len(entries)}")
        try:
            row = [int(e) for e in entries]
        except ValueError:
            _fail(f"non-integer link in row {j}")
        if any(not (0 <= e < n) or e == j for e in row) or len(set(row)) != k:
            _fail(f"links row {j} must hold distinct indices != {j} in [0, {n})")
        links[j] = row

    if next_line() != "tables":
        _fail("missing 'tables' section")
    width = 2 ** (k + 1)
    tables = np.empty((m, n, width), dtype=np.float64)
    for i in range(m):
        for j in range(n):
            line = next_line()
            label, _, rest = line.partition(":")
            if label.split() != [str(i), str(j)]:
                _fail(f"tables row ({i}, {j}) mislabeled: {line!r}")
            entries = rest.split()
            if len(entries) != width:
                _fail(f"tables row ({i}, {j}) must have {width} entries")
            try:
                vals = np.array([float(e) for e in entries], dtype=np.float64)
            except ValueError:
                _fail(f"non-numeric table entry in row ({i}, {j})")
            if np.any(vals < 0.0) or np.any(vals > 1.0) or not np.all(np.isfinite(vals)):
                _fail(f"table entries in row ({i}, {j}) must lie in [0, 1]")
            tables[i, j] = vals

    if next_line() != "end":
        _fail("missing 'end' marker")
    links.setflags(write=False)
    tables.setflags(write=False)
    return NkInstance(n=n, k=k, m=m, seed=seed, links=links, tables=tables)


def dumps_instance(inst: NkInstance) -> str:
    """Instance file content as a string (for hashing and tests)."""
    buf = io.StringIO()
    _dump(inst, buf)
    return buf.getvalue()
