"""Exhaustive orbit enumeration over 2^d state spaces.

States are packed ints; every generator is a parity-conditioned XOR
(condition mask, footprint mask, constant bit), which makes the orbit
partition the connected components of an implicit undirected graph.  The
engine runs a frontier BFS with a byte-per-state visited map, vectorized
with numpy over frontier chunks.  Involutivity of the generators keeps
each expansion batch duplicate-free, so no sorting is ever needed.

The two stratified action kinds are split into per-height affine
subspaces and searched in compact coordinates chosen so that compact
numeric order agrees with full-state order; per-stratum jobs are
independent, which is where process-level parallelism comes from.
Censuses are merged by sorted reduction and are byte-identical for any
worker count.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .f2la import F2Vector, _nullspace, _parity, _rref
from .actions import ActionKind, ActionSpec, generator_masks, height_functionals

ENUM_DIM_LIMIT = 28
_CHUNK = 1 << 20
_SMALL_ORBIT_LIMIT = 1 << 16


class EnumerationGuardError(RuntimeError):
    """Raised when a requested search exceeds the in-memory guard."""


def _check_dim(dim: int) -> None:
    if dim > ENUM_DIM_LIMIT:
        raise EnumerationGuardError(
            f"state space 2^{dim} exceeds the enumeration guard 2^{ENUM_DIM_LIMIT} "
            f"(visited map alone would need {(1 << dim) >> 20} MiB)")


@dataclass(frozen=True)
class OrbitRecord:
    """One orbit: its numerically smallest member, size, optional height."""

    representative: F2Vector
    cardinality: int
    height: Optional[F2Vector] = None
    type_label: Optional[str] = None

    def sort_key(self) -> tuple[int, int]:
        return (self.height.bits if self.height is not None else 0,
                self.representative.bits)


@dataclass(frozen=True)
class OrbitCensus:
    """A deterministic partition summary of a full space or one stratum."""

    spec_descriptor: str
    n: Optional[int]
    kind: Optional[str]
    state_dim: int
    total_states: int
    records: tuple[OrbitRecord, ...]

    def __post_init__(self) -> None:
        if sum(r.cardinality for r in self.records) != self.total_states:
            raise AssertionError("orbit cardinalities do not partition the space")

    @property
    def orbit_count(self) -> int:
        return len(self.records)

    def cardinality_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.records:
            out[r.cardinality] = out.get(r.cardinality, 0) + 1
        return out

    def by_height(self) -> dict[int, tuple[OrbitRecord, ...]]:
        out: dict[int, list[OrbitRecord]] = {}
        for r in self.records:
            out.setdefault(r.height.bits if r.height else 0, []).append(r)
        return {h: tuple(v) for h, v in out.items()}

    def to_json(self) -> str:
        orbits = []
        for r in self.records:
            entry: dict = {
                "representative_hex": format(r.representative.bits, "x"),
                "cardinality": r.cardinality,
                "height_bits": r.height.to_string() if r.height is not None else None,
            }
            if r.type_label is not None:
                entry["type_label"] = r.type_label
            orbits.append(entry)
        doc = {
            "spec": self.spec_descriptor,
            "n": self.n,
            "kind": self.kind,
            "total_states": self.total_states,
            "orbits": orbits,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = ["representative_hex,cardinality,height_bits,type_label"]
        for r in self.records:
            lines.append(",".join([
                format(r.representative.bits, "x"),
                str(r.cardinality),
                r.height.to_string() if r.height is not None else "",
                r.type_label or "",
            ]))
        return "\n".join(lines) + "\n"


def _bfs_component(seed: int, gens, visited: np.ndarray) -> tuple[int, int]:
    """Flood one component; returns (min state, size).  Marks visited."""
    visited[seed] = 1
    frontier = np.array([seed], dtype=np.uint32)
    size = 1
    low = seed
    while frontier.size:
        parts = []
        for start in range(0, frontier.size, _CHUNK):
            chunk = frontier[start:start + _CHUNK]
            for cond, foot, const in gens:
                odd = ((np.bitwise_count(chunk & cond) ^ const) & np.uint8(1)).view(np.bool_)
                moved = chunk[odd]
                if not moved.size:
                    continue
                moved ^= foot
                fresh = moved[visited[moved] == 0]
                if not fresh.size:
                    continue
                visited[fresh] = 1
                size += int(fresh.size)
                m = int(fresh.min())
                if m < low:
                    low = m
                parts.append(fresh)
        frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.uint32)
    return low, size


def _np_gens(gens):
    return [(np.uint32(c), np.uint32(f), np.uint8(b & 1)) for c, f, b in gens]


def _census_masked(dim: int, gens) -> list[tuple[int, int]]:
    """All components of the full 2^dim space, seeds scanned ascending.

    Returns [(representative, size)] with representatives increasing; the
    seed of each search is its orbit minimum because every smaller state
    is already visited, and the explicit minimum from the flood confirms it.
    """
    total = 1 << dim
    visited = np.zeros(total, dtype=np.uint8)
    cgens = _np_gens(gens)
    records = []
    cursor = 0
    while cursor < total:
        step = int(visited[cursor:].argmin())
        seed = cursor + step
        if visited[seed]:
            break
        low, size = _bfs_component(seed, cgens, visited)
        if low != seed:
            raise AssertionError("ascending seed scan lost the orbit minimum")
        records.append((seed, size))
        cursor = seed + 1
    return records


def _echelon_high(vectors: list[int]) -> tuple[list[int], list[int]]:
    """Reduced echelon basis with pivots at highest set bits.

    Returns (pivots, basis), both sorted by ascending pivot.  With the
    offset cleared at the pivots, mapping compact bit s to basis[s] is
    strictly monotone from compact ints to full states.
    """
    by_pivot: dict[int, int] = {}
    for v in vectors:
        cur = v
        while cur:
            p = cur.bit_length() - 1
            if p in by_pivot:
                cur ^= by_pivot[p]
            else:
                by_pivot[p] = cur
                break
    pivots = sorted(by_pivot)
    for p in reversed(pivots):
        for q in pivots:
            if q != p and by_pivot[q] >> p & 1:
                by_pivot[q] ^= by_pivot[p]
    return pivots, [by_pivot[p] for p in pivots]


def _expand(compact_bits: int, basis: list[int]) -> int:
    out = 0
    s = 0
    while compact_bits:
        if compact_bits & 1:
            out ^= basis[s]
        compact_bits >>= 1
        s += 1
    return out


def _height_solver(functionals: list[int], dim: int):
    """Pivot columns and marker rows for particular solutions of
    parity(x & f_l) = h_l; the functionals must be independent."""
    aug = [f | (1 << (dim + l)) for l, f in enumerate(functionals)]
    red, pivots = _rref(aug, dim)
    if len(pivots) != len(functionals):
        raise AssertionError("height functionals are linearly dependent")
    markers = [r >> dim for r in red]
    return pivots, markers


@dataclass(frozen=True)
class _StratumJob:
    height_bits: int
    compact_dim: int
    gens: tuple[tuple[int, int, int], ...]
    pivots: tuple[int, ...]
    basis: tuple[int, ...]
    offset: int


def _build_stratum_jobs(dim: int, gens, functionals: list[int]) -> list[_StratumJob]:
    kernel = _nullspace(functionals, dim)
    pivots, basis = _echelon_high(kernel)
    hp, markers = _height_solver(functionals, dim)
    jobs = []
    for height_bits in range(1 << len(functionals)):
        x = 0
        for r, p in enumerate(hp):
            if _parity(markers[r] & height_bits):
                x |= 1 << p
        for s, p in enumerate(pivots):
            if x >> p & 1:
                x ^= basis[s]
        compact = []
        for cond, foot in gens:
            cc = 0
            for s, b in enumerate(basis):
                if _parity(b & cond):
                    cc |= 1 << s
            cf = 0
            for s, p in enumerate(pivots):
                if foot >> p & 1:
                    cf |= 1 << s
            if _expand(cf, basis) != foot:
                raise AssertionError("generator footprint leaves the stratum")
            compact.append((cc, cf, _parity(x & cond)))
        jobs.append(_StratumJob(height_bits, len(basis), tuple(compact),
                                tuple(pivots), tuple(basis), x))
    return jobs


def _run_stratum_job(job: _StratumJob) -> list[tuple[int, int, int]]:
    basis = list(job.basis)
    out = []
    for rep_c, size in _census_masked(job.compact_dim, job.gens):
        out.append((job.height_bits, job.offset ^ _expand(rep_c, basis), size))
    return out


def _stratified_census(dim, gens, functionals, workers) -> list[tuple[int, int, int]]:
    jobs = _build_stratum_jobs(dim, gens, functionals)
    if workers > 1 and len(jobs) > 1:
        import multiprocessing as mp

        try:
            ctx = mp.get_context("fork")
        except ValueError:  # platforms without fork; jobs pickle fine either way
            ctx = mp.get_context()
        with ctx.Pool(processes=workers) as pool:
            chunks = pool.map(_run_stratum_job, jobs)
    else:
        chunks = [_run_stratum_job(j) for j in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort()
    return rows


def _default_workers() -> int:
    return os.cpu_count() or 1


def _family(spec):
    """(dim, masks, functionals, descriptor, n, kind) for a spec.

    Accepts an ActionSpec or any object exposing state_dim and
    masked_generators() (graph lattices do).
    """
    if isinstance(spec, ActionSpec):
        dim = spec.state_dim
        masks = generator_masks(spec)
        if spec.kind in (ActionKind.FIRST, ActionKind.SECOND):
            functionals = height_functionals(spec)
        else:
            functionals = []
        return dim, masks, functionals, spec.describe(), spec.n, spec.kind.value
    dim = spec.state_dim
    return dim, spec.masked_generators(), [], spec.describe(), None, None


def enumerate_orbits(spec, workers: Optional[int] = None) -> OrbitCensus:
    """Exact orbit census of the full state space of ``spec``.

    Deterministic for any worker count: stratified kinds are merged by
    sorted reduction, everything else runs as a single search.
    """
    dim, masks, functionals, descriptor, n, kind = _family(spec)
    _check_dim(dim)
    workers = workers or _default_workers()
    if functionals:
        rows = _stratified_census(dim, masks, functionals, workers)
        t = len(functionals)
        records = tuple(
            OrbitRecord(F2Vector(dim, rep), size, height=F2Vector(t, h))
            for h, rep, size in rows)
    else:
        gens = [(c, f, 0) for c, f in masks]
        records = tuple(
            OrbitRecord(F2Vector(dim, rep), size)
            for rep, size in _census_masked(dim, gens))
    records = tuple(sorted(records, key=OrbitRecord.sort_key))
    return OrbitCensus(descriptor, n, kind, dim, 1 << dim, records)


def _stratum_spec_check(spec: ActionSpec, height: F2Vector) -> list[int]:
    functionals = height_functionals(spec)
    if spec.kind not in (ActionKind.FIRST, ActionKind.SECOND):
        raise ValueError(f"{spec.kind.value} has no height decomposition")
    if height.dim != len(functionals):
        raise ValueError(
            f"height length {height.dim} does not match {len(functionals)} "
            f"for {spec.kind.value}, n={spec.n}")
    return functionals


def enumerate_stratum(spec: ActionSpec, height: F2Vector,
                      workers: Optional[int] = None) -> OrbitCensus:
    """Census restricted to the stratum at the given height."""
    del workers  # a single stratum is one job
    functionals = _stratum_spec_check(spec, height)
    dim = spec.state_dim
    _check_dim(dim)
    masks = generator_masks(spec)
    jobs = _build_stratum_jobs(dim, masks, functionals)
    job = jobs[height.bits]
    rows = _run_stratum_job(job)
    rows.sort()
    records = tuple(
        OrbitRecord(F2Vector(dim, rep), size, height=F2Vector(height.dim, h))
        for h, rep, size in rows)
    return OrbitCensus(
        f"{spec.describe()}, height {height.to_string()}",
        spec.n, spec.kind.value, dim, 1 << job.compact_dim, records)


def _state_bits(state) -> int:
    if isinstance(state, int):
        return state
    bits = getattr(state, "bits", None)
    if bits is None:
        raise TypeError(f"cannot read a state from {type(state).__name__}")
    return bits


def orbit_of(spec, state) -> OrbitRecord:
    """The orbit record containing ``state``.

    Small orbits are closed over a plain hash set; past the size limit,
    the search falls back to the vectorized engine on the state's stratum
    (or the whole space when there is no height decomposition).
    """
    dim, masks, functionals, _, _, _ = _family(spec)
    _check_dim(dim)
    start = _state_bits(state)
    if not 0 <= start < (1 << dim):
        raise ValueError(f"state 0x{start:x} out of range for dim {dim}")
    seen = {start}
    frontier = [start]
    while frontier and len(seen) <= _SMALL_ORBIT_LIMIT:
        nxt = []
        for x in frontier:
            for cond, foot in masks:
                y = x ^ foot if _parity(x & cond) else x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    height = None
    if functionals:
        hbits = 0
        for l, f in enumerate(functionals):
            if _parity(start & f):
                hbits |= 1 << l
        height = F2Vector(len(functionals), hbits)
    if not frontier:
        return OrbitRecord(F2Vector(dim, min(seen)), len(seen), height=height)
    # big orbit: rerun vectorized, in compact stratum coordinates when possible
    if functionals:
        job = _build_stratum_jobs(dim, masks, functionals)[height.bits]
        basis = list(job.basis)
        compact = 0
        for s, p in enumerate(job.pivots):
            if (start ^ job.offset) >> p & 1:
                compact |= 1 << s
        if job.offset ^ _expand(compact, basis) != start:
            raise AssertionError("state does not lie in its computed stratum")
        visited = np.zeros(1 << job.compact_dim, dtype=np.uint8)
        low_c, size = _bfs_component(compact, _np_gens(job.gens), visited)
        low = job.offset ^ _expand(low_c, basis)
    else:
        visited = np.zeros(1 << dim, dtype=np.uint8)
        gens = [(c, f, 0) for c, f in masks]
        low, size = _bfs_component(start, _np_gens(gens), visited)
    return OrbitRecord(F2Vector(dim, low), size, height=height)


def attach_labels(census: OrbitCensus, labels: dict[int, str]) -> OrbitCensus:
    """New census with type labels keyed by representative bits."""
    records = tuple(replace(r, type_label=labels.get(r.representative.bits))
                    for r in census.records)
    return OrbitCensus(census.spec_descriptor, census.n, census.kind,
                       census.state_dim, census.total_states, records)
