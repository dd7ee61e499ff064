"""Exact rational Khovanov homology on the full cube of resolutions.

Generators are pairs ``(mask, marks)``: bit ``i`` of ``mask`` is the
smoothing of crossing ``i`` and bit ``j`` of ``marks`` is 1 when loop ``j``
carries v-.  The edge map for crossing ``i`` carries the sign
``(-1)**(number of 1-smoothed crossings with index < i)``.
"""

from __future__ import annotations

import os
from collections import defaultdict
from itertools import combinations
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .diagram import Diagram
from .errors import NotACycle, TooLarge
from .resolution import EnhancedState, State, resolve

SCHEMA = "statecycle.homology/1"

DEFAULT_MAX_CROSSINGS = 16
DEFAULT_MAX_MEM = 2 * 1024 ** 3
BYTES_PER_GENERATOR = 400  # dict entries, bucket lists and matrix rows

Gen = tuple[int, int]
Chain = dict[Gen, int]


def max_mem() -> int:
    raw = os.environ.get("STATECYCLE_MAX_MEM")
    return int(raw) if raw else DEFAULT_MAX_MEM


def generator_count(d: Diagram) -> int:
    """Total number of enhanced states, from the loop histogram alone."""
    counts = kernels.loop_histogram(list(d.crossings), d.arc_count)
    return int(sum(int(counts[h, k]) << k for h in range(counts.shape[0]) for k in range(counts.shape[1])))


def _popcount(x: int) -> int:
    return bin(x).count("1")


class CubeComplex:
    """The Khovanov chain complex of a diagram, bucketed by (t, q)."""

    def __init__(self, d: Diagram):
        self.diagram = d
        self.n = len(d.crossings)
        self.states: list[State] = []
        self._loop_of: list[dict[int, int]] = []
        for mask in range(1 << self.n):
            st = resolve(d, tuple((mask >> i) & 1 for i in range(self.n)))
            self.states.append(st)
            self._loop_of.append(st.loop_of)
        self.buckets: dict[tuple[int, int], list[Gen]] = defaultdict(list)
        self.index: dict[Gen, int] = {}
        self._where: dict[Gen, tuple[int, int]] = {}
        for mask, st in enumerate(self.states):
            k = st.loop_count
            for marks in range(1 << k):
                key = self.grading(mask, marks)
                bucket = self.buckets[key]
                self.index[(mask, marks)] = len(bucket)
                self._where[(mask, marks)] = key
                bucket.append((mask, marks))
        self.buckets = dict(sorted(self.buckets.items()))
        self._edges: dict[tuple[int, int], tuple] = {}
        self._rank_cache: dict[tuple[int, int, str], int] = {}

    def __len__(self) -> int:
        return len(self.index)

    def grading(self, mask: int, marks: int) -> tuple[int, int]:
        d = self.diagram
        h = _popcount(mask)
        k = self.states[mask].loop_count
        minus = _popcount(marks)
        return h - d.n_minus, (k - 2 * minus) + h + d.n_plus - 2 * d.n_minus

    def generator(self, a: EnhancedState) -> Gen:
        mask = sum(b << i for i, b in enumerate(a.state.smoothing))
        marks = sum(m << j for j, m in enumerate(a.marks))
        return mask, marks

    def enhanced(self, g: Gen) -> EnhancedState:
        mask, marks = g
        st = self.states[mask]
        return EnhancedState(st, tuple((marks >> j) & 1 for j in range(st.loop_count)))

    def _edge(self, mask: int, i: int):
        key = (mask, i)
        e = self._edges.get(key)
        if e is not None:
            return e
        target = mask | (1 << i)
        src, dst = self.states[mask], self.states[target]
        lo2 = self._loop_of[target]
        a, _, c, _ = self.diagram.crossings[i]
        x, y = src.traces[i].loops
        others = tuple(
            (j, lo2[src.loops[j][0]]) for j in range(src.loop_count) if j != x and j != y
        )
        sign = -1 if _popcount(mask & ((1 << i) - 1)) % 2 else 1
        if x != y:
            e = ("merge", target, sign, x, y, lo2[a], others)
        else:
            e = ("split", target, sign, x, x, (lo2[a], lo2[c]), others)
        self._edges[key] = e
        return e

    def differential_of(self, g: Gen) -> Chain:
        mask, marks = g
        out: Chain = {}
        for i in range(self.n):
            if (mask >> i) & 1:
                continue
            kind, target, sign, x, y, z, others = self._edge(mask, i)
            base = 0
            for j, j2 in others:
                if (marks >> j) & 1:
                    base |= 1 << j2
            if kind == "merge":
                mx, my = (marks >> x) & 1, (marks >> y) & 1
                if mx and my:
                    continue
                terms = [base | ((mx | my) << z)]
            else:
                z1, z2 = z
                if (marks >> x) & 1:
                    terms = [base | (1 << z1) | (1 << z2)]
                else:
                    terms = [base | (1 << z1), base | (1 << z2)]
            for m2 in terms:
                key = (target, m2)
                v = out.get(key, 0) + sign
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def differential(self, chain: Mapping[Gen, int]) -> Chain:
        out: Chain = defaultdict(int)
        for g, coeff in chain.items():
            for h, v in self.differential_of(g).items():
                out[h] += coeff * v
        return {k: v for k, v in out.items() if v}

    def matrix(self, t: int, q: int):
        """Rows are images of the C^{t,q} basis in the C^{t+1,q} basis (CSR)."""
        src = self.buckets.get((t, q), [])
        indptr = [0]
        indices: list[int] = []
        data: list[int] = []
        for g in src:
            for h, v in self.differential_of(g).items():
                assert self._where[h] == (t + 1, q)
                indices.append(self.index[h])
                data.append(v)
            indptr.append(len(indices))
        ncols = len(self.buckets.get((t + 1, q), []))
        return (
            np.asarray(indptr, dtype=np.int64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(data, dtype=np.int64),
            ncols,
        )

    def rank(self, t: int, q: int, method: str = "exact") -> int:
        """Rank of the differential C^{t,q} -> C^{t+1,q}."""
        key = (t, q, method)
        if key not in self._rank_cache:
            if not self.buckets.get((t, q)) or not self.buckets.get((t + 1, q)):
                r = 0
            else:
                r = _rank(*self.matrix(t, q), method=method)
            self._rank_cache[key] = r
        return self._rank_cache[key]

    def check_d_squared(self) -> bool:
        for g in self.index:
            if self.differential(self.differential_of(g)):
                return False
        return True


class LocalComplex(CubeComplex):
    """Only the generators of chosen (t, q) buckets, built on demand.

    States are resolved lazily, so a handful of buckets of a large diagram
    can be handled without touching the full cube.
    """

    def __init__(self, d: Diagram, keys: Iterable[tuple[int, int]]):
        self.diagram = d
        self.n = len(d.crossings)
        self._state_cache: dict[int, State] = {}
        self.buckets = {}
        self.index = {}
        self._where = {}
        for t, q in sorted(set(keys)):
            gens = self._enumerate(t, q)
            self.buckets[(t, q)] = gens
            for i, g in enumerate(gens):
                self.index[g] = i
                self._where[g] = (t, q)
        self._edges = {}
        self._rank_cache = {}

    @property
    def states(self):
        return _LazyStates(self)

    @property
    def _loop_of(self):
        return _LazyStates(self, loop_of=True)

    def _state(self, mask: int) -> State:
        st = self._state_cache.get(mask)
        if st is None:
            st = resolve(self.diagram, tuple((mask >> i) & 1 for i in range(self.n)))
            self._state_cache[mask] = st
        return st

    def _enumerate(self, t: int, q: int) -> list[Gen]:
        d = self.diagram
        h = t + d.n_minus
        if not 0 <= h <= self.n:
            return []
        out = []
        for ones in combinations(range(self.n), h):
            mask = sum(1 << i for i in ones)
            k = self._state(mask).loop_count
            twice_minus = k + h + d.n_plus - 2 * d.n_minus - q
            if twice_minus % 2 or not 0 <= twice_minus // 2 <= k:
                continue
            for minus in combinations(range(k), twice_minus // 2):
                out.append((mask, sum(1 << j for j in minus)))
        out.sort()
        return out

    def rank(self, t: int, q: int, method: str = "exact") -> int:
        if (t, q) not in self.buckets or (t + 1, q) not in self.buckets:
            raise KeyError(f"bucket pair ({t},{q}) -> ({t + 1},{q}) was not built")
        return super().rank(t, q, method)


class _LazyStates:
    def __init__(self, c: LocalComplex, loop_of: bool = False):
        self._c = c
        self._loop_of = loop_of

    def __getitem__(self, mask: int):
        st = self._c._state(mask)
        return st.loop_of if self._loop_of else st


def local_homology_rank(d: Diagram, t: int, q: int, method: str = "exact") -> int:
    """rank H^{t,q} from the three buckets (t-1, q), (t, q), (t+1, q)."""
    c = LocalComplex(d, [(t - 1, q), (t, q), (t + 1, q)])
    size = len(c.buckets[(t, q)])
    if not size:
        return 0
    return size - c.rank(t, q, method) - c.rank(t - 1, q, method)


def local_bucket_size(d: Diagram, t: int, q: int) -> int:
    return len(LocalComplex(d, [(t, q)]).buckets[(t, q)])


def _rank(indptr, indices, data, ncols, method="exact") -> int:
    if method == "exact":
        return kernels.rank_exact(indptr, indices, data, ncols)
    if method == "modp":
        r1 = kernels.rank_modp(indptr, indices, data, ncols, kernels.MODP)
        r2 = kernels.rank_modp(indptr, indices, data, ncols, kernels.MODP_ALT)
        if r1 == r2:
            return r1
        return kernels.rank_exact(indptr, indices, data, ncols)
    raise ValueError(f"unknown rank method {method!r}")


def build_complex(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS, check: bool = False) -> CubeComplex:
    n = len(d.crossings)
    if n > max_crossings:
        raise TooLarge(f"{n} crossings exceeds the cap of {max_crossings}")
    need = generator_count(d) * BYTES_PER_GENERATOR
    if need > max_mem():
        raise TooLarge(
            f"estimated {need} bytes for {need // BYTES_PER_GENERATOR} generators exceeds the memory cap {max_mem()}"
        )
    c = CubeComplex(d)
    if check and not c.check_d_squared():
        raise AssertionError("d o d != 0")
    return c


@dataclass
class HomologyTable:
    ranks: dict[tuple[int, int], int]
    schema: str = field(default=SCHEMA, repr=False)

    @property
    def delta_values(self) -> list[int]:
        return sorted({2 * t - q for (t, q), r in self.ranks.items() if r})

    @property
    def width(self) -> int:
        return len(self.delta_values)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def euler_characteristic(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for (t, q), r in self.ranks.items():
            out[q] += r if t % 2 == 0 else -r
        return {e: c for e, c in sorted(out.items()) if c}

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "ranks": [{"t": t, "q": q, "rank": r} for (t, q), r in sorted(self.ranks.items())],
            "width": self.width,
            "delta_values": self.delta_values,
        }

    def to_text(self) -> str:
        """Rows are q (descending), columns are t (ascending)."""
        if not self.ranks:
            return "(zero homology)\n"
        ts = [t for t, _ in self.ranks]
        qs = [q for _, q in self.ranks]
        cols = list(range(min(ts), max(ts) + 1))
        rows = list(range(max(qs), min(qs) - 1, -2))
        cells = [[""] + [str(t) for t in cols]]
        for q in rows:
            cells.append([str(q)] + [str(self.ranks.get((t, q), "")) for t in cols])
        width = max(len(s) for row in cells for s in row)
        lines = []
        for i, row in enumerate(cells):
            lines.append(" | ".join(s.rjust(width) for s in row))
            if i == 0:
                lines.append("-" * len(lines[0]))
        return "\n".join(lines) + "\n"


def homology_ranks(c: CubeComplex, method: str = "exact") -> HomologyTable:
    ranks = {}
    for (t, q), gens in c.buckets.items():
        r = len(gens) - c.rank(t, q, method) - c.rank(t - 1, q, method)
        if r:
            ranks[(t, q)] = r
    return HomologyTable(ranks)


def khovanov_homology(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS, method: str = "exact") -> HomologyTable:
    return homology_ranks(build_complex(d, max_crossings), method)


def chain_of(c: CubeComplex, items: Iterable[tuple[EnhancedState, int]]) -> Chain:
    out: Chain = defaultdict(int)
    for a, coeff in items:
        out[c.generator(a)] += coeff
    return {k: v for k, v in out.items() if v}


def is_boundary_chain(chain: Mapping[Gen, int], c: CubeComplex) -> bool:
    """True iff a homogeneous cycle lies in the image of the differential."""
    chain = {g: v for g, v in chain.items() if v}
    if not chain:
        return True
    if c.differential(chain):
        raise NotACycle("chain is not a cycle")
    keys = {c._where[g] for g in chain}
    if len(keys) != 1:
        raise ValueError("chain is not homogeneous in (t, q)")
    t, q = keys.pop()
    if not c.buckets.get((t - 1, q)):
        return False
    indptr, indices, data, ncols = c.matrix(t - 1, q)
    extra_idx = [c.index[g] for g in chain]
    extra_val = [chain[g] for g in chain]
    indptr2 = np.append(indptr, indptr[-1] + len(extra_idx))
    indices2 = np.concatenate([indices, np.asarray(extra_idx, dtype=np.int64)])
    data2 = np.concatenate([data, np.asarray(extra_val, dtype=np.int64)])
    base = c.rank(t - 1, q)
    return kernels.rank_exact(indptr2, indices2, data2, ncols) == base


def is_boundary(a: EnhancedState, c: CubeComplex) -> bool:
    return is_boundary_chain({c.generator(a): 1}, c)


def is_cycle(a: EnhancedState, c: CubeComplex) -> bool:
    return not c.differential_of(c.generator(a))
