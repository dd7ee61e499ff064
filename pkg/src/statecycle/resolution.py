"""Smoothing a diagram into loops, enhanced states and their bigradings.

At a crossing ``(a, b, c, d)`` the 0-smoothing joins arcs ``a-b`` and
``c-d``; the 1-smoothing joins ``a-d`` and ``b-c``.  With this choice the
0-smoothing of a positive crossing is the oriented one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .diagram import Diagram
from .errors import LengthMismatch, MalformedToken

SCHEMA = "statecycle.state/1"

V_PLUS = 0
V_MINUS = 1

MERGE = "merge"
PINCH = "pinch"


def smoothing_pairs(x: tuple[int, int, int, int], bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b, c, d = x
    if bit:
        return (a, d), (b, c)
    return (a, b), (c, d)


@dataclass(frozen=True)
class Trace:
    crossing: int
    bit: int
    loops: tuple[int, int]

    @property
    def kind(self) -> str:
        return PINCH if self.loops[0] == self.loops[1] else MERGE

    def to_json(self) -> dict:
        return {"crossing": self.crossing, "bit": self.bit, "loops": list(self.loops), "kind": self.kind}


@dataclass(frozen=True, eq=False)
class State:
    """A fully traced state.  Loops are numbered by their minimal arc label."""

    diagram: Diagram
    smoothing: tuple[int, ...]
    loops: tuple[tuple[int, ...], ...]
    traces: tuple[Trace, ...]

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.diagram == other.diagram and self.smoothing == other.smoothing

    def __hash__(self):
        return hash((self.diagram, self.smoothing))

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    @property
    def height(self) -> int:
        """Number of 1-smoothings."""
        return sum(self.smoothing)

    @cached_property
    def loop_of(self) -> dict[int, int]:
        return {a: i for i, loop in enumerate(self.loops) for a in loop}

    @cached_property
    def zero_tracing(self) -> frozenset[int]:
        return frozenset(i for t in self.traces if t.bit == 0 for i in t.loops)

    @cached_property
    def one_tracing(self) -> frozenset[int]:
        return frozenset(i for t in self.traces if t.bit == 1 for i in t.loops)

    @property
    def one_block(self) -> frozenset[int]:
        return self.one_tracing - self.zero_tracing

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.smoothing)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "smoothing": self.bitstring(),
            "loops": [list(loop) for loop in self.loops],
            "traces": [t.to_json() for t in self.traces],
        }


@dataclass(frozen=True)
class EnhancedState:
    """A state with a v+ (0) / v- (1) mark on each loop."""

    state: State
    marks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(int(m) for m in self.marks))
        if len(self.marks) != self.state.loop_count:
            raise LengthMismatch(
                f"{len(self.marks)} marks for {self.state.loop_count} loops"
            )

    @property
    def v_plus(self) -> int:
        return self.marks.count(V_PLUS)

    @property
    def v_minus(self) -> int:
        return self.marks.count(V_MINUS)

    def marks_bitstring(self) -> str:
        return "".join(str(m) for m in self.marks)

    def with_marks(self, marks: Sequence[int]) -> "EnhancedState":
        return EnhancedState(self.state, tuple(marks))


@dataclass(frozen=True)
class Bigrading:
    t: int
    q: int

    @property
    def delta(self) -> int:
        return 2 * self.t - self.q

    def as_tuple(self) -> tuple[int, int]:
        return (self.t, self.q)


def coerce_smoothing(d: Diagram, s) -> tuple[int, ...]:
    """Accept a bit sequence, a bitstring, or one of ``all0``/``all1``/``seifert``."""
    n = len(d.crossings)
    if isinstance(s, str):
        key = s.strip().lower()
        if key == "all0":
            return (0,) * n
        if key == "all1":
            return (1,) * n
        if key == "seifert":
            return seifert_smoothing(d)
        if key and set(key) <= {"0", "1"}:
            s = [int(ch) for ch in key]
        elif not key:
            s = []
        else:
            raise MalformedToken(f"bad smoothing {s!r}")
    bits = tuple(int(b) for b in s)
    if len(bits) != n:
        raise LengthMismatch(f"smoothing has {len(bits)} bits for {n} crossings")
    if any(b not in (0, 1) for b in bits):
        raise MalformedToken("smoothing bits must be 0 or 1")
    return bits


def resolve(d: Diagram, smoothing) -> State:
    """Smooth every crossing and trace the resulting loops."""
    bits = coerce_smoothing(d, smoothing)
    if not d.crossings:
        loops = tuple((i + 1,) for i in range(d.free_loops))
        return State(d, (), loops, ())
    parent = {a: a for a in d.slots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, bit in zip(d.crossings, bits):
        for u, v in smoothing_pairs(x, bit):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for a in sorted(parent):
        groups.setdefault(find(a), []).append(a)
    loops = tuple(tuple(g) for g in sorted(groups.values(), key=min))
    loop_of = {a: i for i, loop in enumerate(loops) for a in loop}
    traces = tuple(
        Trace(i, bit, tuple(sorted((loop_of[x[0]], loop_of[x[2]]))))
        for i, (x, bit) in enumerate(zip(d.crossings, bits))
    )
    return State(d, bits, loops, traces)


def seifert_smoothing(d: Diagram) -> tuple[int, ...]:
    """Oriented resolution: positive crossings 0-smoothed, negative 1-smoothed."""
    return tuple(0 if s > 0 else 1 for s in d.signs)


def bigrading(a: EnhancedState, d: Diagram | None = None) -> Bigrading:
    d = a.state.diagram if d is None else d
    h = a.state.height
    t = h - d.n_minus
    q = a.v_plus - a.v_minus + h + d.n_plus - 2 * d.n_minus
    return Bigrading(t, q)


def enumerate_enhancements(st: State) -> Iterator[EnhancedState]:
    """All markings, binary counting with loop 0 as the low bit (v+ = 0)."""
    k = st.loop_count
    for m in range(1 << k):
        yield EnhancedState(st, tuple((m >> j) & 1 for j in range(k)))


def all_smoothings(n: int) -> Iterator[tuple[int, ...]]:
    """Lexicographic order over bit tuples, crossing 0 most significant."""
    return product((0, 1), repeat=n)
