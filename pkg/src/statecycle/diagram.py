"""Oriented link diagrams in PD notation.

A crossing is a 4-tuple of arc labels ``(a, b, c, d)`` listed counterclockwise
starting from the incoming under-strand, so the under-strand runs ``a -> c``.
The over-strand runs ``d -> b`` on a positive crossing and ``b -> d`` on a
negative one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ArcCountMismatch, MalformedToken, OrientationConflict

Crossing = tuple[int, int, int, int]
Slot = tuple[int, int]  # (crossing index, position 0..3)

SCHEMA = "statecycle.diagram/1"

_TOKEN = re.compile(r"X\s*\[([^\]]*)\]")


@dataclass(frozen=True)
class Diagram:
    """An immutable oriented link diagram.

    ``free_loops`` only matters for crossingless diagrams (the 0-crossing
    unknot has ``free_loops=1``).
    """

    crossings: tuple[Crossing, ...]
    name: str | None = field(default=None, compare=False)
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in x) for x in self.crossings))
        if not self.crossings and self.free_loops < 1:
            object.__setattr__(self, "free_loops", 1)
        if self.crossings and self.free_loops:
            raise ArcCountMismatch("free loops are only supported on crossingless diagrams")
        _validate_labels(self.crossings)
        # Orientation is computed eagerly so invalid input fails at construction.
        self._orientation

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        if not self.crossings:
            return self.free_loops
        return 2 * len(self.crossings)

    @cached_property
    def slots(self) -> dict[int, tuple[Slot, Slot]]:
        """Map each arc label to the two crossing slots it occupies."""
        out: dict[int, list[Slot]] = {}
        for c, x in enumerate(self.crossings):
            for p, label in enumerate(x):
                out.setdefault(label, []).append((c, p))
        return {k: (v[0], v[1]) for k, v in out.items()}

    @cached_property
    def _orientation(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        return _orient(self.crossings, self.slots)

    @property
    def signs(self) -> tuple[int, ...]:
        """Sign (+1 / -1) of each crossing, right-handed convention."""
        return self._orientation[0]

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Arc labels of each link component, in orientation order."""
        if not self.crossings:
            return tuple((i + 1,) for i in range(self.free_loops))
        return self._orientation[1]

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @cached_property
    def arc_component(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def arc_ends(self, label: int) -> tuple[Slot, Slot]:
        """``(tail, head)``: the slot the arc leaves from and the slot it enters."""
        s1, s2 = self.slots[label]
        return (s2, s1) if self.is_entry(s1) else (s1, s2)

    def is_entry(self, slot: Slot) -> bool:
        """True if the oriented strand enters the crossing at ``slot``."""
        c, p = slot
        if p in (0, 2):
            return p == 0
        return p == (3 if self.signs[c] > 0 else 1)

    def renamed(self, name: str | None) -> "Diagram":
        return Diagram(self.crossings, name=name, free_loops=self.free_loops)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Diagram{label}: {len(self.crossings)} crossings, {self.component_count} components>"


def _validate_labels(crossings: Sequence[Crossing]) -> None:
    counts: dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise MalformedToken(f"crossing {x!r} does not have 4 arc labels")
        for label in x:
            if label < 1:
                raise MalformedToken(f"arc label {label} is not positive")
            counts[label] = counts.get(label, 0) + 1
    bad = sorted(k for k, v in counts.items() if v != 2)
    if bad:
        raise ArcCountMismatch(f"arc labels {bad} do not appear exactly twice")
    if crossings and sorted(counts) != list(range(1, len(counts) + 1)):
        raise ArcCountMismatch(f"arc labels are not contiguous 1..{len(counts)}")


def _other_slot(slots: dict[int, tuple[Slot, Slot]], label: int, here: Slot) -> Slot:
    s1, s2 = slots[label]
    return s2 if s1 == here else s1


def _orient(crossings, slots):
    """Orient every component; returns (signs, components).

    Each component is walked once.  Under-strand entries fix the direction;
    a component that only passes over is oriented so its arc sequence read
    from its lowest label is lexicographically smallest.
    """
    n = len(crossings)
    used: set[Slot] = set()
    over_entry = [None] * n
    components = []
    for label in sorted(slots):
        start = slots[label][1]
        if start in used:
            continue
        entries = []
        cur = start
        while cur not in used:
            c, p = cur
            out = (c, (p + 2) % 4)
            used.add(cur)
            used.add(out)
            entries.append(cur)
            cur = _other_slot(slots, crossings[c][out[1]], out)
        positions = {p for _, p in entries}
        forward = 0 in positions
        backward = 2 in positions
        if forward and backward:
            raise OrientationConflict(
                f"component through arc {label} passes under in both directions"
            )
        exits_fwd = [crossings[c][(p + 2) % 4] for c, p in entries]
        rev_entries = [(c, (p + 2) % 4) for c, p in reversed(entries)]
        exits_bwd = [crossings[c][(p + 2) % 4] for c, p in rev_entries]
        if not forward and not backward:
            backward = _rotate_min(exits_bwd) < _rotate_min(exits_fwd)
        if backward:
            entries, arcs = rev_entries, exits_bwd
        else:
            arcs = exits_fwd
        for c, p in entries:
            if p in (1, 3):
                over_entry[c] = p
        k = arcs.index(min(arcs))
        components.append(tuple(arcs[k:] + arcs[:k]))
    signs = tuple(1 if p == 3 else -1 for p in over_entry)
    components.sort(key=min)
    return signs, tuple(components)


def _rotate_min(seq: list[int]) -> list[int]:
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


def parse_pd(text: str, name: str | None = None) -> Diagram:
    """Parse ``X[a,b,c,d]`` tokens or a JSON array of 4-tuples."""
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedToken(f"invalid JSON: {exc}") from None
        return from_json(data, name=name)
    body = stripped
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    crossings = []
    pos = 0
    for m in _TOKEN.finditer(body):
        gap = body[pos:m.start()].strip(" \t\r\n,")
        if gap:
            raise MalformedToken(f"unexpected text {gap!r}")
        pos = m.end()
        parts = [s.strip() for s in m.group(1).split(",")]
        try:
            values = tuple(int(s) for s in parts)
        except ValueError:
            raise MalformedToken(f"non-integer label in X[{m.group(1)}]") from None
        if len(values) != 4:
            raise MalformedToken(f"X[{m.group(1)}] does not have 4 labels")
        crossings.append(values)
    tail = body[pos:].strip(" \t\r\n,")
    if tail:
        raise MalformedToken(f"unexpected text {tail!r}")
    return Diagram(tuple(crossings), name=name)


def from_json(data, name: str | None = None) -> Diagram:
    if isinstance(data, dict):
        crossings = data.get("crossings")
        name = data.get("name", name)
        free = 0 if crossings else int(data.get("arc_count", 1))
    else:
        crossings, free = data, 0
    if not isinstance(crossings, list):
        raise MalformedToken("expected a list of crossings")
    try:
        xs = tuple(tuple(int(v) for v in x) for x in crossings)
    except (TypeError, ValueError):
        raise MalformedToken("crossings must be lists of integers") from None
    if any(len(x) != 4 for x in xs):
        raise MalformedToken("each crossing needs 4 arc labels")
    return Diagram(xs, name=name, free_loops=free)


def to_pd(d: Diagram) -> str:
    return " ".join("X[%d,%d,%d,%d]" % x for x in d.crossings)


def to_json(d: Diagram) -> dict:
    return {
        "schema": SCHEMA,
        "name": d.name,
        "crossings": [list(x) for x in d.crossings],
        "arc_count": d.arc_count,
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "components": d.component_count,
    }


def crossing_signs(d: Diagram) -> tuple[int, int]:
    """Return ``(n_plus, n_minus)``."""
    return d.n_plus, d.n_minus


def is_alternating(d: Diagram) -> bool:
    """True if every component alternates over, under, over, ... ."""
    if not d.crossings:
        return True
    for comp in d.components:
        kinds = []
        for a in comp:
            _, (c, p) = d.arc_ends(a)
            kinds.append(p % 2 == 0)  # entering on the under-strand
        if any(kinds[i] == kinds[i - 1] for i in range(len(kinds))):
            return False
    return True


def mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing, keeping orientation."""
    out = []
    for (a, b, c, e), s in zip(d.crossings, d.signs):
        # the old over-strand becomes the under-strand; start at its incoming end
        out.append((e, a, b, c) if s > 0 else (b, c, e, a))
    name = None if d.name is None else f"mirror({d.name})"
    return Diagram(tuple(out), name=name, free_loops=d.free_loops)


def reverse(d: Diagram) -> Diagram:
    """Reverse the orientation of every component (crossing signs are kept)."""
    return Diagram(tuple((c, e, a, b) for a, b, c, e in d.crossings), name=d.name, free_loops=d.free_loops)


def shift_labels(d: Diagram, offset: int) -> tuple[Crossing, ...]:
    return tuple(tuple(a + offset for a in x) for x in d.crossings)


def relabel(d: Diagram) -> Diagram:
    """Renumber arcs consecutively along each component's orientation."""
    if not d.crossings:
        return d
    new = {}
    for comp in d.components:
        for a in comp:
            new[a] = len(new) + 1
    return Diagram(tuple(tuple(new[a] for a in x) for x in d.crossings), name=d.name)


def braid_closure(word: Iterable[int], strands: int | None = None, name: str | None = None) -> Diagram:
    """Closure of a braid word; generator ``i`` (or ``-i``) swaps strands i, i+1.

    Strands run upward and ``+i`` gives a positive crossing.
    """
    word = [int(w) for w in word]
    if any(w == 0 for w in word):
        raise MalformedToken("braid generators are nonzero")
    if strands is None:
        strands = max((abs(w) for w in word), default=0) + 1
    labels = iter(range(1, 10 ** 9))
    start = [next(labels) for _ in range(strands)]
    cur = list(start)
    raw = []
    for w in word:
        i = abs(w) - 1
        sw, se = cur[i], cur[i + 1]
        nw, ne = next(labels), next(labels)
        if w > 0:
            raw.append((se, ne, nw, sw))
        else:
            raw.append((sw, se, ne, nw))
        cur[i], cur[i + 1] = nw, ne
    ident = dict(zip(cur, start))
    ident = {k: v for k, v in ident.items()}

    def find(a):
        while a in ident and ident[a] != a:
            a = ident[a]
        return a

    xs = [tuple(find(a) for a in x) for x in raw]
    used = sorted({a for x in xs for a in x})
    compact = {a: i + 1 for i, a in enumerate(used)}
    if not xs:
        return Diagram((), name=name, free_loops=strands)
    return relabel(Diagram(tuple(tuple(compact[a] for a in x) for x in xs), name=name))


def faces(d: Diagram) -> list[list[Slot]]:
    """Faces of the planar 4-valent map, each as the cyclic list of slots
    at which the boundary walk leaves a crossing (face on the left)."""
    seen: set[Slot] = set()
    out = []
    for c in range(len(d.crossings)):
        for p in range(4):
            if (c, p) in seen:
                continue
            face = []
            cur = (c, p)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                label = d.crossings[cur[0]][cur[1]]
                c2, p2 = _other_slot(d.slots, label, cur)
                cur = (c2, (p2 - 1) % 4)
            out.append(face)
    return out
