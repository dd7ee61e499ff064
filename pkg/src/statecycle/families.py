"""Entwined knot families built from a base diagram and copies of a block.

A *site* is a signed arc label: ``+a`` names the face to the left of the
oriented arc ``a`` and ``-a`` the face to its right.  Each region of an
entwining pairs a base site with a block site on faces that are merged
when the block is placed beside the base; the two arcs are then twisted
together with positive half twists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, faces, relabel, reverse, shift_labels
from .errors import InvalidRegion, OrientationConflict, OutOfRange, SeparationViolated
from .resolution import EnhancedState, V_MINUS, V_PLUS, resolve

Site = int


@dataclass(frozen=True)
class EntwineSpec:
    base: Diagram
    block: Diagram
    base_sites: tuple[Site, Site]
    block_sites: tuple[Site, Site]
    copies: int = 1
    twists: tuple[int, int] = (2, 3)


@dataclass(frozen=True)
class FamilyKnot:
    diagram: Diagram
    spec: EntwineSpec
    # per copy: (block crossing indices, junction crossing indices)
    block_spans: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    # per copy: an arc of the block lying on the loop joined to the base
    junction_arcs: tuple[int, ...] = field(default=())
    # the block as it sits in each copy, when it differs from spec.block
    block: Diagram | None = None

    @property
    def copies(self) -> int:
        return len(self.block_spans)

    @property
    def junction_loops(self) -> tuple[int, ...]:
        """Per copy, the loop of the fully 1-smoothed state that carries the
        block's junction arc (the block loop joined to the base)."""
        if not self.copies:
            return ()
        st = alpha_k(self, self.copies).state
        return tuple(st.loop_of[a] for a in self.junction_arcs)


def site_face(d: Diagram, site: Site) -> frozenset:
    tail, head = d.arc_ends(abs(site))
    slot = tail if site > 0 else head
    for f in faces(d):
        if slot in f:
            return frozenset(f)
    raise InvalidRegion(f"no face for site {site}")  # pragma: no cover


def _check_pair(d: Diagram, sites: tuple[Site, Site], what: str) -> None:
    for s in sites:
        if abs(s) not in d.slots:
            raise InvalidRegion(f"{what} site {s} names no arc")
    if site_face(d, sites[0]) != site_face(d, sites[1]):
        raise InvalidRegion(f"{what} sites {sites} do not lie on a common face")


def _twist(xs: list[list[int]], d: Diagram, left: int, right: int, k: int, next_label: int):
    """Twist arc ``left`` (region on its right) with arc ``right`` (region on
    its left) by ``k`` positive half twists.

    Both strands are read as running upward with the region between them.
    Returns the new crossing indices, the arcs now ending at the old heads
    of (left, right), and the next free label.
    """
    _, lhead = d.arc_ends(left)
    _, rhead = d.arc_ends(right)
    sw, se = left, right
    new = []
    for _ in range(k):
        nw, ne = next_label, next_label + 1
        next_label += 2
        new.append(len(xs))
        xs.append([se, ne, nw, sw])
        sw, se = nw, ne
    xs[lhead[0]][lhead[1]] = sw
    xs[rhead[0]][rhead[1]] = se
    return new, sw, se, next_label


def entwine(spec: EntwineSpec) -> FamilyKnot:
    """Join ``copies`` copies of the block to the base, region by region."""
    base, block = spec.base, spec.block
    if spec.copies < 0:
        raise OutOfRange("copies must be nonnegative")
    if min(spec.twists) < 1:
        raise InvalidRegion("twist counts must be positive")
    _check_pair(base, spec.base_sites, "base")
    _check_pair(block, spec.block_sites, "block")
    # base sites must sit on the same side so the rungs run parallel
    if (spec.base_sites[0] > 0) != (spec.base_sites[1] > 0):
        raise InvalidRegion("base sites have opposite orientation relative to their face")
    if (spec.block_sites[0] > 0) != (spec.block_sites[1] > 0):
        raise InvalidRegion("block sites have opposite orientation relative to their face")
    block_sites = spec.block_sites
    if (block_sites[0] > 0) == (spec.base_sites[0] > 0):
        block = reverse(block)
        block_sites = (-block_sites[0], -block_sites[1])

    xs = [list(x) for x in base.crossings]
    cur = base
    sites = list(spec.base_sites)
    spans = []
    junction_arcs = []
    for _ in range(spec.copies):
        offset = 2 * len(xs)
        first = len(xs)
        xs.extend(list(x) for x in shift_labels(block, offset))
        block_idx = tuple(range(first, len(xs)))
        cur = Diagram(tuple(tuple(x) for x in xs))
        next_label = 2 * len(xs) + 1
        bsites = [s + offset if s > 0 else s - offset for s in block_sites]
        junction_arcs.append(abs(bsites[0]))
        junction = []
        updated = []
        for region in (0, 1):
            a, b = sites[region], bsites[region]
            if a < 0:
                new, lh, rh, next_label = _twist(xs, cur, abs(a), abs(b), spec.twists[region], next_label)
                tail_piece, head_piece = abs(a), lh
            else:
                new, lh, rh, next_label = _twist(xs, cur, abs(b), abs(a), spec.twists[region], next_label)
                tail_piece, head_piece = abs(a), rh
            junction.extend(new)
            cur = Diagram(tuple(tuple(x) for x in xs))
            # the next copy nests inside this one: walk order along the face
            # decides which piece of the base arc it attaches to
            against = a < 0
            keep_tail = against if region == 0 else not against
            piece = tail_piece if keep_tail else head_piece
            updated.append(piece if a > 0 else -piece)
        sites = updated
        spans.append((block_idx, tuple(junction)))
    d = Diagram(tuple(tuple(x) for x in xs))
    name = f"entwine({base.name},{block.name},{spec.copies})"
    if not spec.copies:
        d = base
    else:
        d = d.renamed(name)
    return FamilyKnot(d, spec, tuple(spans), tuple(junction_arcs))


def standard_family(copies: int, base: str = "8_21_plus_adequate", block: str = "10_152_negative") -> FamilyKnot:
    """K_n built from two bundled diagrams and their recorded regions."""
    from .tables import BUILTINS, builtin

    b, k = BUILTINS[base], BUILTINS[block]
    if b.regions is None or k.regions is None:
        raise InvalidRegion(f"{base!r} or {block!r} has no recorded entwining regions")
    spec = EntwineSpec(builtin(base), builtin(block), b.regions, k.regions, copies)
    fk = entwine(spec)
    if copies:
        fk = FamilyKnot(fk.diagram.renamed(f"K{copies}"), spec, fk.block_spans, fk.junction_arcs)
    return fk


def alpha_k(fk: FamilyKnot, k: int) -> EnhancedState:
    """First ``k`` blocks 1-smoothed, everything else 0-smoothed; 0-tracing
    loops marked v-, all other loops v+."""
    if not 0 <= k <= fk.copies:
        raise OutOfRange(f"k={k} outside 0..{fk.copies}")
    n = len(fk.diagram.crossings)
    bits = [0] * n
    for block_idx, _ in fk.block_spans[:k]:
        for i in block_idx:
            bits[i] = 1
    st = resolve(fk.diagram, tuple(bits))
    marks = tuple(V_MINUS if j in st.zero_tracing else V_PLUS for j in range(st.loop_count))
    return EnhancedState(st, marks)


def block_loop_counts(block: Diagram) -> tuple[int, int, int]:
    """``(s0, s1, m)``: loops of the all-0 and all-1 states and crossing count."""
    m = len(block.crossings)
    return resolve(block, (0,) * m).loop_count, resolve(block, (1,) * m).loop_count, m


def predicted_deltas(fk: FamilyKnot) -> list[int]:
    """Diagonal of each alpha_k from the block's loop counts alone.

    Each 1-smoothed block moves the diagonal by ``(m - s1 + 2) - s0``.
    """
    s0, s1, m = block_loop_counts(fk.block or fk.spec.block)
    if s0 + s1 >= m + 2:
        raise SeparationViolated(f"s0 + s1 = {s0 + s1} is not below m + 2 = {m + 2}")
    d = fk.diagram
    n = len(d.crossings)
    st0 = resolve(d, (0,) * n)
    base_delta = 2 * (-d.n_minus) - (-st0.loop_count + d.n_plus - 2 * d.n_minus)
    step = (m - s1 + 2) - s0
    return [base_delta + k * step for k in range(fk.copies + 1)]


def twist_regions(d: Diagram) -> list[tuple[list[int], int]]:
    """Maximal bigon chains as ``(crossings, axis)``.

    ``axis`` is 0 when the chain's bigons sit between positions (1, 2) or
    (3, 0) of a crossing and 1 otherwise; a crossing with no bigon is a
    region of its own with axis 0.
    """
    n = len(d.crossings)
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    axis = [None] * n
    for f in faces(d):
        if len(f) != 2 or f[0][0] == f[1][0]:
            continue
        (c1, q1), (c2, q2) = f
        axis[c1] = 0 if q1 % 2 == 1 else 1
        axis[c2] = 0 if q2 % 2 == 1 else 1
        parent[find(c1)] = find(c2)
    groups: dict[int, list[int]] = {}
    for c in range(n):
        groups.setdefault(find(c), []).append(c)
    out = []
    for members in sorted(groups.values()):
        ax = next((axis[c] for c in members if axis[c] is not None), 0)
        out.append((members, ax))
    return out


def _expanded_size(c: int, minimum: int) -> int:
    if c >= minimum:
        return c
    return minimum if (minimum - c) % 2 == 0 else minimum + 1


def expand_twists(d: Diagram, min_crossings: int = 6) -> Diagram:
    """Lengthen every twist region to at least ``min_crossings`` half twists
    of the same handedness, keeping each region's crossing-count parity.

    Crossings go in as full twists, so strand connectivity and orientation
    away from the region are unchanged.  Existing crossings keep their
    indices; new ones are appended.
    """
    out, _ = _expand(d, min_crossings)
    return out


def _expand(d: Diagram, min_crossings: int, skip: frozenset = frozenset()):
    xs = [list(x) for x in d.crossings]
    origin: dict[int, int] = {}
    next_label = 2 * len(xs) + 1
    for members, r in twist_regions(d):
        if skip & set(members):
            continue
        extra = _expanded_size(len(members), min_crossings) - len(members)
        x = members[0]
        for _ in range(extra // 2):
            cur = Diagram(tuple(tuple(v) for v in xs))
            f1, f2 = xs[x][(r + 1) % 4], xs[x][(r + 2) % 4]
            far1 = _far_slot(cur, f1, (x, (r + 1) % 4))
            far2 = _far_slot(cur, f2, (x, (r + 2) % 4))
            a1, a2, b1, b2 = range(next_label, next_label + 4)
            next_label += 4
            ys = [_placed((f1, a1, a2, f2), r), _placed((a1, b1, b2, a2), r)]
            xs[far1[0]][far1[1]] = b1
            xs[far2[0]][far2[1]] = b2
            for y in _orient_new(xs, ys, cur.signs[x]):
                origin[len(xs)] = x
                xs.append(y)
    if len(xs) == len(d.crossings):
        return d, origin
    name = None if d.name is None else f"{d.name}'"
    return relabel(Diagram(tuple(tuple(v) for v in xs))).renamed(name), origin


def expand_family(fk: FamilyKnot, min_crossings: int = 6) -> FamilyKnot:
    """Expand the twist regions of the base and of every block copy.

    The junction twists are left alone; crossings added inside a block copy
    join that copy's span, so ``alpha_k`` keeps its meaning.
    """
    junction = frozenset(i for _, jx in fk.block_spans for i in jx)
    d, origin = _expand(fk.diagram, min_crossings, junction)
    owner = {i: j for j, (bx, _) in enumerate(fk.block_spans) for i in bx}
    spans = [list(bx) for bx, _ in fk.block_spans]
    for new, src in sorted(origin.items()):
        if src in owner:
            spans[owner[src]].append(new)
    block_spans = tuple((tuple(s), jx) for s, (_, jx) in zip(spans, fk.block_spans))
    name = None if fk.diagram.name is None else f"{fk.diagram.name}'"
    block = expand_twists(fk.block or fk.spec.block, min_crossings)
    return FamilyKnot(d.renamed(name), fk.spec, block_spans, _remap_arcs(fk, d), block)


def _remap_arcs(fk: FamilyKnot, d: Diagram) -> tuple[int, ...]:
    # relabel renumbers arcs; recover each junction arc through a block
    # crossing slot it occupied, whose index is unchanged
    old = fk.diagram
    out = []
    for a in fk.junction_arcs:
        c, p = old.slots[a][0]
        out.append(d.crossings[c][p])
    return tuple(out)


def _placed(frame, r: int) -> list[int]:
    y = [0] * 4
    for i in range(4):
        y[(r + i) % 4] = frame[i]
    return y


def _orient_new(xs, ys, sign: int) -> list[list[int]]:
    """Pick the reading of each new crossing (start at either end of its
    under-strand) that orients the whole diagram consistently."""
    for flips in ((0, 0), (0, 1), (1, 0), (1, 1)):
        cand = [y[2:] + y[:2] if f else y for y, f in zip(ys, flips)]
        try:
            trial = Diagram(tuple(tuple(v) for v in xs + cand))
        except OrientationConflict:
            continue
        if all(s == sign for s in trial.signs[len(xs):]):
            return cand
    raise OrientationConflict("no consistent orientation for the added twist")  # pragma: no cover


def _far_slot(d: Diagram, label: int, here: tuple[int, int]) -> tuple[int, int]:
    s1, s2 = d.slots[label]
    return s2 if s1 == here else s1
