"""Trace graphs of a state, evenness certificates and adequacy flags.

Circuits are read as closed walks without a repeated edge, so a self-edge
(pinchtrace) is an odd circuit and a pair of parallel edges is an even one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import Diagram
from .resolution import PINCH, State, resolve

FULL = "full"
ONE_BLOCK = "one_block"
ONE_TRACING = "one_tracing"

Edge = tuple[int, int, int]  # (loop, loop, crossing)


@dataclass(frozen=True)
class TraceGraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    kind: str = FULL

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for u, v, c in self.edges:
            adj[u].append((v, c))
            if u != v:
                adj[v].append((u, c))
        return adj

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  L{v};" for v in self.vertices]
        lines += [f'  L{u} -- L{v} [label="{c}"];' for u, v, c in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EvennessReport:
    even: bool
    coloring: dict[int, int] | None = None
    witness: tuple[Edge, ...] | None = None

    def check(self, g: TraceGraph) -> bool:
        """Re-verify the certificate against ``g`` from scratch."""
        if self.even:
            if self.witness is not None or self.coloring is None:
                return False
            if set(self.coloring) != set(g.vertices):
                return False
            if any(self.coloring[v] not in (1, -1) for v in g.vertices):
                return False
            return all(self.coloring[u] != self.coloring[v] for u, v, _ in g.edges)
        if self.coloring is not None or not self.witness:
            return False
        return is_odd_circuit(self.witness, g)


def is_odd_circuit(walk: tuple[Edge, ...], g: TraceGraph) -> bool:
    """True if ``walk`` is a closed walk of odd length using distinct edges of ``g``."""
    available = list(g.edges)
    for e in walk:
        if e in available:
            available.remove(e)
        else:
            return False
    if len(walk) % 2 == 0:
        return False
    # orient the walk and check that consecutive edges share endpoints
    first = walk[0]
    for start in {first[0], first[1]}:
        cur = start
        ok = True
        for u, v, _ in walk:
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                ok = False
                break
        if ok and cur == start:
            return True
    return False


def build_graph(st: State, kind: str = FULL) -> TraceGraph:
    if kind == FULL:
        verts = tuple(range(st.loop_count))
        edges = tuple((t.loops[0], t.loops[1], t.crossing) for t in st.traces)
    elif kind == ONE_TRACING:
        verts = tuple(sorted(st.one_tracing))
        edges = tuple((t.loops[0], t.loops[1], t.crossing) for t in st.traces if t.bit == 1)
    elif kind == ONE_BLOCK:
        block = st.one_block
        verts = tuple(sorted(block))
        edges = tuple(
            (t.loops[0], t.loops[1], t.crossing)
            for t in st.traces
            if t.bit == 1 and t.loops[0] in block and t.loops[1] in block
        )
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    return TraceGraph(verts, edges, kind)


def evenness(g: TraceGraph) -> EvennessReport:
    """BFS 2-coloring; on failure return an odd closed walk as witness."""
    for u, v, c in g.edges:
        if u == v:
            return EvennessReport(False, witness=((u, v, c),))
    adj = g.adjacency()
    color: dict[int, int] = {}
    parent: dict[int, tuple[int, Edge] | None] = {}
    depth: dict[int, int] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root], parent[root], depth[root] = 1, None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, c in adj[u]:
                if w not in color:
                    color[w] = -color[u]
                    parent[w] = (u, (min(u, w), max(u, w), c))
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    edge = (min(u, w), max(u, w), c)
                    return EvennessReport(False, witness=_odd_walk(u, w, edge, parent, depth))
    return EvennessReport(True, coloring=color)


def _odd_walk(u, w, edge, parent, depth):
    left, right = [], []
    a, b = u, w
    while depth[a] > depth[b]:
        p, e = parent[a]
        left.append(e)
        a = p
    while depth[b] > depth[a]:
        p, e = parent[b]
        right.append(e)
        b = p
    while a != b:
        p, e = parent[a]
        left.append(e)
        a = p
        p, e = parent[b]
        right.append(e)
        b = p
    # u -> lca, then lca -> w, then the closing edge back to u
    return tuple(left + right[::-1] + [edge])


def components(g: TraceGraph) -> list[frozenset[int]]:
    adj = g.adjacency()
    seen: set[int] = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w, _ in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def subgraph(g: TraceGraph, vertices) -> TraceGraph:
    vs = set(vertices)
    return TraceGraph(
        tuple(v for v in g.vertices if v in vs),
        tuple(e for e in g.edges if e[0] in vs and e[1] in vs),
        g.kind,
    )


@dataclass(frozen=True)
class StateFlags:
    zero_merging: bool
    one_merging: bool
    adequate: bool
    even: bool
    one_even: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def state_flags(st: State) -> StateFlags:
    zero_merging = all(t.kind != PINCH for t in st.traces if t.bit == 0)
    one_merging = all(t.kind != PINCH for t in st.traces if t.bit == 1)
    return StateFlags(
        zero_merging=zero_merging,
        one_merging=one_merging,
        adequate=zero_merging and one_merging,
        even=evenness(build_graph(st, FULL)).even,
        one_even=evenness(build_graph(st, ONE_TRACING)).even,
    )


def diagram_adequacy(d: Diagram) -> dict[str, bool]:
    n = len(d.crossings)
    plus = state_flags(resolve(d, (0,) * n)).adequate
    minus = state_flags(resolve(d, (1,) * n)).adequate
    return {"plus": plus, "minus": minus}
