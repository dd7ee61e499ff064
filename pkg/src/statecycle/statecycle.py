"""State cycles: the cycle test, the classification filter and certificates.

A certificate names one of four sufficient conditions for an enhanced
state to represent a nonzero homology class and carries enough evidence
(colorings, per-component v- counts, adequacy flags) to be re-checked
against a freshly resolved state.  No certificate means "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator

from .diagram import Diagram
from .errors import NotACycle
from .resolution import (
    V_MINUS,
    V_PLUS,
    Bigrading,
    EnhancedState,
    PINCH,
    State,
    all_smoothings,
    bigrading,
    resolve,
    seifert_smoothing,
)
from .stategraph import (
    FULL,
    ONE_BLOCK,
    ONE_TRACING,
    build_graph,
    components,
    diagram_adequacy,
    evenness,
    state_flags,
    subgraph,
)

SCHEMA = "statecycle.certificate/1"

ALL0_ADEQUATE = "ALL0_ADEQUATE"
ALL1_ADEQUATE = "ALL1_ADEQUATE"
EVEN_ALL1 = "EVEN_ALL1"
ONE_EVEN_ONE_ISOLATED = "ONE_EVEN_ONE_ISOLATED"
THEOREMS = (ALL0_ADEQUATE, ALL1_ADEQUATE, EVEN_ALL1, ONE_EVEN_ONE_ISOLATED)

RESTRICTIONS = ("S1", "S2", "L1", "L2", "L3", "L4")


def _minus_loops(a: EnhancedState) -> set[int]:
    return {j for j, m in enumerate(a.marks) if m == V_MINUS}


def is_state_cycle(a: EnhancedState) -> bool:
    """0-merging state with every 0-tracing loop marked v-."""
    st = a.state
    if any(t.bit == 0 and t.kind == PINCH for t in st.traces):
        return False
    return all(a.marks[j] == V_MINUS for j in st.zero_tracing)


@dataclass(frozen=True)
class ClassificationVerdict:
    violations: frozenset[str] = frozenset()

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pass": self.passed, "violations": sorted(self.violations)}


def classify(a: EnhancedState) -> ClassificationVerdict:
    """Evaluate every necessary condition for a nonzero state cycle."""
    st = a.state
    minus = _minus_loops(a)
    block = st.one_block
    bad = set()
    if any(t.bit == 0 and t.kind == PINCH for t in st.traces):
        bad.add("S1")
    if any(t.bit == 1 and t.kind == PINCH and t.loops[0] in block for t in st.traces):
        bad.add("S2")
    if any(j not in minus for j in st.zero_tracing):
        bad.add("L1")
    # a pair of v- loops joined directly by a 1-trace and by no 0-trace
    by_bit: dict[tuple[int, int], set[int]] = {}
    for t in st.traces:
        x, y = t.loops
        if x != y and x in minus and y in minus:
            by_bit.setdefault((x, y), set()).add(t.bit)
    if any(bits == {1} for bits in by_bit.values()):
        bad.add("L2")
    g = build_graph(st, ONE_BLOCK)
    for comp in components(g):
        sub = subgraph(g, comp)
        marked = comp & minus
        if not evenness(sub).even:
            if marked:
                bad.add("L3")
        elif len(marked) > 1:
            bad.add("L4")
    return ClassificationVerdict(frozenset(bad))


def one_even(a: EnhancedState) -> bool:
    """Every circuit of the 1-tracing graph has even length."""
    return evenness(build_graph(a.state, ONE_TRACING)).even


def one_isolated(a: EnhancedState) -> bool:
    """Each component of the 1-tracing graph holds at most one v- loop."""
    minus = _minus_loops(a)
    return all(len(c & minus) <= 1 for c in components(build_graph(a.state, ONE_TRACING)))


@dataclass(frozen=True)
class Certificate:
    theorem: str
    smoothing: str
    marks: str
    bigrading: Bigrading
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def delta(self) -> int:
        return self.bigrading.delta

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "smoothing": self.smoothing,
            "marks": self.marks,
            "t": self.bigrading.t,
            "q": self.bigrading.q,
            "delta": self.delta,
            "evidence": self.evidence,
        }


def _coloring_json(coloring: dict[int, int]) -> dict[str, int]:
    return {str(v): c for v, c in sorted(coloring.items())}


def _component_evidence(a: EnhancedState, g) -> list[dict]:
    minus = _minus_loops(a)
    out = []
    for comp in sorted(components(g), key=min):
        out.append({"loops": sorted(comp), "minus": sorted(comp & minus)})
    return out


def _match(a: EnhancedState, d: Diagram) -> tuple[str, dict] | None:
    st = a.state
    n = len(d.crossings)
    minus = _minus_loops(a)
    k = st.loop_count
    if st.smoothing == (0,) * n and len(minus) == k:
        adequacy = diagram_adequacy(d)
        if adequacy["plus"]:
            return ALL0_ADEQUATE, {"adequate_plus": True}
    if st.smoothing == (1,) * n:
        if not minus and diagram_adequacy(d)["minus"]:
            return ALL1_ADEQUATE, {"adequate_minus": True}
        if len(minus) == 1:
            g = build_graph(st, FULL)
            rep = evenness(g)
            if rep.even and len(components(g)) == 1:
                return EVEN_ALL1, {
                    "coloring": _coloring_json(rep.coloring),
                    "minus_loop": next(iter(minus)),
                    "connected": True,
                }
    g = build_graph(st, ONE_TRACING)
    rep = evenness(g)
    if rep.even and one_isolated(a):
        return ONE_EVEN_ONE_ISOLATED, {
            "coloring": _coloring_json(rep.coloring),
            "components": _component_evidence(a, g),
        }
    return None


def certify(a: EnhancedState, d: Diagram | None = None) -> Certificate | None:
    """Certificate for the first shape that applies, else None (unknown)."""
    d = a.state.diagram if d is None else d
    if not is_state_cycle(a):
        raise NotACycle("enhanced state is not a state cycle")
    found = _match(a, d)
    if found is None:
        return None
    theorem, evidence = found
    return Certificate(theorem, a.state.bitstring(), a.marks_bitstring(), bigrading(a, d), evidence)


def _parse_bits(text: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in text)


def verify_certificate(cert: Certificate | dict, d: Diagram) -> bool:
    """Re-check a certificate against a freshly resolved state of ``d``."""
    if isinstance(cert, dict):
        cert = Certificate(
            cert["theorem"],
            cert["smoothing"],
            cert["marks"],
            Bigrading(cert["t"], cert["q"]),
            cert.get("evidence", {}),
        )
    try:
        st = resolve(d, _parse_bits(cert.smoothing))
        a = EnhancedState(st, _parse_bits(cert.marks))
    except (ValueError, IndexError):
        return False
    if not is_state_cycle(a) or bigrading(a, d) != cert.bigrading:
        return False
    n = len(d.crossings)
    minus = _minus_loops(a)
    ev = cert.evidence
    if cert.theorem == ALL0_ADEQUATE:
        return st.smoothing == (0,) * n and len(minus) == st.loop_count and state_flags(st).adequate
    if cert.theorem == ALL1_ADEQUATE:
        return st.smoothing == (1,) * n and not minus and state_flags(st).adequate
    if cert.theorem in (EVEN_ALL1, ONE_EVEN_ONE_ISOLATED):
        kind = FULL if cert.theorem == EVEN_ALL1 else ONE_TRACING
        g = build_graph(st, kind)
        coloring = {int(v): c for v, c in ev.get("coloring", {}).items()}
        if set(coloring) != set(g.vertices) or any(c not in (1, -1) for c in coloring.values()):
            return False
        if any(coloring[u] == coloring[v] for u, v, _ in g.edges):
            return False
        if cert.theorem == EVEN_ALL1:
            return (
                st.smoothing == (1,) * n
                and minus == {ev.get("minus_loop")}
                and len(components(g)) == 1
            )
        return all(len(c & minus) <= 1 for c in components(g))
    return False


def _smoothing_order(d: Diagram) -> Iterator[tuple[int, ...]]:
    n = len(d.crossings)
    seen = set()
    for s in ((0,) * n, (1,) * n, seifert_smoothing(d)):
        if s not in seen:
            seen.add(s)
            yield s
    for s in all_smoothings(n):
        if s not in seen:
            seen.add(s)
            yield s


def cycle_markings(st: State) -> Iterator[EnhancedState]:
    """Every state cycle on ``st``: 0-tracing loops fixed to v-, others free."""
    if any(t.bit == 0 and t.kind == PINCH for t in st.traces):
        return
    forced = st.zero_tracing
    free = [j for j in range(st.loop_count) if j not in forced]
    for m in range(1 << len(free)):
        marks = [V_MINUS if j in forced else V_PLUS for j in range(st.loop_count)]
        for i, j in enumerate(free):
            if (m >> i) & 1:
                marks[j] = V_MINUS
        yield EnhancedState(st, tuple(marks))


def enumerate_certified(d: Diagram, budget: int = 1 << 12) -> list[tuple[EnhancedState, Certificate]]:
    """Certified state cycles over the first ``budget`` smoothings.

    Order: all-0, all-1, Seifert, then the remaining smoothings
    lexicographically.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    out = []
    seen = set()
    for s in islice(_smoothing_order(d), budget):
        st = resolve(d, s)
        for a in cycle_markings(st):
            key = (st.smoothing, a.marks)
            if key in seen or not classify(a).passed:
                continue
            seen.add(key)
            cert = certify(a, d)
            if cert is not None:
                out.append((a, cert))
    return out


def width_lower_bound(certs: Iterable[Certificate]) -> int:
    return len({c.delta for c in certs})
