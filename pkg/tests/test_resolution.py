import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from statecycle.diagram import braid_closure
from statecycle.errors import LengthMismatch, MalformedToken
from statecycle.resolution import (
    MERGE,
    PINCH,
    V_MINUS,
    V_PLUS,
    EnhancedState,
    bigrading,
    enumerate_enhancements,
    resolve,
    seifert_smoothing,
    smoothing_pairs,
)
from statecycle.tables import builtin

from conftest import corpus, random_braid


def loop_count_oracle(d, bits):
    """Connected components of the arc graph joined by smoothing pairs."""
    g = nx.Graph()
    g.add_nodes_from(range(1, d.arc_count + 1))
    for x, b in zip(d.crossings, bits):
        g.add_edges_from(smoothing_pairs(x, b))
    return nx.number_connected_components(g) if d.crossings else d.free_loops


def test_smoothing_pairs():
    assert smoothing_pairs((1, 2, 3, 4), 0) == ((1, 2), (3, 4))
    assert smoothing_pairs((1, 2, 3, 4), 1) == ((1, 4), (2, 3))


def test_negative_trefoil_states():
    d = builtin("trefoil_negative")
    assert resolve(d, "all0").loop_count == 3
    assert resolve(d, "all1").loop_count == 2
    assert seifert_smoothing(d) == (1, 1, 1)


def test_bigrading_negative_trefoil_corner():
    d = builtin("trefoil_negative")
    st0 = resolve(d, "all0")
    a = EnhancedState(st0, (V_MINUS,) * 3)
    assert bigrading(a).as_tuple() == (-3, -9)
    assert bigrading(a).delta == 3


def test_crossingless_state():
    st0 = resolve(builtin("unknot0"), "")
    assert st0.loop_count == 1 and st0.traces == ()
    assert {bigrading(a).as_tuple() for a in enumerate_enhancements(st0)} == {(0, 1), (0, -1)}


def test_kink_traces():
    d = builtin("kink")
    # X[1,1,2,2]: 0-smoothing joins 1-1 and 2-2, the 1-smoothing joins 1-2 twice
    s0 = resolve(d, "0")
    s1 = resolve(d, "1")
    assert s0.loop_count == 2 and s0.traces[0].kind == MERGE
    assert s1.loop_count == 1 and s1.traces[0].kind == PINCH


def test_bad_smoothings():
    d = builtin("trefoil_negative")
    with pytest.raises(LengthMismatch):
        resolve(d, "01")
    with pytest.raises(MalformedToken):
        resolve(d, "0x1")
    with pytest.raises(LengthMismatch):
        EnhancedState(resolve(d, "000"), (0, 0))


@pytest.mark.parametrize("d", corpus(8), ids=lambda d: d.name)
def test_loops_partition_arcs(d):
    rng = random.Random(len(d.crossings))
    for _ in range(8):
        bits = tuple(rng.randint(0, 1) for _ in d.crossings)
        s = resolve(d, bits)
        arcs = sorted(a for loop in s.loops for a in loop)
        assert arcs == list(range(1, d.arc_count + 1)) or not d.crossings
        assert s.loop_count == loop_count_oracle(d, bits)
        assert [loop[0] for loop in s.loops] == sorted(min(loop) for loop in s.loops)
        for t in s.traces:
            x = d.crossings[t.crossing]
            assert t.loops == tuple(sorted((s.loop_of[x[0]], s.loop_of[x[2]])))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=80, deadline=None)
def test_seifert_state_loops_are_oriented(seed):
    # the oriented resolution has a trace on each crossing joining two loops
    d = random_braid(random.Random(seed), 10)
    s = resolve(d, "seifert")
    assert s.loop_count == loop_count_oracle(d, seifert_smoothing(d))
    assert all(t.kind == MERGE for t in s.traces)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_bigrading_changes(seed):
    rng = random.Random(seed)
    d = random_braid(rng, 9)
    bits = tuple(rng.randint(0, 1) for _ in d.crossings)
    s = resolve(d, bits)
    marks = tuple(rng.randint(0, 1) for _ in range(s.loop_count))
    a = EnhancedState(s, marks)
    g = bigrading(a)
    flip = [j for j in range(s.loop_count) if marks[j] == V_PLUS]
    if flip:
        b = a.with_marks(tuple(V_MINUS if j == flip[0] else m for j, m in enumerate(marks)))
        assert bigrading(b).as_tuple() == (g.t, g.q - 2)
    assert (g.q - s.loop_count - s.height - d.n_plus) % 2 == 0


def test_enumerate_enhancements_order():
    s = resolve(braid_closure([1, 1]), "11")
    marks = [a.marks for a in enumerate_enhancements(s)]
    assert len(marks) == 1 << s.loop_count
    assert marks[0] == (0,) * s.loop_count and marks[1][0] == 1


def test_state_json():
    s = resolve(builtin("trefoil_negative"), "all1")
    data = s.to_json()
    assert data["smoothing"] == "111"
    assert sorted(a for loop in data["loops"] for a in loop) == list(range(1, 7))
