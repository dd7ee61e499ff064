import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from statecycle.diagram import (
    Diagram,
    braid_closure,
    crossing_signs,
    faces,
    from_json,
    is_alternating,
    mirror,
    parse_pd,
    relabel,
    reverse,
    to_json,
    to_pd,
)
from statecycle.errors import ArcCountMismatch, MalformedToken, OrientationConflict, UnknownName
from statecycle.stategraph import diagram_adequacy
from statecycle.tables import BUILTINS, builtin, builtin_names

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"

braid_words = st.lists(
    st.integers(min_value=-3, max_value=3).filter(lambda v: v != 0), min_size=1, max_size=9
)


def test_parse_trefoil_counts():
    d = parse_pd(TREFOIL)
    assert len(d.crossings) == 3
    assert d.arc_count == 6
    assert d.component_count == 1


def test_parse_kink():
    d = parse_pd("X[1,1,2,2]")
    assert len(d.crossings) == 1
    assert d.arc_count == 2


def test_missing_labels_rejected():
    with pytest.raises(ArcCountMismatch):
        parse_pd("X[1,4,2,5] X[3,6,4,1]")


@pytest.mark.parametrize(
    "text",
    ["X[1,2,3]", "X[1,a,2,2]", "Y[1,1,2,2]", "X[1,1,2,2] junk", "[[1,1,2]]", "{bad json"],
)
def test_malformed_tokens(text):
    with pytest.raises(MalformedToken):
        parse_pd(text)


def test_orientation_conflict():
    # arcs 1 and 2 both enter under at one crossing and leave under at the other
    with pytest.raises(OrientationConflict):
        parse_pd("X[1,3,2,4] X[1,4,2,3]")


def test_pd_wrapper_and_json_forms():
    a = parse_pd(TREFOIL)
    assert parse_pd("PD[" + TREFOIL.replace(" ", ", ") + "]") == a
    assert parse_pd(json.dumps([list(x) for x in a.crossings])) == a
    assert from_json(to_json(a)) == a


def test_negative_braid_trefoil_signs():
    assert crossing_signs(braid_closure([-1, -1, -1])) == (0, 3)
    assert crossing_signs(parse_pd(TREFOIL)) == (0, 3)


def test_mirror_examples():
    t = braid_closure([-1, -1, -1])
    assert crossing_signs(mirror(t)) == (3, 0)
    u = Diagram(())
    assert mirror(u) == u


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_mirror_involution_and_sign_swap(word):
    # components that never pass under are oriented by a label tie rule
    d = braid_closure(word)
    assume(d.component_count == 1)
    m = mirror(d)
    assert mirror(m) == d
    assert (m.n_plus, m.n_minus) == (d.n_minus, d.n_plus)


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_pd_round_trip(word):
    d = braid_closure(word)
    assert parse_pd(to_pd(d)) == d
    assert from_json(to_json(d)) == d


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_structural_invariants(word):
    d = braid_closure(word)
    # every generator up to the braid width must appear for a connected projection
    assume(set(abs(w) for w in word) == set(range(1, max(abs(w) for w in word) + 1)))
    labels = [a for x in d.crossings for a in x]
    assert sorted(set(labels)) == list(range(1, d.arc_count + 1))
    assert all(labels.count(a) == 2 for a in set(labels))
    assert d.n_plus + d.n_minus == len(d.crossings)
    # planar 4-valent map of a connected diagram: V - E + F = 2
    assert len(faces(d)) == len(d.crossings) + 2
    # sign of a braid generator is the sign of its exponent
    if d.component_count == 1:
        assert list(d.signs) == [1 if w > 0 else -1 for w in word]


@given(braid_words)
@settings(max_examples=40, deadline=None)
def test_reverse_keeps_signs(word):
    d = braid_closure(word)
    assume(d.component_count == 1)
    r = reverse(d)
    assert r.signs == d.signs
    assert reverse(r) == d


def test_relabel_is_consecutive_along_components():
    d = relabel(parse_pd(TREFOIL))
    assert d.components == ((1, 2, 3, 4, 5, 6),)


def test_orientation_follows_increasing_labels():
    d = parse_pd(TREFOIL)
    for comp in d.components:
        assert list(comp) == sorted(comp)


def test_builtin_unknown_name():
    with pytest.raises(UnknownName):
        builtin("no_such_knot")


def test_builtin_examples():
    d = builtin("8_21_plus_adequate")
    assert len(d.crossings) == 8 and diagram_adequacy(d)["plus"]
    d = builtin("10_152_negative")
    assert len(d.crossings) == 10 and d.n_plus == 0
    assert diagram_adequacy(d) == {"plus": True, "minus": True}
    assert not is_alternating(d)
    d = builtin("solomon_mirror")
    assert len(d.crossings) == 4 and d.component_count == 2


def test_bundled_k1_signs():
    assert crossing_signs(builtin("K1")) == (7, 16)


@pytest.mark.parametrize("name", builtin_names())
def test_builtin_claims(name):
    d = builtin(name)
    claims = BUILTINS[name].claims
    if "signs" in claims:
        assert (d.n_plus, d.n_minus) == claims["signs"]
    if "components" in claims:
        assert d.component_count == claims["components"]
    if "plus" in claims or "minus" in claims:
        adequacy = diagram_adequacy(d)
        assert adequacy["plus"] == claims.get("plus", adequacy["plus"])
        assert adequacy["minus"] == claims.get("minus", adequacy["minus"])
    if "alternating" in claims:
        assert is_alternating(d) == claims["alternating"]
    assert parse_pd(to_pd(d)) == d


def test_alternating_examples():
    assert is_alternating(builtin("figure8"))
    assert is_alternating(builtin("6_3"))
    assert not is_alternating(builtin("8_21_plus_adequate"))
