import pytest

from statecycle.diagram import mirror
from statecycle.errors import TooLarge
from statecycle.jones import format_poly, jones_bracket, kauffman_bracket, mirror_poly
from statecycle.tables import builtin

from conftest import corpus

# unnormalized Jones polynomials, unknot = q + 1/q
UNKNOT = {-1: 1, 1: 1}
NEG_TREFOIL = {-9: -1, -5: 1, -3: 1, -1: 1}
# t^-2 - t^-1 + 1 - t + t^2 times (q + 1/q) telescopes
FIGURE8 = {-5: 1, 5: 1}


def test_unknot_diagrams():
    assert jones_bracket(builtin("unknot0")) == UNKNOT
    assert jones_bracket(builtin("kink")) == UNKNOT
    assert kauffman_bracket(builtin("unknot0")) == {0: 1}


def test_trefoil():
    assert jones_bracket(builtin("trefoil_negative")) == NEG_TREFOIL
    assert jones_bracket(builtin("trefoil_pd")) == NEG_TREFOIL
    assert jones_bracket(mirror(builtin("trefoil_negative"))) == mirror_poly(NEG_TREFOIL)


def test_figure8_amphichiral():
    assert jones_bracket(builtin("figure8")) == FIGURE8


def test_9_42():
    # V(t) = t^-3 - t^-2 + t^-1 - 1 + t - t^2 + t^3 with t = q^2, times (q + 1/q)
    assert jones_bracket(builtin("9_42")) == {-7: 1, 7: 1}


@pytest.mark.parametrize("d", corpus(10), ids=lambda d: d.name)
def test_mirror_reverses_polynomial(d):
    assert jones_bracket(mirror(d)) == mirror_poly(jones_bracket(d))


@pytest.mark.parametrize("d", corpus(10), ids=lambda d: d.name)
def test_value_at_q_equal_one(d):
    # V(1) = 2^(components) in this normalization
    assert sum(jones_bracket(d).values()) == 2 ** d.component_count


def test_cap():
    with pytest.raises(TooLarge):
        kauffman_bracket(builtin("10_152_negative"), max_crossings=5)


def test_format():
    assert format_poly(NEG_TREFOIL) == "q^-1 + q^-3 + q^-5 - q^-9"
    assert format_poly({}) == "0"
