import random

import pytest

from statecycle.diagram import braid_closure, mirror
from statecycle.errors import NotACycle, TooLarge
from statecycle.homology import (
    CubeComplex,
    LocalComplex,
    build_complex,
    chain_of,
    generator_count,
    is_boundary,
    is_boundary_chain,
    is_cycle,
    khovanov_homology,
    local_bucket_size,
    local_homology_rank,
)
from statecycle.jones import jones_bracket
from statecycle.resolution import EnhancedState, resolve
from statecycle.tables import builtin

from conftest import corpus, random_braid

NEG_TREFOIL = {(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1}
FIGURE8 = {(-2, -5): 1, (-1, -1): 1, (0, -1): 1, (0, 1): 1, (1, 1): 1, (2, 5): 1}


def test_unknot():
    assert khovanov_homology(builtin("unknot0")).ranks == {(0, 1): 1, (0, -1): 1}
    assert khovanov_homology(builtin("kink")).ranks == {(0, 1): 1, (0, -1): 1}


@pytest.mark.parametrize("name", ["trefoil_negative", "trefoil_pd"])
def test_negative_trefoil(name):
    table = khovanov_homology(builtin(name))
    assert table.ranks == NEG_TREFOIL
    assert table.delta_values == [1, 3] and table.width == 2


def test_positive_trefoil_is_mirror():
    ranks = khovanov_homology(mirror(builtin("trefoil_negative"))).ranks
    assert ranks == {(-t, -q): r for (t, q), r in NEG_TREFOIL.items()}


def test_figure8():
    assert khovanov_homology(builtin("figure8")).ranks == FIGURE8


@pytest.mark.parametrize("d", corpus(9), ids=lambda d: d.name)
def test_euler_characteristic_is_jones(d):
    assert khovanov_homology(d).euler_characteristic() == jones_bracket(d)


@pytest.mark.parametrize("d", corpus(8), ids=lambda d: d.name)
def test_d_squared_zero(d):
    assert CubeComplex(d).check_d_squared()


@pytest.mark.parametrize("d", corpus(9), ids=lambda d: d.name)
def test_modp_agrees_with_exact(d):
    assert khovanov_homology(d, method="modp").ranks == khovanov_homology(d).ranks


def test_alternating_knots_are_thin():
    for name in ("trefoil_negative", "figure8", "6_3"):
        assert khovanov_homology(builtin(name)).width == 2


def test_10_152_is_wide():
    assert khovanov_homology(builtin("10_152_negative")).width >= 3


def test_generator_count():
    d = builtin("trefoil_negative")
    assert generator_count(d) == len(CubeComplex(d)) == 2**3 + 3 * 2**2 + 3 * 2**1 + 2**2


def test_too_large():
    with pytest.raises(TooLarge):
        build_complex(builtin("10_152_negative"), max_crossings=9)
    with pytest.raises(TooLarge):
        build_complex(builtin("K1"))


def test_invariance_under_moves():
    # conjugation and a positive Markov stabilization preserve the link
    pairs = [([1, -2, 1, -2], [-2, 1, -2, 1]), ([1, 1, 1], [1, 1, 1, 2]), ([-1, -1, -1], [-1, -1, -1, -2])]
    for a, b in pairs:
        assert khovanov_homology(braid_closure(a)).ranks == khovanov_homology(braid_closure(b)).ranks


def test_local_matches_full():
    d = builtin("10_152_negative")
    full = khovanov_homology(d).ranks
    for t in range(-10, 1, 3):
        for q in range(-29, -4, 4):
            assert local_homology_rank(d, t, q) == full.get((t, q), 0)


def test_local_buckets():
    d = builtin("figure8")
    c = CubeComplex(d)
    for key, gens in c.buckets.items():
        assert local_bucket_size(d, *key) == len(gens)
    lc = LocalComplex(d, [(0, 1)])
    with pytest.raises(KeyError):
        lc.rank(5, 5)


def test_boundaries_and_cycles():
    d = builtin("trefoil_negative")
    c = CubeComplex(d)
    # the all-0 state with every loop v- spans H^{-3,-9}
    a = EnhancedState(resolve(d, "000"), (1, 1, 1))
    assert is_cycle(a, c) and not is_boundary(a, c)
    b = EnhancedState(resolve(d, "000"), (0, 0, 0))
    assert not is_cycle(b, c)
    with pytest.raises(NotACycle):
        is_boundary(b, c)
    assert is_boundary_chain({}, c)


def test_image_of_differential_is_boundary():
    rng = random.Random(11)
    for _ in range(10):
        d = random_braid(rng, 7)
        c = CubeComplex(d)
        g = rng.choice(list(c.index))
        image = c.differential_of(g)
        if image:
            assert is_boundary_chain(image, c)


def test_chain_of_combines_terms():
    d = builtin("trefoil_negative")
    c = CubeComplex(d)
    a = EnhancedState(resolve(d, "000"), (1, 1, 1))
    assert chain_of(c, [(a, 2), (a, -2)]) == {}
