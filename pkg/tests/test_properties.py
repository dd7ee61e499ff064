"""Cross-module invariants on random braid closures."""

import random

from hypothesis import HealthCheck, given, settings, strategies as st

from statecycle.homology import CubeComplex, homology_ranks, is_boundary
from statecycle.jones import jones_bracket
from statecycle.resolution import bigrading, resolve
from statecycle.stategraph import FULL, ONE_TRACING, build_graph, evenness
from statecycle.statecycle import certify, classify, cycle_markings, enumerate_certified, verify_certificate

from conftest import random_braid

seeds = st.integers(0, 2**32 - 1)
slow = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@given(seeds)
@slow
def test_euler_characteristic_is_jones(seed):
    d = random_braid(random.Random(seed), 7)
    assert homology_ranks(CubeComplex(d)).euler_characteristic() == jones_bracket(d)


@given(seeds)
@slow
def test_d_squared(seed):
    assert CubeComplex(random_braid(random.Random(seed), 7)).check_d_squared()


@given(seeds)
@slow
def test_certificates_are_sound(seed):
    d = random_braid(random.Random(seed), 7)
    c = CubeComplex(d)
    for a, cert in enumerate_certified(d):
        assert not c.differential_of(c.generator(a))
        assert not is_boundary(a, c)
        assert verify_certificate(cert.to_json(), d)


@given(seeds)
@slow
def test_classification_is_necessary(seed):
    rng = random.Random(seed)
    d = random_braid(rng, 7)
    c = CubeComplex(d)
    for _ in range(6):
        s = resolve(d, tuple(rng.randint(0, 1) for _ in d.crossings))
        for a in cycle_markings(s):
            if not classify(a).passed:
                assert is_boundary(a, c)


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_certificate_fields_consistent(seed):
    rng = random.Random(seed)
    d = random_braid(rng, 12)
    s = resolve(d, "seifert")
    for a in cycle_markings(s):
        cert = certify(a, d)
        if cert is None:
            continue
        g = bigrading(a, d)
        assert (cert.bigrading, cert.delta) == (g, 2 * g.t - g.q)
        assert cert.smoothing == s.bitstring() and cert.marks == a.marks_bitstring()
        break


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_evenness_reports_self_certify(seed):
    rng = random.Random(seed)
    d = random_braid(rng, 12)
    s = resolve(d, tuple(rng.randint(0, 1) for _ in d.crossings))
    for kind in (FULL, ONE_TRACING):
        g = build_graph(s, kind)
        assert evenness(g).check(g)
