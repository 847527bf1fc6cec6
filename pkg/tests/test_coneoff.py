import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sctree.automorphism import standard_maps
from sctree.bassserre import Axis, act, distance, geodesic
from sctree.coneoff import (
    ConeOffConfig,
    apex_forcing_instances,
    apex_key,
    base_windmill,
    classify_edges,
    coneoff_distance,
    coneoff_oracle,
    path_shape_ok,
    random_neighbor,
    random_tw_path,
    sample_pairs,
    tw_distance_check,
    WindmillSpec,
    windmill_check,
    wider_oracle,
)
from sctree.galois import get_field
from sctree.smallcancel import choose_exponent

from strategies import vertices, words

F3 = get_field(3)
BT = standard_maps(F3)["bt"].to_word()
CFG = ConeOffConfig(choose_exponent(BT, "coneoff", 6, 6))  # n = 22
SHORT = ConeOffConfig(choose_exponent(BT, "coneoff", 0, 1))  # n = 4, relators of length 8

seeds = st.integers(0, 2**32)


def test_config_validation():
    with pytest.raises(ValueError):
        ConeOffConfig(CFG.params, Fraction(1, 2))
    with pytest.raises(ValueError):
        ConeOffConfig(CFG.params, Fraction(0))


@settings(max_examples=25)
@given(seeds, st.sampled_from([CFG, SHORT]))
def test_formula_matches_oracle(seed, cfg):
    for x, y in sample_pairs(cfg, 4, random.Random(seed), max_dist=60):
        local = classify_edges(x, y, cfg)
        d = coneoff_distance(x, y, cfg, local)
        oracle, path = coneoff_oracle(x, y, cfg, local)
        assert d.value == oracle == d.insulators + 2 * cfg.r0 * d.hops
        assert path_shape_ok(local, path)


def test_no_insulators_in_practice():
    for x, y in sample_pairs(SHORT, 10, random.Random(5)):
        assert not any(classify_edges(x, y, SHORT).insulator)


@given(vertices(F3))
def test_zero_distance(v):
    assert coneoff_distance(v, v, SHORT).value == 0


def test_axis_pair_at_two_relators():
    ax = Axis(BT)
    x, y = ax.vertex_at(0), ax.vertex_at(2 * CFG.params.ell)
    assert coneoff_distance(x, y, CFG).value == 2 * CFG.r0
    assert coneoff_distance(x, ax.vertex_at(3), CFG).value == 2 * CFG.r0


@settings(max_examples=15)
@given(vertices(F3, 5), vertices(F3, 5), vertices(F3, 5))
def test_triangle_inequality(a, b, c):
    d = lambda u, v: coneoff_distance(u, v, SHORT).value
    assert d(a, c) <= d(a, b) + d(b, c)


@settings(max_examples=15)
@given(words(F3, 4), vertices(F3, 6), vertices(F3, 6))
def test_equivariance(phi, x, y):
    assert coneoff_distance(act(phi, x), act(phi, y), SHORT) == coneoff_distance(x, y, SHORT)


@settings(max_examples=15)
@given(seeds)
def test_leaving_the_segment_never_helps(seed):
    rng = random.Random(seed)
    x, y = sample_pairs(SHORT, 1, rng, max_dist=14)[0]
    extra = []
    for v in rng.sample(geodesic(x, y), min(3, distance(x, y) + 1)):
        for _ in range(2):
            v = random_neighbor(v, rng, F3)
            extra.append(v)
    assert wider_oracle(x, y, SHORT, extra) == coneoff_distance(x, y, SHORT).value


def test_apex_forcing_on_long_overlaps():
    ax = Axis(BT)
    x, y = ax.vertex_at(-5), ax.vertex_at(CFG.params.ell + 5)
    found = apex_forcing_instances(x, y, CFG)
    assert found and all(r.applicable and r.holds for r in found)


def test_apex_key_is_inverse_invariant():
    assert apex_key(BT) == apex_key(BT.inverse())


def test_base_windmill_passes():
    W = base_windmill(CFG, 6)
    rep = windmill_check(W, 2, CFG)
    assert rep.passed, rep.checks


def test_windmill_negatives():
    # the truncated trace must be longer than 2Δ for a missing apex to show
    W = base_windmill(CFG, 8)
    verts = sorted(W.vertices, key=lambda v: distance(v, W.center))
    holed = WindmillSpec(W.vertices - {verts[0]}, W.apexes, W.center, W.radius)
    assert not windmill_check(holed, 2, CFG).passed
    bare = WindmillSpec(W.vertices, frozenset(), W.center, W.radius)
    assert not windmill_check(bare, 2, CFG).passed


def test_tw_path_of_length_zero_and_one():
    assert tw_distance_check([], CFG).ok
    rep = tw_distance_check(random_tw_path(CFG, 1, random.Random(1)), CFG)
    assert rep.ok
    assert rep.distances[0] >= CFG.params.ell - 2 * CFG.params.delta


@settings(max_examples=10)
@given(seeds, st.integers(1, 3))
def test_tw_distance_grows(seed, k):
    rep = tw_distance_check(random_tw_path(CFG, k, random.Random(seed)), CFG)
    assert rep.ok, (rep.distances, rep.bounds)


def test_tw_rejects_invalid_paths():
    with pytest.raises(ValueError):
        tw_distance_check([(BT, 1)], CFG)  # the base axis itself
    (h, e), = random_tw_path(CFG, 1, random.Random(2))
    with pytest.raises(ValueError):
        tw_distance_check([(h, 0)], CFG)
    with pytest.raises(ValueError):
        tw_distance_check([(h, e), (h, e)], CFG)  # same apex twice
